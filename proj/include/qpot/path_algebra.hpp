#pragma once

// Finite linear combinations of paths, their graded arithmetic, the space of
// superpotentials KQ/[KQ,KQ] and signed cyclic derivatives.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qpot/errors.hpp"
#include "qpot/quiver.hpp"
#include "qpot/rational.hpp"

namespace qpot {

inline int parity_sign(long long exponent) { return (exponent % 2 == 0) ? 1 : -1; }

class PathElement {
  public:
    using Terms = std::map<Path, Rational>;

    PathElement() = default;
    explicit PathElement(QuiverPtr q) : quiver_(std::move(q)) {}

    static PathElement zero(QuiverPtr q) { return PathElement(std::move(q)); }
    static PathElement of(QuiverPtr q, const Path& p, Rational c = 1) {
        PathElement x(std::move(q));
        x.add_term(p, c);
        return x;
    }
    static PathElement arrow(QuiverPtr q, std::string_view id) {
        const auto a = q->arrow(id);
        const auto p = Path::of_arrow(*q, a);
        return of(std::move(q), p);
    }
    static PathElement idempotent(QuiverPtr q, std::string_view vertex) {
        const auto v = q->vertex(vertex);
        return of(std::move(q), Path::trivial_at(v));
    }
    static PathElement identity(QuiverPtr q) {
        PathElement x(q);
        for (std::size_t v = 0; v < q->vertex_count(); ++v) x.add_term(Path::trivial_at(v), 1);
        return x;
    }

    const QuiverPtr& quiver_ptr() const { return quiver_; }
    const GradedQuiver& quiver() const { return *quiver_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational coefficient(const Path& p) const {
        auto it = terms_.find(p);
        return it == terms_.end() ? Rational() : it->second;
    }

    void add_term(const Path& p, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(p, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    std::size_t min_length() const {
        std::size_t m = static_cast<std::size_t>(-1);
        for (const auto& [p, c] : terms_) m = std::min(m, p.length());
        return m;
    }
    std::size_t max_length() const {
        std::size_t m = 0;
        for (const auto& [p, c] : terms_) m = std::max(m, p.length());
        return m;
    }

    bool uses_arrow(std::size_t a) const {
        for (const auto& [p, c] : terms_) {
            for (auto x : p.arrows) {
                if (x == a) return true;
            }
        }
        return false;
    }

    std::string to_string() const;

    friend bool operator==(const PathElement& a, const PathElement& b) {
        if (a.terms_ != b.terms_) return false;
        if (a.terms_.empty()) return true;
        return a.quiver_ == b.quiver_ || *a.quiver_ == *b.quiver_;
    }

  private:
    QuiverPtr quiver_;
    Terms terms_;
};

namespace detail {

inline void require_same(const PathElement& a, const PathElement& b) {
    if (a.quiver_ptr() == b.quiver_ptr()) return;
    if (!a.quiver_ptr() || !b.quiver_ptr() || !(a.quiver() == b.quiver())) throw QuiverMismatch();
}

inline const QuiverPtr& common_quiver(const PathElement& a, const PathElement& b) {
    require_same(a, b);
    return a.quiver_ptr() ? a.quiver_ptr() : b.quiver_ptr();
}

} // namespace detail

inline PathElement add(const PathElement& a, const PathElement& b) {
    PathElement out(detail::common_quiver(a, b));
    for (const auto& [p, c] : a.terms()) out.add_term(p, c);
    for (const auto& [p, c] : b.terms()) out.add_term(p, c);
    return out;
}

inline PathElement scale(const PathElement& a, const Rational& s) {
    PathElement out(a.quiver_ptr());
    if (s.is_zero()) return out;
    for (const auto& [p, c] : a.terms()) out.add_term(p, c * s);
    return out;
}

inline PathElement multiply(const PathElement& a, const PathElement& b) {
    const auto& q = detail::common_quiver(a, b);
    PathElement out(q);
    for (const auto& [p, c] : a.terms()) {
        for (const auto& [r, d] : b.terms()) {
            if (auto pr = concat(*q, p, r)) out.add_term(*pr, c * d);
        }
    }
    return out;
}

inline PathElement operator+(const PathElement& a, const PathElement& b) { return add(a, b); }
inline PathElement operator-(const PathElement& a) { return scale(a, -1); }
inline PathElement operator-(const PathElement& a, const PathElement& b) { return add(a, scale(b, -1)); }
inline PathElement operator*(const PathElement& a, const PathElement& b) { return multiply(a, b); }
inline PathElement operator*(const Rational& s, const PathElement& a) { return scale(a, s); }

// Degree of a homogeneous element. The zero element has every degree.
struct ElementDegree {
    enum class Kind { any, homogeneous, mixed };
    Kind kind = Kind::any;
    int value = 0;

    bool is_homogeneous() const { return kind != Kind::mixed; }
    bool matches(int d) const { return kind == Kind::any || (kind == Kind::homogeneous && value == d); }
};

inline ElementDegree homogeneous_degree(const PathElement& x) {
    ElementDegree out;
    for (const auto& [p, c] : x.terms()) {
        const int d = path_degree(x.quiver(), p);
        if (out.kind == ElementDegree::Kind::any) {
            out = {ElementDegree::Kind::homogeneous, d};
        } else if (out.value != d) {
            return {ElementDegree::Kind::mixed, 0};
        }
    }
    return out;
}

// Homogeneous degree with zero counted as degree 0; throws for mixed input.
inline int degree_of(const PathElement& x, const char* what) {
    const auto d = homogeneous_degree(x);
    if (!d.is_homogeneous()) throw NotHomogeneous(std::string(what) + ": element is not homogeneous");
    return d.value;
}

// [x, y] = xy - (-1)^{|x||y|} yx
inline PathElement supercommutator(const PathElement& x, const PathElement& y) {
    detail::require_same(x, y);
    const int dx = degree_of(x, "supercommutator");
    const int dy = degree_of(y, "supercommutator");
    return x * y - scale(y * x, parity_sign(static_cast<long long>(dx) * dy));
}

// --- superpotentials -------------------------------------------------------

// Rotating a cycle p = uv to vu: vu represents (-1)^{|u||v|} times the class of uv.
inline Path rotate(const Path& p, std::size_t k, const GradedQuiver& q) {
    if (p.arrows.empty()) return p;
    Path out;
    out.arrows.reserve(p.arrows.size());
    out.arrows.insert(out.arrows.end(), p.arrows.begin() + static_cast<long>(k), p.arrows.end());
    out.arrows.insert(out.arrows.end(), p.arrows.begin(), p.arrows.begin() + static_cast<long>(k));
    out.base = static_cast<std::uint32_t>(q.source(out.arrows.front()));
    return out;
}

struct CanonicalCycle {
    Path representative;
    int sign = 1; // 0 when the cycle equals minus itself in KQ/[KQ,KQ]
};

// Canonical representative: the lexicographically smallest rotation, taking
// the first one in rotation order when the cycle is periodic.
inline CanonicalCycle canonical_cycle(const GradedQuiver& q, const Path& p) {
    const std::size_t n = p.arrows.size();
    if (n == 0) return {p, 1};
    const int total = path_degree(q, p);
    Path rep = p;
    for (std::size_t k = 1; k < n; ++k) {
        Path candidate = rotate(p, k, q);
        if (candidate.arrows < rep.arrows) rep = std::move(candidate);
    }
    int sign = 0;
    int prefix_degree = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) prefix_degree += q.degree(p.arrows[k - 1]);
        if (rotate(p, k, q).arrows != rep.arrows) continue;
        const int s = parity_sign(static_cast<long long>(prefix_degree) * (total - prefix_degree));
        if (sign == 0) {
            sign = s;
        } else if (sign != s) {
            return {rep, 0};
        }
    }
    return {rep, sign};
}

class Superpotential {
  public:
    Superpotential() = default;
    explicit Superpotential(QuiverPtr q) : quiver_(std::move(q)) {}

    const QuiverPtr& quiver_ptr() const { return quiver_; }
    const GradedQuiver& quiver() const { return *quiver_; }
    const std::map<Path, Rational>& cyclic_terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // nullopt for the zero superpotential, which is homogeneous of every degree.
    std::optional<int> degree() const { return degree_; }

    // Adds c times the class of cycle p.
    void add_cycle(const Path& p, const Rational& c) {
        if (!is_cycle(*quiver_, p)) throw NotACycle("superpotential term '" + path_to_string(*quiver_, p) + "' is not a cycle");
        const int d = path_degree(*quiver_, p);
        if (degree_ && *degree_ != d && !terms_.empty()) throw NotHomogeneous("superpotential terms of different degrees");
        const auto canon = canonical_cycle(*quiver_, p);
        if (canon.sign == 0 || c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(canon.representative, c * Rational(canon.sign));
        if (!inserted) {
            it->second += c * Rational(canon.sign);
            if (it->second.is_zero()) terms_.erase(it);
        }
        degree_ = terms_.empty() ? std::nullopt : std::optional<int>(d);
    }

    PathElement as_element() const {
        PathElement x(quiver_);
        for (const auto& [p, c] : terms_) x.add_term(p, c);
        return x;
    }

    bool uses_arrow(std::size_t a) const { return as_element().uses_arrow(a); }

    friend bool operator==(const Superpotential& a, const Superpotential& b) { return a.terms_ == b.terms_; }

  private:
    QuiverPtr quiver_;
    std::map<Path, Rational> terms_;
    std::optional<int> degree_;
};

inline Superpotential cyclic_reduce(const PathElement& x) {
    degree_of(x, "cyclic_reduce");
    Superpotential w(x.quiver_ptr());
    for (const auto& [p, c] : x.terms()) w.add_cycle(p, c);
    return w;
}

// d/da of a single cycle:
//   (-1)^{|a|} * sum over p = u a v of (-1)^{|u|(|a|+|v|)} vu
inline PathElement cyclic_derivative_of_cycle(const QuiverPtr& qp, const Path& p, std::size_t a) {
    const auto& q = *qp;
    PathElement out(qp);
    const int da = q.degree(a);
    const int total = path_degree(q, p);
    int prefix = 0;
    for (std::size_t l = 0; l < p.arrows.size(); ++l) {
        if (p.arrows[l] == a) {
            const int du = prefix;
            const int dv = total - prefix - da;
            const int sign = parity_sign(da) * parity_sign(static_cast<long long>(du) * (da + dv));
            Path vu;
            vu.arrows.assign(p.arrows.begin() + static_cast<long>(l) + 1, p.arrows.end());
            vu.arrows.insert(vu.arrows.end(), p.arrows.begin(), p.arrows.begin() + static_cast<long>(l));
            vu.base = static_cast<std::uint32_t>(vu.arrows.empty() ? q.target(a) : q.source(vu.arrows.front()));
            out.add_term(vu, Rational(sign));
        }
        prefix += q.degree(p.arrows[l]);
    }
    return out;
}

inline PathElement cyclic_derivative(const Superpotential& w, std::size_t a) {
    PathElement out(w.quiver_ptr());
    for (const auto& [p, c] : w.cyclic_terms()) out = out + scale(cyclic_derivative_of_cycle(w.quiver_ptr(), p, a), c);
    return out;
}

inline PathElement cyclic_derivative(const Superpotential& w, std::string_view arrow_id) {
    return cyclic_derivative(w, w.quiver().arrow(arrow_id));
}

inline std::string PathElement::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [p, c] : terms_) {
        const bool negative = c.sign() < 0;
        const Rational mag = negative ? -c : c;
        if (first) {
            if (negative) s += "-";
        } else {
            s += negative ? " - " : " + ";
        }
        if (!mag.is_one()) s += mag.to_string() + " ";
        s += path_to_string(*quiver_, p);
        first = false;
    }
    return s;
}

// Moves an element onto another quiver that contains the same arrows and
// vertices under the same ids.
inline PathElement transport(const PathElement& x, const QuiverPtr& to) {
    PathElement out(to);
    const auto& from = x.quiver();
    for (const auto& [p, c] : x.terms()) {
        Path r;
        r.base = static_cast<std::uint32_t>(to->vertex(from.vertex_id(p.base)));
        for (auto a : p.arrows) r.arrows.push_back(static_cast<std::uint32_t>(to->arrow(from.arrow_id(a))));
        out.add_term(r, c);
    }
    return out;
}

inline Superpotential transport(const Superpotential& w, const QuiverPtr& to) {
    Superpotential out(to);
    const auto moved = transport(w.as_element(), to);
    for (const auto& [p, c] : moved.terms()) out.add_cycle(p, c);
    return out;
}

} // namespace qpot
