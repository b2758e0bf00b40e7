#pragma once

// Dg path algebras and the constructions built from a quiver with relations:
// the dg-algebra B(Q,R), the graded quiver with superpotential (Q~, W), and
// Ginzburg dg-algebras.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qpot/errors.hpp"
#include "qpot/path_algebra.hpp"
#include "qpot/quiver.hpp"

namespace qpot {

struct Relation {
    std::string label;
    std::string source;
    std::string target;
    PathElement body; // may be zero
};

// A finite sequence of relations; repetitions and zero entries are allowed.
class RelationSequence {
  public:
    RelationSequence() = default;
    explicit RelationSequence(QuiverPtr q) : quiver_(std::move(q)) {}

    const QuiverPtr& quiver_ptr() const { return quiver_; }
    const std::vector<Relation>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const Relation& operator[](std::size_t i) const { return entries_.at(i); }

    RelationSequence& add(std::string label, std::string source, std::string target, PathElement body) {
        Relation r{std::move(label), std::move(source), std::move(target), std::move(body)};
        check(r);
        entries_.push_back(std::move(r));
        return *this;
    }
    // Endpoints are read off the body, which must be nonzero.
    RelationSequence& add(std::string label, PathElement body) {
        if (body.is_zero()) throw InvalidRelation("relation '" + label + "' is zero; give its endpoints explicitly");
        const auto& p = body.terms().begin()->first;
        const auto& q = body.quiver();
        return add(std::move(label), q.vertex_id(path_source(q, p)), q.vertex_id(path_target(q, p)), std::move(body));
    }

    // Every nonzero body lies in r^2.
    bool in_r2() const {
        for (const auto& r : entries_) {
            if (!r.body.is_zero() && r.body.min_length() < 2) return false;
        }
        return true;
    }

    std::size_t max_length() const {
        std::size_t m = 0;
        for (const auto& r : entries_) m = std::max(m, r.body.is_zero() ? std::size_t{0} : r.body.max_length());
        return m;
    }

    RelationSequence without(std::size_t index) const {
        RelationSequence out(quiver_);
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (i != index) out.entries_.push_back(entries_[i]);
        }
        return out;
    }

  private:
    void check(const Relation& r) const {
        if (!quiver_) throw InvalidRelation("relation sequence has no quiver");
        const auto& q = *quiver_;
        const auto s = q.find_vertex(r.source);
        const auto t = q.find_vertex(r.target);
        if (!s) throw InvalidRelation("relation '" + r.label + "' starts at unknown vertex '" + r.source + "'");
        if (!t) throw InvalidRelation("relation '" + r.label + "' ends at unknown vertex '" + r.target + "'");
        if (r.body.is_zero()) return;
        detail::require_same(r.body, PathElement(quiver_));
        for (const auto& [p, c] : r.body.terms()) {
            if (p.trivial()) throw InvalidRelation("relation '" + r.label + "' has a term of length zero");
            if (path_source(q, p) != *s || path_target(q, p) != *t) {
                throw InvalidRelation("relation '" + r.label + "' has term '" + path_to_string(q, p) + "' with the wrong endpoints");
            }
        }
    }

    QuiverPtr quiver_;
    std::vector<Relation> entries_;
};

// What a generator of a constructed dg-algebra corresponds to.
enum class GeneratorKind {
    arrow,    // arrow of the input quiver
    relation, // eta_rho in B(Q,R), eps_rho in Q~
    dual,     // a* in a Ginzburg dg-algebra
    loop,     // t_i in a Ginzburg dg-algebra
    other,
};

struct GeneratorRole {
    GeneratorKind kind = GeneratorKind::other;
    // arrow index of the partner (dual), relation index (relation) or vertex (loop)
    std::size_t origin = 0;
    // for a dual: whether its partner is itself a relation arrow
    bool dual_of_relation = false;
};

// A dg path algebra: a graded quiver with a differential on the generators,
// extended as a derivation of degree +1.
class DgAlgebra {
  public:
    DgAlgebra() = default;
    DgAlgebra(QuiverPtr q, std::vector<PathElement> differential, std::vector<GeneratorRole> roles = {})
        : quiver_(std::move(q)), d_(std::move(differential)), roles_(std::move(roles)) {
        quiver_->require_valid();
        if (d_.size() != quiver_->arrow_count()) throw DimensionMismatch("one differential per arrow required");
        if (roles_.empty()) roles_.assign(d_.size(), {});
        for (std::size_t a = 0; a < d_.size(); ++a) {
            if (d_[a].quiver_ptr() != quiver_) {
                if (!d_[a].is_zero()) detail::require_same(d_[a], PathElement(quiver_));
                if (d_[a].is_zero()) d_[a] = PathElement(quiver_);
            }
            const auto deg = homogeneous_degree(d_[a]);
            if (!deg.matches(quiver_->degree(a) + 1)) {
                throw DegreeMismatch("d(" + quiver_->arrow_id(a) + ") must be homogeneous of degree " + std::to_string(quiver_->degree(a) + 1));
            }
            for (const auto& [p, c] : d_[a].terms()) {
                if (path_source(*quiver_, p) != quiver_->source(a) || path_target(*quiver_, p) != quiver_->target(a)) {
                    throw InvalidRelation("d(" + quiver_->arrow_id(a) + ") has a term with the wrong endpoints");
                }
            }
        }
    }

    const QuiverPtr& quiver_ptr() const { return quiver_; }
    const GradedQuiver& quiver() const { return *quiver_; }
    const PathElement& d(std::size_t a) const { return d_.at(a); }
    const PathElement& d(std::string_view id) const { return d_.at(quiver_->arrow(id)); }
    const std::vector<PathElement>& differentials() const { return d_; }
    const GeneratorRole& role(std::size_t a) const { return roles_.at(a); }
    const std::vector<GeneratorRole>& roles() const { return roles_; }

    // True when every generator differential lies in the arrow ideal, i.e.
    // d never shortens paths.
    bool length_nondecreasing() const {
        for (const auto& x : d_) {
            if (!x.is_zero() && x.min_length() == 0) return false;
        }
        return true;
    }

  private:
    QuiverPtr quiver_;
    std::vector<PathElement> d_;
    std::vector<GeneratorRole> roles_;
};

// Result of a structural check: ok, or the first failure found.
struct CheckResult {
    std::optional<std::string> failure;
    std::optional<PathElement> witness;

    bool ok() const { return !failure; }
    explicit operator bool() const { return ok(); }

    static CheckResult pass() { return {}; }
    static CheckResult fail(std::string why, std::optional<PathElement> witness = std::nullopt) {
        return {std::move(why), std::move(witness)};
    }
};

// --- differential ---------------------------------------------------------

// d(a1...an) = sum_l (-1)^{|a1|+...+|a_{l-1}|} a1...d(a_l)...an
inline void apply_d_to_path(const DgAlgebra& dg, const Path& p, const Rational& c, PathElement& out) {
    const auto& q = dg.quiver();
    int prefix_degree = 0;
    for (std::size_t l = 0; l < p.arrows.size(); ++l) {
        const auto& da = dg.d(p.arrows[l]);
        if (!da.is_zero()) {
            const Rational coeff = c * Rational(parity_sign(prefix_degree));
            for (const auto& [term, tc] : da.terms()) {
                Path r;
                r.base = p.base;
                r.arrows.reserve(p.arrows.size() + term.arrows.size());
                r.arrows.insert(r.arrows.end(), p.arrows.begin(), p.arrows.begin() + static_cast<long>(l));
                r.arrows.insert(r.arrows.end(), term.arrows.begin(), term.arrows.end());
                r.arrows.insert(r.arrows.end(), p.arrows.begin() + static_cast<long>(l) + 1, p.arrows.end());
                out.add_term(r, coeff * tc);
            }
        }
        prefix_degree += q.degree(p.arrows[l]);
    }
}

inline PathElement apply_d(const DgAlgebra& dg, const PathElement& x) {
    detail::require_same(x, PathElement(dg.quiver_ptr()));
    degree_of(x, "apply_d");
    PathElement out(dg.quiver_ptr());
    for (const auto& [p, c] : x.terms()) apply_d_to_path(dg, p, c, out);
    return out;
}

// d(d(a)) = 0 on every generator, then on random paths up to max_len.
inline CheckResult check_d_squared(const DgAlgebra& dg, std::size_t max_len, std::size_t samples = 200, std::uint64_t seed = 1) {
    const auto& q = dg.quiver();
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto dd = apply_d(dg, dg.d(a));
        if (!dd.is_zero()) {
            return CheckResult::fail("d(d(" + q.arrow_id(a) + ")) = " + dd.to_string(), PathElement::arrow(dg.quiver_ptr(), q.arrow_id(a)));
        }
    }
    if (q.arrow_count() == 0 || max_len == 0) return CheckResult::pass();
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        const auto len = 1 + rng() % max_len;
        Path p = Path::trivial_at(rng() % q.vertex_count());
        for (std::size_t k = 0; k < len; ++k) {
            const auto out = q.out_arrows(path_target(q, p));
            if (out.empty()) break;
            p.arrows.push_back(static_cast<std::uint32_t>(out[rng() % out.size()]));
        }
        if (p.trivial()) continue;
        const auto x = PathElement::of(dg.quiver_ptr(), p);
        const auto dd = apply_d(dg, apply_d(dg, x));
        if (!dd.is_zero()) return CheckResult::fail("d(d(" + x.to_string() + ")) = " + dd.to_string(), x);
    }
    return CheckResult::pass();
}

// --- constructions --------------------------------------------------------

namespace detail {

inline std::string relation_suffix(const Relation& r, std::size_t index) {
    return r.label.empty() ? std::to_string(index + 1) : r.label;
}

inline void require_ungraded(const GradedQuiver& q, const char* what) {
    q.require_valid();
    if (!q.all_degrees_zero()) throw DegreeMismatch(std::string(what) + " needs a quiver with all arrows in degree 0");
}

inline void require_fresh(const GradedQuiver& q, const std::string& id) {
    if (q.find_arrow(id)) throw InvalidQuiver("generated arrow id '" + id + "' collides with an existing arrow");
}

} // namespace detail

inline DgAlgebra build_B(const GradedQuiver& q, const RelationSequence& R, std::string_view prefix = "eta_") {
    detail::require_ungraded(q, "build_B");
    GradedQuiver out = q;
    for (std::size_t k = 0; k < R.size(); ++k) {
        const auto& r = R[k];
        const auto id = std::string(prefix) + detail::relation_suffix(r, k);
        detail::require_fresh(out, id);
        out.add_arrow(id, r.source, r.target, -1);
    }
    auto qp = share(std::move(out));
    std::vector<PathElement> d(qp->arrow_count(), PathElement(qp));
    std::vector<GeneratorRole> roles(qp->arrow_count());
    for (std::size_t a = 0; a < q.arrow_count(); ++a) roles[a] = {GeneratorKind::arrow, a, false};
    for (std::size_t k = 0; k < R.size(); ++k) {
        const auto a = q.arrow_count() + k;
        d[a] = transport(R[k].body, qp);
        roles[a] = {GeneratorKind::relation, k, false};
    }
    return DgAlgebra(qp, std::move(d), std::move(roles));
}

// The graded quiver Q~ with superpotential W = sum eps_rho rho of degree 2-m.
struct QuiverWithPotential {
    QuiverPtr quiver;
    Superpotential potential;
    std::size_t original_arrows = 0; // eps_k is arrow original_arrows + k
};

inline QuiverWithPotential build_QW(const GradedQuiver& q, const RelationSequence& R, int m, std::string_view prefix = "eps_") {
    detail::require_ungraded(q, "build_QW");
    if (m < 2) throw DegreeMismatch("build_QW needs m >= 2");
    GradedQuiver out = q;
    for (std::size_t k = 0; k < R.size(); ++k) {
        const auto& r = R[k];
        const auto id = std::string(prefix) + detail::relation_suffix(r, k);
        detail::require_fresh(out, id);
        out.add_arrow(id, r.target, r.source, 2 - m);
    }
    auto qp = share(std::move(out));
    PathElement sum(qp);
    for (std::size_t k = 0; k < R.size(); ++k) {
        const auto eps = Path::of_arrow(*qp, q.arrow_count() + k);
        sum = sum + multiply(PathElement::of(qp, eps), transport(R[k].body, qp));
    }
    Superpotential w = cyclic_reduce(sum);
    return {qp, std::move(w), q.arrow_count()};
}

enum class LoopSign {
    standard, // d(t_i) = e_i (sum [a, a*]) e_i
    twisted,  // (-1)^{m-1} times the standard one
};

inline std::string dual_id(const std::string& id) { return id + "^"; }
inline std::string loop_id(const std::string& vertex) { return "t_" + vertex; }

// Ginzburg dg-algebra on the doubled quiver: arrows of q, a dual a* of degree
// 1-m-|a| for each arrow, a loop t_i of degree -m per vertex.
inline DgAlgebra build_ginzburg(const GradedQuiver& q, const Superpotential& w, int m, LoopSign loop_sign = LoopSign::standard,
                                const std::vector<GeneratorRole>& input_roles = {}) {
    q.require_valid();
    if (w.degree() && *w.degree() != 2 - m) {
        throw DegreeMismatch("superpotential has degree " + std::to_string(*w.degree()) + ", expected " + std::to_string(2 - m));
    }
    if (!w.is_zero() && !(w.quiver() == q)) throw QuiverMismatch();
    const std::size_t n = q.arrow_count();
    GradedQuiver out = q;
    for (std::size_t a = 0; a < n; ++a) {
        const auto& arr = q.arrows()[a];
        detail::require_fresh(out, dual_id(arr.id));
        out.add_arrow(dual_id(arr.id), arr.target, arr.source, 1 - m - arr.degree);
    }
    for (const auto& v : q.vertices()) {
        detail::require_fresh(out, loop_id(v));
        out.add_arrow(loop_id(v), v, v, -m);
    }
    auto qp = share(std::move(out));
    const Superpotential wb = transport(w, qp);

    std::vector<PathElement> d(qp->arrow_count(), PathElement(qp));
    std::vector<GeneratorRole> roles(qp->arrow_count());
    for (std::size_t a = 0; a < n; ++a) {
        roles[a] = a < input_roles.size() ? input_roles[a] : GeneratorRole{GeneratorKind::arrow, a, false};
        d[n + a] = cyclic_derivative(wb, a);
        roles[n + a] = {GeneratorKind::dual, a, roles[a].kind == GeneratorKind::relation};
    }
    const int t_sign = loop_sign == LoopSign::twisted ? parity_sign(m - 1) : 1;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
        PathElement mesh(qp);
        for (std::size_t a = 0; a < n; ++a) {
            // e_v [a, a*] e_v: a a* is a cycle at s(a), a* a a cycle at t(a).
            const int sign = parity_sign(static_cast<long long>(qp->degree(a)) * qp->degree(n + a));
            Path aa{static_cast<std::uint32_t>(q.source(a)), {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(n + a)}};
            Path a_a{static_cast<std::uint32_t>(q.target(a)), {static_cast<std::uint32_t>(n + a), static_cast<std::uint32_t>(a)}};
            if (q.source(a) == v) mesh.add_term(aa, 1);
            if (q.target(a) == v) mesh.add_term(a_a, Rational(-sign));
        }
        d[2 * n + v] = scale(mesh, t_sign);
        roles[2 * n + v] = {GeneratorKind::loop, v, false};
    }
    return DgAlgebra(qp, std::move(d), std::move(roles));
}

inline DgAlgebra build_gamma(const GradedQuiver& q, const RelationSequence& R, int m) {
    const auto qw = build_QW(q, R, m);
    std::vector<GeneratorRole> roles(qw.quiver->arrow_count());
    for (std::size_t a = 0; a < qw.original_arrows; ++a) roles[a] = {GeneratorKind::arrow, a, false};
    for (std::size_t k = 0; k < R.size(); ++k) roles[qw.original_arrows + k] = {GeneratorKind::relation, k, false};
    return build_ginzburg(*qw.quiver, qw.potential, m, LoopSign::standard, roles);
}

// Degrees and differentials of every generator of Gamma(Q,R,m):
//   a: 0, d = 0; eps_k: 2-m, d = 0; eps_k*: -1, d = (-1)^m rho_k;
//   a*: 1-m, d = d_a W; t_i: -m.
inline CheckResult audit_gamma_table(const DgAlgebra& gamma, const RelationSequence& R, int m) {
    const auto& q = gamma.quiver();
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto& role = gamma.role(a);
        const int deg = q.degree(a);
        auto bad = [&](const std::string& why) { return CheckResult::fail(q.arrow_id(a) + ": " + why); };
        switch (role.kind) {
        case GeneratorKind::arrow:
            if (deg != 0) return bad("quiver arrow not in degree 0");
            if (!gamma.d(a).is_zero()) return bad("quiver arrow with nonzero differential");
            break;
        case GeneratorKind::relation:
            if (deg != 2 - m) return bad("relation arrow not in degree 2-m");
            if (!gamma.d(a).is_zero()) return bad("relation arrow with nonzero differential");
            break;
        case GeneratorKind::dual:
            if (role.dual_of_relation) {
                if (deg != -1) return bad("dual of a relation arrow not in degree -1");
                const auto k = gamma.role(role.origin).origin;
                const auto expected = scale(transport(R[k].body, gamma.quiver_ptr()), parity_sign(m));
                if (!(gamma.d(a) == expected)) return bad("differential is not (-1)^m rho_k");
            } else if (deg != 1 - m) {
                return bad("dual of a quiver arrow not in degree 1-m");
            }
            break;
        case GeneratorKind::loop:
            if (deg != -m) return bad("loop not in degree -m");
            break;
        case GeneratorKind::other:
            return bad("generator without a recorded role");
        }
    }
    return CheckResult::pass();
}

// --- structural comparisons ----------------------------------------------

// Arrow replacement: an arrow a: i -> j not occurring in W is
// replaced by a*: j -> i of degree 1-m-|a|; W is unchanged.
inline QuiverWithPotential replace_arrow(const GradedQuiver& q, const Superpotential& w, std::string_view arrow, int m) {
    const auto a = q.arrow(arrow);
    if (!w.is_zero() && w.uses_arrow(a)) throw InvalidRelation("arrow '" + std::string(arrow) + "' occurs in the superpotential");
    std::vector<Arrow> arrows;
    for (std::size_t b = 0; b < q.arrow_count(); ++b) {
        const auto& arr = q.arrows()[b];
        if (b == a) {
            arrows.push_back({dual_id(arr.id), arr.target, arr.source, 1 - m - arr.degree});
        } else {
            arrows.push_back(arr);
        }
    }
    auto qp = share(GradedQuiver(q.vertices(), std::move(arrows)));
    qp->require_valid();
    return {qp, w.is_zero() ? Superpotential(qp) : transport(w, qp), q.arrow_count()};
}

// d(a) only involves sub_arrows, for every a in sub_arrows.
inline CheckResult verify_sub_dg(const DgAlgebra& dg, const std::set<std::string>& sub_arrows) {
    const auto& q = dg.quiver();
    std::vector<bool> inside(q.arrow_count(), false);
    for (const auto& id : sub_arrows) inside[q.arrow(id)] = true;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        if (!inside[a]) continue;
        for (const auto& [p, c] : dg.d(a).terms()) {
            for (auto b : p.arrows) {
                if (!inside[b]) {
                    return CheckResult::fail("d(" + q.arrow_id(a) + ") involves " + q.arrow_id(b), PathElement::arrow(dg.quiver_ptr(), q.arrow_id(a)));
                }
            }
        }
    }
    return CheckResult::pass();
}

struct SignedArrow {
    int sign = 1;
    std::string arrow;
};

using ArrowMap = std::map<std::string, SignedArrow>;

// Image of x under the algebra map determined by f on arrows (vertices are
// matched by id).
inline PathElement map_element(const ArrowMap& f, const PathElement& x, const QuiverPtr& to) {
    PathElement out(to);
    const auto& from = x.quiver();
    for (const auto& [p, c] : x.terms()) {
        Path r;
        r.base = static_cast<std::uint32_t>(to->vertex(from.vertex_id(p.base)));
        int sign = 1;
        for (auto a : p.arrows) {
            const auto& img = f.at(from.arrow_id(a));
            sign *= img.sign;
            r.arrows.push_back(static_cast<std::uint32_t>(to->arrow(img.arrow)));
        }
        out.add_term(r, c * Rational(sign));
    }
    return out;
}

// Checks that f (arrow -> +/- arrow) is a degree- and endpoint-preserving
// bijection commuting with the differentials.
inline CheckResult check_dg_isomorphism(const ArrowMap& f, const DgAlgebra& A, const DgAlgebra& B) {
    const auto& qa = A.quiver();
    const auto& qb = B.quiver();
    if (qa.vertices().size() != qb.vertices().size()) throw InvalidMap("vertex sets differ");
    for (const auto& v : qa.vertices()) {
        if (!qb.find_vertex(v)) throw InvalidMap("vertex '" + v + "' missing in target");
    }
    if (f.size() != qa.arrow_count() || qa.arrow_count() != qb.arrow_count()) throw InvalidMap("map is not a bijection on arrows");
    std::set<std::string> hit;
    for (std::size_t a = 0; a < qa.arrow_count(); ++a) {
        const auto& id = qa.arrow_id(a);
        auto it = f.find(id);
        if (it == f.end()) throw InvalidMap("arrow '" + id + "' has no image");
        if (it->second.sign != 1 && it->second.sign != -1) throw InvalidMap("image sign must be +1 or -1");
        const auto b = qb.find_arrow(it->second.arrow);
        if (!b) throw InvalidMap("image '" + it->second.arrow + "' is not an arrow of the target");
        if (!hit.insert(it->second.arrow).second) throw InvalidMap("map is not injective on arrows");
        if (qa.degree(a) != qb.degree(*b)) throw InvalidMap("map does not preserve the degree of '" + id + "'");
        if (qa.vertex_id(qa.source(a)) != qb.vertex_id(qb.source(*b)) || qa.vertex_id(qa.target(a)) != qb.vertex_id(qb.target(*b))) {
            throw InvalidMap("map does not preserve the endpoints of '" + id + "'");
        }
    }
    for (std::size_t a = 0; a < qa.arrow_count(); ++a) {
        const auto& img = f.at(qa.arrow_id(a));
        const auto lhs = map_element(f, A.d(a), B.quiver_ptr());
        const auto rhs = scale(B.d(img.arrow), img.sign);
        if (!(lhs == rhs)) {
            return CheckResult::fail("f(d(" + qa.arrow_id(a) + ")) = " + lhs.to_string() + " but d(f(" + qa.arrow_id(a) + ")) = " + rhs.to_string(),
                                     PathElement::arrow(A.quiver_ptr(), qa.arrow_id(a)));
        }
    }
    return CheckResult::pass();
}

inline ArrowMap identity_map(const GradedQuiver& q) {
    ArrowMap f;
    for (const auto& a : q.arrows()) f[a.id] = {1, a.id};
    return f;
}

// Gamma with the twisted loop sign -> Gamma with the standard one: t_i goes to
// (-1)^{m-1} t_i, everything else is fixed.
inline ArrowMap loop_sign_isomorphism(const GradedQuiver& q, int m) {
    auto qp = share(q);
    ArrowMap f = identity_map(build_ginzburg(q, Superpotential(qp), m).quiver());
    for (const auto& v : q.vertices()) f[loop_id(v)].sign = parity_sign(m - 1);
    return f;
}

// Gamma(Q', W') -> Gamma(Q, W) for (Q', W') = replace_arrow(Q, W, a, m):
// a* (now an arrow of Q') goes to the dual of a, and (a*)* goes to sign * a.
// The loop relation forces sign = -(-1)^{m|a|}.
inline ArrowMap replace_arrow_isomorphism(const GradedQuiver& q, std::string_view arrow, int m) {
    const auto a = q.arrow(arrow);
    ArrowMap f;
    for (const auto& x : q.arrows()) {
        if (x.id == arrow) continue;
        f[x.id] = {1, x.id};
        f[dual_id(x.id)] = {1, dual_id(x.id)};
    }
    const std::string id(arrow);
    f[dual_id(id)] = {1, dual_id(id)};
    f[dual_id(dual_id(id))] = {-parity_sign(static_cast<long long>(m) * q.degree(a)), id};
    for (const auto& v : q.vertices()) f[loop_id(v)] = {1, loop_id(v)};
    return f;
}

// The standard presentation of the Calabi-Yau completion of the sub-dg-algebra
// B = (KQ', d) of Gamma(Q, W), where W = sum over arrows b outside omega of
// b * w_b with w_b a combination of paths in omega, and Q' = omega plus the
// duals b*. The result lives on the double of Q' with the twisted loop sign; d
// restricts to the differential of B on KQ' and is d(x*) = d_x W' on the new
// duals, W' = (-1)^{m-1} sum (b*)* w_b.
struct CompletionPresentation {
    DgAlgebra algebra;
    ArrowMap to_gamma; // isomorphism onto Gamma(Q, W)
};

inline CompletionPresentation completion_presentation(const GradedQuiver& q, const Superpotential& w, const std::set<std::string>& omega, int m) {
    const auto gamma = build_ginzburg(q, w, m);
    auto qp = w.is_zero() ? share(q) : w.quiver_ptr();
    std::vector<bool> in_omega(q.arrow_count(), false);
    for (const auto& id : omega) in_omega[q.arrow(id)] = true;
    for (const auto& [p, c] : w.cyclic_terms()) {
        const auto outside = std::count_if(p.arrows.begin(), p.arrows.end(), [&](auto a) { return !in_omega[a]; });
        if (outside != 1) throw InvalidRelation("superpotential term " + path_to_string(q, p) + " must contain exactly one arrow outside the chosen set");
    }
    GradedQuiver sub;
    for (const auto& v : q.vertices()) sub.add_vertex(v);
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto& arr = q.arrows()[a];
        if (in_omega[a]) {
            sub.add_arrow(arr.id, arr.source, arr.target, arr.degree);
        } else {
            sub.add_arrow(dual_id(arr.id), arr.target, arr.source, 1 - m - arr.degree);
        }
    }
    const auto shell = build_ginzburg(sub, Superpotential(share(sub)), m, LoopSign::twisted);
    const auto& dq = shell.quiver_ptr();
    const std::size_t n = sub.arrow_count();

    PathElement wp(dq);
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        if (in_omega[a]) continue;
        // w_b = (-1)^{|b|} d_b W
        const auto wb = transport(scale(cyclic_derivative(w, a), parity_sign(q.degree(a))), dq);
        const auto bb = PathElement::arrow(dq, dual_id(dual_id(q.arrow_id(a))));
        wp = wp + scale(bb * wb, parity_sign(m - 1));
    }
    const Superpotential w_prime = cyclic_reduce(wp);

    std::vector<PathElement> d = shell.differentials();
    for (std::size_t x = 0; x < n; ++x) {
        d[x] = transport(gamma.d(sub.arrow_id(x)), dq);
        d[n + x] = cyclic_derivative(w_prime, x);
    }
    ArrowMap f;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto& id = q.arrow_id(a);
        if (in_omega[a]) {
            f[id] = {1, id};
            f[dual_id(id)] = {parity_sign(m - 1), dual_id(id)};
        } else {
            f[dual_id(id)] = {1, dual_id(id)};
            f[dual_id(dual_id(id))] = {1, id};
        }
    }
    for (const auto& v : q.vertices()) f[loop_id(v)] = {1, loop_id(v)};
    return {DgAlgebra(dq, std::move(d), shell.roles()), std::move(f)};
}

} // namespace qpot
