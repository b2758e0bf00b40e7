#pragma once

// Homology of dg path algebras, computed on the quotient by paths longer than
// L. That quotient is a complex whenever d never shortens paths, which holds
// for every construction in this library.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qpot/errors.hpp"
#include "qpot/ginzburg.hpp"
#include "qpot/ideals.hpp"
#include "qpot/linalg.hpp"
#include "qpot/presentation.hpp"

namespace qpot {

class TruncatedComplex {
  public:
    // Components for cohomological degrees lowest..highest; d is assembled for
    // every degree whose target is also present.
    TruncatedComplex(DgAlgebra dg, std::size_t max_len, int lowest, int highest) : dg_(std::move(dg)), max_len_(max_len), lowest_(lowest), highest_(highest) {
        if (lowest > highest) throw Error("empty degree range");
        if (!dg_.length_nondecreasing()) {
            throw StructuralError("a generator differential has a term of length zero; the length truncation is not a quotient complex");
        }
        collect_paths();
        for (int i = lowest_; i < highest_; ++i) assemble(i);
    }

    const DgAlgebra& dg() const { return dg_; }
    std::size_t max_len() const { return max_len_; }
    int lowest() const { return lowest_; }
    int highest() const { return highest_; }

    const std::vector<Path>& component(int degree) const { return at(components_, degree, "component"); }
    std::size_t dim(int degree) const { return component(degree).size(); }
    // Matrix of d from degree i to degree i+1, in the row-vector convention:
    // row r is d of the r-th basis path of degree i.
    const SparseMatrix& matrix(int degree) const { return at(matrices_, degree, "matrix"); }

    std::size_t rank_of_d(int degree) const {
        auto it = ranks_.find(degree);
        if (it != ranks_.end()) return it->second;
        const auto r = rank(matrix(degree));
        ranks_.emplace(degree, r);
        return r;
    }

    // dim H^degree; needs degree-1 and degree+1 in range.
    std::size_t homology_dim(int degree) const {
        if (degree <= lowest_ || degree >= highest_) throw Error("homology at degree " + std::to_string(degree) + " needs its neighbours in range");
        return dim(degree) - rank_of_d(degree) - rank_of_d(degree - 1);
    }

  private:
    template <class Map>
    static const typename Map::mapped_type& at(const Map& m, int degree, const char* what) {
        auto it = m.find(degree);
        if (it == m.end()) throw Error(std::string(what) + " for degree " + std::to_string(degree) + " is out of range");
        return it->second;
    }

    void collect_paths() {
        const auto& q = dg_.quiver();
        for (int i = lowest_; i <= highest_; ++i) components_[i];
        // Running degree only decreases on a non-positive quiver, so prune
        // below the lowest requested degree.
        const bool prune = q.all_degrees_nonpositive();
        std::vector<std::uint32_t> stack;
        auto visit = [&](auto&& self, Path& p, int degree) -> void {
            if (degree >= lowest_ && degree <= highest_) components_[degree].push_back(p);
            if (p.arrows.size() == max_len_) return;
            for (auto a : q.out_arrows(path_target(q, p))) {
                const int d = degree + q.degree(a);
                if (prune && d < lowest_) continue;
                p.arrows.push_back(static_cast<std::uint32_t>(a));
                self(self, p, d);
                p.arrows.pop_back();
            }
        };
        for (std::size_t v = 0; v < q.vertex_count(); ++v) {
            Path p = Path::trivial_at(v);
            visit(visit, p, 0);
        }
        for (auto& [degree, paths] : components_) {
            std::sort(paths.begin(), paths.end());
            auto& idx = index_[degree];
            idx.reserve(paths.size());
            for (std::size_t k = 0; k < paths.size(); ++k) idx.emplace(paths[k], static_cast<std::uint32_t>(k));
        }
    }

    void assemble(int degree) {
        const auto& from = components_.at(degree);
        const auto& to_index = index_.at(degree + 1);
        SparseMatrix m(0, components_.at(degree + 1).size());
        for (const auto& p : from) {
            PathElement image(dg_.quiver_ptr());
            apply_d_to_path(dg_, p, Rational(1), image);
            SparseRow row;
            for (const auto& [term, c] : image.terms()) {
                if (term.length() > max_len_) continue;
                row.push_back({to_index.at(term), c});
            }
            m.append_row(std::move(row));
        }
        matrices_.emplace(degree, std::move(m));
    }

    DgAlgebra dg_;
    std::size_t max_len_;
    int lowest_;
    int highest_;
    std::map<int, std::vector<Path>> components_;
    std::map<int, std::unordered_map<Path, std::uint32_t, PathHash>> index_;
    std::map<int, SparseMatrix> matrices_;
    mutable std::map<int, std::size_t> ranks_;
};

inline TruncatedComplex build_truncated(const DgAlgebra& dg, std::size_t max_len, int lowest, int highest) {
    return TruncatedComplex(dg, max_len, lowest, highest);
}

struct HomologyReport {
    int m = 0;
    std::size_t max_len = 0;
    std::map<int, std::size_t> dims; // i -> dim H^{-i}, 0 <= i <= m-1
    bool stabilized = false;         // same dims at max_len + 1
    bool vosnex = false;             // dims vanish for 0 < i < m-1
};

namespace detail {

// dim H^{-i} for 0 <= i < count.
inline std::map<int, std::size_t> negative_homology(const DgAlgebra& dg, int count, std::size_t max_len) {
    const TruncatedComplex c(dg, max_len, -count, 1);
    std::map<int, std::size_t> out;
    for (int i = 0; i < count; ++i) out[i] = c.homology_dim(-i);
    return out;
}

} // namespace detail

inline HomologyReport homology_dims(const DgAlgebra& dg, int m, std::size_t max_len) {
    if (m < 1) throw Error("homology_dims needs m >= 1");
    HomologyReport r;
    r.m = m;
    r.max_len = max_len;
    r.dims = detail::negative_homology(dg, m, max_len);
    r.stabilized = detail::negative_homology(dg, m, max_len + 1) == r.dims;
    r.vosnex = true;
    for (int i = 1; i < m - 1; ++i) {
        if (r.dims[i] != 0) r.vosnex = false;
    }
    return r;
}

// max(m + 2, 2N, longest relation + 2), N the admissibility bound when known.
inline std::size_t default_truncation_length(int m, std::optional<std::size_t> bound, std::size_t longest_relation) {
    std::size_t L = static_cast<std::size_t>(std::max(m, 0)) + 2;
    if (bound) L = std::max(L, 2 * *bound);
    return std::max(L, longest_relation + 2);
}

struct SnexEntry {
    int i = 0;
    std::size_t dim = 0;
    std::string meaning; // the morphism space the dimension stands for
};

struct SnexTable {
    std::vector<SnexEntry> entries;
    HomologyReport report;
    std::optional<std::string> caveat;
};

inline SnexTable snex_table(const DgAlgebra& dg, int m, std::size_t max_len) {
    SnexTable t;
    t.report = homology_dims(dg, m, max_len);
    for (const auto& [i, d] : t.report.dims) {
        t.entries.push_back({i, d, "Hom(T, Sigma^-" + std::to_string(i) + " T)"});
    }
    if (!t.report.stabilized) {
        t.caveat = "dimensions changed between L = " + std::to_string(max_len) + " and L = " + std::to_string(max_len + 1) +
                   "; they may not be the true homology";
    }
    return t;
}

struct VosnexConditions {
    bool acyclic_and_no_relations = false;      // Q acyclic and R empty
    bool B_finite_in_degree_zero = false;       // B(Q,R) concentrated in degree 0, finite-dimensional
    bool vanishing_small_extensions = false;    // dims zero for 0 < i < m-1
    bool vanishing_at_m_minus_2 = false;        // dim at i = m-2 is zero
    HomologyReport report;

    bool all_agree() const {
        return acyclic_and_no_relations == B_finite_in_degree_zero && B_finite_in_degree_zero == vanishing_small_extensions &&
               vanishing_small_extensions == vanishing_at_m_minus_2;
    }
};

inline VosnexConditions vosnex_equivalence_check(const GradedQuiver& q, const RelationSequence& R, int m, std::optional<std::size_t> max_len = std::nullopt) {
    if (m <= 2) throw Error("vosnex_equivalence_check needs m > 2");
    require_in_r2(R);
    const auto bound = find_admissibility_bound(R);
    if (!bound.found()) throw NotAdmissible(std::string("KQ/(R) is not known to be finite-dimensional (") + to_string(bound.status) + ")");
    VosnexConditions out;
    out.acyclic_and_no_relations = R.empty() && is_acyclic(q);
    // B(Q,R) has an arrow in degree -1 per relation; with none it is KQ,
    // finite-dimensional exactly when Q is acyclic.
    out.B_finite_in_degree_zero = R.empty() && is_acyclic(q);
    const auto L = max_len.value_or(default_truncation_length(m, bound.bound, R.max_length()));
    out.report = homology_dims(build_gamma(q, R, m), m, L);
    out.vanishing_small_extensions = out.report.vosnex;
    out.vanishing_at_m_minus_2 = out.report.dims.at(m - 2) == 0;
    return out;
}

} // namespace qpot
