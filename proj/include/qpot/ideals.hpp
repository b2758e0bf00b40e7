#pragma once

// Two-sided ideals of path algebras generated by finitely many relations,
// handled by linear algebra on the span of paths below a length bound.
//
// For a bound B, the truncated span of (R) is spanned by the parts of length
// < B of all products u*rho*v. It equals ((R) + r^B) / r^B, so it decides
// membership exactly once r^N lies in (R) for some N <= B.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qpot/errors.hpp"
#include "qpot/ginzburg.hpp"
#include "qpot/linalg.hpp"
#include "qpot/path_algebra.hpp"
#include "qpot/presentation.hpp"
#include "qpot/quiver.hpp"

namespace qpot {

// All paths of length < bound, sorted, with an index.
class PathBasis {
  public:
    PathBasis() = default;
    PathBasis(const QuiverPtr& q, std::size_t bound) : bound_(bound) {
        if (bound > 0) paths_ = enumerate_paths(*q, bound - 1);
        index_.reserve(paths_.size());
        for (std::size_t i = 0; i < paths_.size(); ++i) index_.emplace(paths_[i], static_cast<std::uint32_t>(i));
        by_source_.resize(q->vertex_count());
        by_target_.resize(q->vertex_count());
        for (std::size_t i = 0; i < paths_.size(); ++i) {
            by_source_[path_source(*q, paths_[i])].push_back(i);
            by_target_[path_target(*q, paths_[i])].push_back(i);
        }
    }

    std::size_t bound() const { return bound_; }
    std::size_t size() const { return paths_.size(); }
    const std::vector<Path>& paths() const { return paths_; }
    const Path& operator[](std::size_t i) const { return paths_[i]; }
    std::optional<std::uint32_t> find(const Path& p) const {
        auto it = index_.find(p);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    // Indices sorted by length, then path order.
    const std::vector<std::size_t>& starting_at(std::size_t v) const { return by_source_[v]; }
    const std::vector<std::size_t>& ending_at(std::size_t v) const { return by_target_[v]; }

    std::size_t count_of_length(std::size_t len) const {
        return static_cast<std::size_t>(std::count_if(paths_.begin(), paths_.end(), [&](const Path& p) { return p.length() == len; }));
    }

  private:
    std::size_t bound_ = 0;
    std::vector<Path> paths_;
    std::unordered_map<Path, std::uint32_t, PathHash> index_;
    std::vector<std::vector<std::size_t>> by_source_;
    std::vector<std::vector<std::size_t>> by_target_;
};

struct IdealSpanOptions {
    // Only products u*rho*v with len(u) + len(v) >= 1, i.e. the span of Ir + rI.
    bool boundary_only = false;
    // Only products lying entirely below the bound, so the span is exactly a
    // subspace of (R) rather than of (R) + r^bound.
    bool whole_products_only = false;
};

class TruncatedIdeal {
  public:
    TruncatedIdeal(const RelationSequence& R, std::size_t bound, IdealSpanOptions options = {})
        : quiver_(R.quiver_ptr()), generators_(R), basis_(R.quiver_ptr(), bound), span_(0, basis_.size()), echelon_(basis_.size()) {
        const auto& q = *quiver_;
        for (const auto& rel : R.entries()) {
            if (rel.body.is_zero()) continue;
            const std::size_t shortest = rel.body.min_length();
            const std::size_t longest = rel.body.max_length();
            const std::size_t reach = options.whole_products_only ? longest : shortest;
            if (reach >= bound) continue;
            const std::size_t room = bound - 1 - reach; // max len(u) + len(v)
            const auto s = q.vertex(rel.source);
            const auto t = q.vertex(rel.target);
            for (auto ui : basis_.ending_at(s)) {
                const Path& u = basis_[ui];
                if (u.length() > room) break;
                for (auto vi : basis_.starting_at(t)) {
                    const Path& v = basis_[vi];
                    if (u.length() + v.length() > room) break;
                    if (options.boundary_only && u.length() + v.length() == 0) continue;
                    SparseRow row;
                    for (const auto& [p, c] : rel.body.terms()) {
                        if (u.length() + p.length() + v.length() >= bound) continue;
                        Path w{u.base, u.arrows};
                        w.arrows.insert(w.arrows.end(), p.arrows.begin(), p.arrows.end());
                        w.arrows.insert(w.arrows.end(), v.arrows.begin(), v.arrows.end());
                        row.push_back({*basis_.find(w), c});
                    }
                    span_.append_row(std::move(row));
                }
            }
        }
        echelon_ = echelon_of(span_);
    }

    const QuiverPtr& quiver_ptr() const { return quiver_; }
    const RelationSequence& generators() const { return generators_; }
    std::size_t bound() const { return basis_.bound(); }
    const PathBasis& basis() const { return basis_; }
    const SparseMatrix& span() const { return span_; }
    const RowEchelon& echelon() const { return echelon_; }
    std::size_t rank() const { return echelon_.rank(); }

    // Coordinates of x over the basis; x must live below the bound.
    SparseRow row_of(const PathElement& x) const {
        SparseRow row;
        const auto& q = *quiver_;
        const auto& from = x.quiver();
        for (const auto& [p, c] : x.terms()) {
            if (p.length() >= bound()) throw Error("element has support of length >= " + std::to_string(bound()) + "; raise the bound");
            Path r = p;
            if (&from != &q) r = transport(PathElement::of(x.quiver_ptr(), p), quiver_).terms().begin()->first;
            row.push_back({*basis_.find(r), c});
        }
        return detail::normalized(std::move(row));
    }

    bool contains(const PathElement& x) const { return echelon_.contains(row_of(x)); }

    bool contains_path(std::size_t basis_index) const {
        return echelon_.contains(SparseRow{{static_cast<std::uint32_t>(basis_index), Rational(1)}});
    }

    // Every path of length `len` (< bound) lies in the span.
    bool contains_all_of_length(std::size_t len) const {
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (basis_[i].length() == len && !contains_path(i)) return false;
        }
        return true;
    }

  private:
    QuiverPtr quiver_;
    RelationSequence generators_;
    PathBasis basis_;
    SparseMatrix span_;
    RowEchelon echelon_;
};

// --- admissibility ---------------------------------------------------------

inline void require_in_r2(const RelationSequence& R) {
    for (const auto& r : R.entries()) {
        if (!r.body.is_zero() && r.body.min_length() < 2) {
            throw InvalidRelation("relation '" + r.label + "' is not contained in the square of the arrow ideal");
        }
    }
}

// r^N in (R) + r^(N+1): necessary for r^N in (R), and sufficient for it
// once some larger power is known to lie in (R).
inline bool passes_truncated_test(const RelationSequence& R, std::size_t N) {
    return TruncatedIdeal(R, N + 1).contains_all_of_length(N);
}

inline bool length_homogeneous(const RelationSequence& R) {
    for (const auto& r : R.entries()) {
        if (!r.body.is_zero() && r.body.min_length() != r.body.max_length()) return false;
    }
    return true;
}

// Default cap on the number of basis paths a certificate may use.
inline constexpr std::size_t kCertificateBudget = 1u << 14;

// Exact certificate that r^K lies in (R) for some K >= from, given that
// r^from passes the truncated test. Length-homogeneous relations generate a
// graded ideal, where the truncated test is already exact. Otherwise looks for
// K <= M with every length-K path in the span of the products u*rho*v that
// fit entirely in length <= M, growing M while the path basis stays within
// the budget and M stays below 2 (from + longest relation).
inline bool certify_power_in_ideal(const RelationSequence& R, std::size_t from, std::size_t budget = kCertificateBudget) {
    if (length_homogeneous(R)) return true;
    const std::size_t max_M = 2 * (from + R.max_length());
    for (std::size_t M = from; M <= max_M; ++M) {
        if (PathBasis(R.quiver_ptr(), M + 1).size() > budget) return false;
        TruncatedIdeal exact(R, M + 1, {.whole_products_only = true});
        for (std::size_t K = from; K <= M; ++K) {
            if (exact.contains_all_of_length(K)) return true;
        }
        // Paths of length > M cannot exist: r^(M+1) = 0.
        if (exact.basis().count_of_length(M) == 0) return true;
    }
    return false;
}

struct AdmissibilityBound {
    enum class Status {
        found,       // r^bound in (R), and r^(bound-1) not in (R)
        exhausted,   // no bound up to max_N passes even the truncated test
        uncertified, // bound passes the truncated test but r^K in (R) could not be certified
        too_large,   // stopped before max_N: the path basis outgrew the search budget
    };
    Status status = Status::exhausted;
    std::size_t bound = 0;

    bool found() const { return status == Status::found; }
};

inline const char* to_string(AdmissibilityBound::Status s) {
    switch (s) {
    case AdmissibilityBound::Status::found: return "found";
    case AdmissibilityBound::Status::exhausted: return "exhausted";
    case AdmissibilityBound::Status::uncertified: return "uncertified";
    case AdmissibilityBound::Status::too_large: return "too_large";
    }
    return "?";
}

// Cap on the path basis the truncated test may build during the search.
inline constexpr std::size_t kSearchBudget = 1u << 15;

// Smallest N >= 2 with r^N in (R) <= r^2, searching N up to max_N.
inline AdmissibilityBound find_admissibility_bound(const RelationSequence& R, std::size_t max_N = 12, std::size_t budget = kCertificateBudget) {
    if (max_N < 2) throw Error("max_N must be at least 2");
    require_in_r2(R);
    for (std::size_t N = 2; N <= max_N; ++N) {
        if (count_paths(*R.quiver_ptr(), N + 1) > std::max(budget, kSearchBudget)) return {AdmissibilityBound::Status::too_large, N};
        if (!passes_truncated_test(R, N)) continue;
        if (certify_power_in_ideal(R, N, budget)) return {AdmissibilityBound::Status::found, N};
        return {AdmissibilityBound::Status::uncertified, N};
    }
    return {AdmissibilityBound::Status::exhausted, 0};
}

// Throws unless r^N lies in (R): N passes the truncated test and some power
// of r is certified to lie in (R).
inline void require_valid_bound(const RelationSequence& R, std::size_t N) {
    require_in_r2(R);
    if (N < 1 || !passes_truncated_test(R, N)) throw NotAdmissible("r^" + std::to_string(N) + " is not contained in the ideal");
    if (!certify_power_in_ideal(R, N)) {
        throw NotAdmissible("could not certify that a power of r lies in the ideal");
    }
}

inline std::size_t algebra_dim(const RelationSequence& R, std::size_t N) {
    require_valid_bound(R, N);
    const TruncatedIdeal I(R, N);
    return quotient_dim(I.basis().size(), I.span());
}

// --- representations -------------------------------------------------------

using Matrix = std::vector<std::vector<Rational>>;

struct Representation {
    std::map<std::string, std::size_t> dims;    // vertex id -> dimension
    std::map<std::string, Matrix> maps;         // arrow a: i -> j -> dims[i] x dims[j]
};

// Evaluates x on the total space, block (i, j) holding the part from vertex i
// to vertex j. Paths compose left to right, so a*b acts as M_a M_b on row
// vectors.
inline Matrix representation_witness(const GradedQuiver& q, const Representation& rep, const PathElement& x) {
    std::vector<std::size_t> offset(q.vertex_count() + 1, 0);
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
        auto it = rep.dims.find(q.vertex_id(v));
        offset[v + 1] = offset[v] + (it == rep.dims.end() ? 0 : it->second);
    }
    const std::size_t total = offset.back();
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto rows = offset[q.source(a) + 1] - offset[q.source(a)];
        const auto cols = offset[q.target(a) + 1] - offset[q.target(a)];
        auto it = rep.maps.find(q.arrow_id(a));
        if (it == rep.maps.end()) {
            if (rows && cols) throw DimensionMismatch("no matrix for arrow '" + q.arrow_id(a) + "'");
            continue;
        }
        if (it->second.size() != rows) throw DimensionMismatch("matrix of '" + q.arrow_id(a) + "' has the wrong number of rows");
        for (const auto& r : it->second) {
            if (r.size() != cols) throw DimensionMismatch("matrix of '" + q.arrow_id(a) + "' has the wrong number of columns");
        }
    }
    Matrix out(total, std::vector<Rational>(total));
    for (const auto& [p, c] : x.terms()) {
        const auto s = path_source(q, p);
        const auto ds = offset[s + 1] - offset[s];
        // Running product, dims[s] x dims[current vertex].
        Matrix acc(ds, std::vector<Rational>(ds));
        for (std::size_t i = 0; i < ds; ++i) acc[i][i] = 1;
        std::size_t at = s;
        for (auto a : p.arrows) {
            const std::size_t next = q.target(a);
            const std::size_t dn = offset[next + 1] - offset[next];
            Matrix prod(ds, std::vector<Rational>(dn));
            auto it = rep.maps.find(q.arrow_id(a));
            const std::size_t dm = offset[at + 1] - offset[at];
            if (it != rep.maps.end()) {
                for (std::size_t i = 0; i < ds; ++i) {
                    for (std::size_t k = 0; k < dm; ++k) {
                        if (acc[i][k].is_zero()) continue;
                        for (std::size_t j = 0; j < dn; ++j) prod[i][j] += acc[i][k] * it->second[k][j];
                    }
                }
            }
            acc = std::move(prod);
            at = next;
        }
        for (std::size_t i = 0; i < ds; ++i) {
            for (std::size_t j = 0; j < acc[i].size(); ++j) out[offset[s] + i][offset[at] + j] += c * acc[i][j];
        }
    }
    return out;
}

inline bool is_zero_matrix(const Matrix& m) {
    return std::all_of(m.begin(), m.end(), [](const auto& r) { return std::all_of(r.begin(), r.end(), [](const Rational& x) { return x.is_zero(); }); });
}

// One-dimensional representation (every vertex K) that kills every relation
// of R but not x, with arrow scalars in {-1, 0, 1}. Searches at most
// max_tries assignments.
inline std::optional<Representation> find_separating_representation(const RelationSequence& R, const PathElement& x,
                                                                     std::size_t max_tries = 200000) {
    const auto& q = *R.quiver_ptr();
    const std::size_t n = q.arrow_count();
    std::vector<int> value(n, -1);
    auto eval = [&](const PathElement& y) {
        Rational total;
        for (const auto& [p, c] : y.terms()) {
            Rational t = c;
            for (auto a : p.arrows) t *= Rational(value[a]);
            total += t;
        }
        return total;
    };
    const PathElement xq = transport(x, R.quiver_ptr());
    for (std::size_t tries = 0; tries < max_tries; ++tries) {
        bool kills = true;
        for (const auto& r : R.entries()) {
            if (!eval(r.body).is_zero()) {
                kills = false;
                break;
            }
        }
        if (kills && !eval(xq).is_zero()) {
            Representation rep;
            for (const auto& v : q.vertices()) rep.dims[v] = 1;
            for (std::size_t a = 0; a < n; ++a) rep.maps[q.arrow_id(a)] = Matrix{{Rational(value[a])}};
            return rep;
        }
        // next assignment in {-1, 0, 1}^n
        std::size_t k = 0;
        while (k < n && value[k] == 1) value[k++] = -1;
        if (k == n) break;
        ++value[k];
    }
    return std::nullopt;
}

// --- membership and generating sets ----------------------------------------

// Whether x lies in (R). With r^N in (R) this is exact linear algebra; without
// it a failed truncated test still refutes membership, a combination of
// whole products proves it, and a separating representation refutes it.
// Throws Undecided if none applies.
inline bool ideal_membership(const RelationSequence& R, std::size_t N, const PathElement& x) {
    require_in_r2(R);
    if (!x.is_zero() && x.max_length() >= N) throw Error("element has support of length >= " + std::to_string(N) + "; raise the bound");
    const TruncatedIdeal I(R, N);
    const bool in_truncated = I.contains(x);
    if (!in_truncated) return false;
    if (passes_truncated_test(R, N) && certify_power_in_ideal(R, N)) return true;
    // A combination of whole products u*rho*v is in (R) outright.
    if (TruncatedIdeal(R, N, {.whole_products_only = true}).contains(x)) return true;
    if (find_separating_representation(R, x)) return false;
    throw Undecided("membership of " + x.to_string() + " cannot be decided without an admissibility bound");
}

namespace detail {

inline bool generates_same(const RelationSequence& S, std::size_t full_rank, std::size_t N) {
    if (TruncatedIdeal(S, N + 1).rank() != full_rank) return false;
    return passes_truncated_test(S, N) && certify_power_in_ideal(S, N);
}

} // namespace detail

// A subsequence of R generating (R) from which no entry can be removed.
// Entries are tried for removal in input order.
inline RelationSequence system_of_relations(const RelationSequence& R, std::size_t N) {
    require_valid_bound(R, N);
    RelationSequence current(R.quiver_ptr());
    for (const auto& r : R.entries()) {
        if (!r.body.is_zero()) current.add(r.label, r.source, r.target, r.body);
    }
    const std::size_t full_rank = TruncatedIdeal(R, N + 1).rank();
    for (std::size_t i = 0; i < current.size();) {
        const auto candidate = current.without(i);
        if (detail::generates_same(candidate, full_rank, N)) {
            current = candidate;
        } else {
            ++i;
        }
    }
    return current;
}

// dim I / (Ir + rI). Both contain r^(N+1), so the computation happens in
// paths of length <= N.
inline std::size_t boundary_quotient_dim(const RelationSequence& R, std::size_t N) {
    require_valid_bound(R, N);
    const TruncatedIdeal whole(R, N + 1);
    const TruncatedIdeal boundary(R, N + 1, {.boundary_only = true});
    return whole.rank() - boundary.rank();
}

// Whether the images of candidate span I / (Ir + rI).
inline bool spans_boundary_quotient(const RelationSequence& R, const RelationSequence& candidate, std::size_t N) {
    require_valid_bound(R, N);
    for (const auto& c : candidate.entries()) {
        const std::size_t bound = std::max(N, c.body.is_zero() ? std::size_t{0} : c.body.max_length() + 1);
        if (!ideal_membership(R, bound, transport(c.body, R.quiver_ptr()))) {
            throw InvalidRelation("candidate relation '" + c.label + "' does not lie in the ideal");
        }
    }
    const TruncatedIdeal whole(R, N + 1);
    const TruncatedIdeal boundary(R, N + 1, {.boundary_only = true});
    RowEchelon e = boundary.echelon();
    for (const auto& c : candidate.entries()) {
        if (c.body.is_zero()) continue;
        PathElement low(R.quiver_ptr());
        const auto body = transport(c.body, R.quiver_ptr());
        for (const auto& [p, coeff] : body.terms()) {
            if (p.length() <= N) low.add_term(p, coeff);
        }
        e.insert(boundary.row_of(low));
    }
    return e.rank() == whole.rank();
}

inline std::size_t ext2_dim(const RelationSequence& R, std::size_t N) { return boundary_quotient_dim(R, N); }

// --- split extensions at m = 2 ----------------------------------------------

struct SplitExtensionReport {
    CheckResult result;
    H0Presentation presentation; // of H^0(Gamma(Q, R, 2))
    std::size_t bound_A = 0;
    std::size_t bound_extension = 0;
};

// H^0(Gamma(Q, R, 2)) is a split extension of A = KQ/(R): the inclusion
// iota: KQ -> KQ~ and the projection pi: KQ~ -> KQ killing the eps arrows
// descend to the quotients with pi iota = id.
inline SplitExtensionReport split_extension_check(const GradedQuiver& q, const RelationSequence& R, std::size_t N) {
    require_valid_bound(R, N);
    SplitExtensionReport out;
    out.bound_A = N;
    const auto gamma = build_gamma(q, R, 2);
    out.presentation = h0_presentation(gamma);
    const auto& tilde = out.presentation.quiver;
    const auto tilde_relations = out.presentation.as_relations();
    const auto ext_bound = find_admissibility_bound(tilde_relations);
    if (!ext_bound.found()) {
        throw NotAdmissible(std::string("H^0 ideal of Gamma(Q,R,2) has no certified admissibility bound (") + to_string(ext_bound.status) + ")");
    }
    out.bound_extension = ext_bound.bound;

    std::vector<bool> is_new(tilde->arrow_count(), false);
    for (std::size_t a = 0; a < tilde->arrow_count(); ++a) is_new[a] = !q.find_arrow(tilde->arrow_id(a));
    auto touches_new = [&](const Path& p) {
        return std::any_of(p.arrows.begin(), p.arrows.end(), [&](auto a) { return is_new[a]; });
    };

    // (i) every relation of R appears up to sign among the H^0 relations.
    std::vector<bool> matched(out.presentation.relations.size(), false);
    for (const auto& rho : R.entries()) {
        if (rho.body.is_zero()) continue;
        const auto lifted = transport(rho.body, tilde);
        bool found = false;
        for (std::size_t k = 0; k < out.presentation.relations.size() && !found; ++k) {
            const auto& r = out.presentation.relations[k];
            if (r == lifted || r == scale(lifted, -1)) found = matched[k] = true;
        }
        if (!found) {
            out.result = CheckResult::fail("relation '" + rho.label + "' is not among the H^0 relations", lifted);
            return out;
        }
    }
    // (ii) the remaining relations lie in the ideal generated by the new arrows.
    for (std::size_t k = 0; k < out.presentation.relations.size(); ++k) {
        if (matched[k]) continue;
        for (const auto& [p, c] : out.presentation.relations[k].terms()) {
            if (!touches_new(p)) {
                out.result = CheckResult::fail("H^0 relation " + out.presentation.relations[k].to_string() + " has a term free of new arrows",
                                               out.presentation.relations[k]);
                return out;
            }
        }
    }
    // (iii) iota and pi are well defined on the quotients and pi iota = id.
    auto base = R.quiver_ptr();
    auto project = [&](const PathElement& y) {
        PathElement r(base);
        for (const auto& [p, c] : y.terms()) {
            if (!touches_new(p)) r = r + scale(transport(PathElement::of(tilde, p), base), c);
        }
        return r;
    };
    for (const auto& rho : R.entries()) {
        if (rho.body.is_zero()) continue;
        const auto lifted = transport(rho.body, tilde);
        const auto bound = std::max(ext_bound.bound, lifted.max_length() + 1);
        if (!ideal_membership(tilde_relations, bound, lifted)) {
            out.result = CheckResult::fail("iota does not map relation '" + rho.label + "' into the H^0 ideal", lifted);
            return out;
        }
    }
    for (const auto& r : out.presentation.relations) {
        const auto image = project(r);
        const auto bound = std::max(N, image.is_zero() ? std::size_t{0} : image.max_length() + 1);
        if (!ideal_membership(R, bound, image)) {
            out.result = CheckResult::fail("pi does not map " + r.to_string() + " into (R)", r);
            return out;
        }
    }
    const PathBasis basis(base, N);
    const TruncatedIdeal I(R, N);
    for (const auto& p : basis.paths()) {
        const auto x = PathElement::of(base, p);
        const auto back = project(transport(x, tilde));
        if (!I.contains(back - x)) {
            out.result = CheckResult::fail("pi iota moves " + x.to_string(), x);
            return out;
        }
    }
    out.result = CheckResult::pass();
    return out;
}

} // namespace qpot
