#pragma once

// Degree-zero presentations of H^0 for non-positively graded dg path algebras:
// H^0 is the path algebra of the degree-0 arrows modulo the differentials of
// the degree -1 arrows.

#include <string>
#include <vector>

#include "qpot/ginzburg.hpp"

namespace qpot {

struct H0Presentation {
    QuiverPtr quiver;                    // degree-0 subquiver, all vertices kept
    std::vector<std::string> generators; // the degree -1 arrows, in declaration order
    std::vector<PathElement> relations;  // d(generator) on the subquiver; may be zero
    std::vector<std::string> source_ids;
    std::vector<std::string> target_ids;

    // Relations as a sequence labelled by their degree -1 arrows.
    RelationSequence as_relations() const {
        RelationSequence out(quiver);
        for (std::size_t k = 0; k < relations.size(); ++k) {
            out.add(generators[k], source_ids[k], target_ids[k], relations[k]);
        }
        return out;
    }

    std::vector<PathElement> nonzero_relations() const {
        std::vector<PathElement> out;
        for (const auto& r : relations) {
            if (!r.is_zero()) out.push_back(r);
        }
        return out;
    }
};

inline H0Presentation h0_presentation(const DgAlgebra& dg) {
    const auto& q = dg.quiver();
    if (!q.all_degrees_nonpositive()) throw DegreeMismatch("h0_presentation needs all arrows in non-positive degree");
    GradedQuiver sub;
    for (const auto& v : q.vertices()) sub.add_vertex(v);
    for (const auto& a : q.arrows()) {
        if (a.degree == 0) sub.add_arrow(a.id, a.source, a.target, 0);
    }
    H0Presentation out;
    out.quiver = share(std::move(sub));
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        if (q.degree(a) != -1) continue;
        out.generators.push_back(q.arrow_id(a));
        out.source_ids.push_back(q.vertex_id(q.source(a)));
        out.target_ids.push_back(q.vertex_id(q.target(a)));
        // d(a) has degree 0, so it only involves degree-0 arrows.
        out.relations.push_back(transport(dg.d(a), out.quiver));
    }
    return out;
}

// m = 1, W = 0: the loops t_i sit in degree -1 and H^0 is presented by the
// mesh relations e_i (sum [a, a*]) e_i.
inline H0Presentation m1_preprojective_check(const GradedQuiver& q) {
    detail::require_ungraded(q, "m1_preprojective_check");
    auto qp = share(q);
    return h0_presentation(build_ginzburg(*qp, Superpotential(qp), 1));
}

} // namespace qpot
