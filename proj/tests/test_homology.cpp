#include <gtest/gtest.h>

#include "support.hpp"

using namespace qpot;
using support::arrow;

namespace {

RelationSequence zero_relation(const QuiverPtr& q) {
    RelationSequence R(q);
    R.add("z", "1", "1", PathElement(q));
    return R;
}

std::map<int, std::size_t> dims_of(std::initializer_list<std::size_t> values) {
    std::map<int, std::size_t> out;
    int i = 0;
    for (auto v : values) out[i++] = v;
    return out;
}

// Random (Q, R) with R in r^2 whose quotient has a certified bound.
std::pair<QuiverPtr, RelationSequence> random_admissible(support::Rng& rng, std::size_t max_relations) {
    for (;;) {
        const auto q = support::uniform(rng, 0, 2) == 0 ? support::random_quiver(rng, 2, 3) : support::random_acyclic_quiver(rng, 4, 5);
        const auto R = support::random_relations(rng, q, support::uniform(rng, 1, max_relations), 3);
        if (find_admissibility_bound(R, 6).found()) return {q, R};
    }
}

} // namespace

TEST(BuildTruncated, EmptyRelationsHaveNothingInBetween) {
    const auto one = support::one_vertex();
    for (int m = 2; m <= 5; ++m) {
        const auto c = build_truncated(build_gamma(*one, RelationSequence(one), m), 6, -(m - 1), 0);
        EXPECT_EQ(c.dim(0), 1u);
        for (int i = 1; i <= m - 1; ++i) EXPECT_EQ(c.dim(-i), 0u);
    }
}

TEST(BuildTruncated, ZeroRelationBases) {
    const auto one = support::one_vertex();
    const auto g4 = build_gamma(*one, zero_relation(one), 4);
    const auto c4 = build_truncated(g4, 6, -3, 0);
    ASSERT_EQ(c4.dim(-2), 2u);
    std::set<std::string> names;
    for (const auto& p : c4.component(-2)) names.insert(path_to_string(g4.quiver(), p));
    EXPECT_EQ(names, (std::set<std::string>{"eps_z", "eps_z^*eps_z^"}));

    const auto g3 = build_gamma(*one, zero_relation(one), 3);
    const auto c3 = build_truncated(g3, 6, -3, 0);
    EXPECT_EQ(c3.dim(-2), 4u);
    for (const auto& p : c3.component(-2)) EXPECT_EQ(p.length(), 2u);
    EXPECT_EQ(c3.dim(-3), 1u + 8u); // t and the eight words of length three
}

TEST(BuildTruncated, RejectsLengthDecreasingDifferential) {
    const auto q = share(GradedQuiver({"1"}, {{"x", "1", "1", -1}}));
    const DgAlgebra dg(q, {PathElement::idempotent(q, "1")});
    EXPECT_THROW(build_truncated(dg, 3, -2, 0), StructuralError);
}

TEST(HomologyDims, EmptyRelations) {
    const auto one = support::one_vertex();
    const auto r = homology_dims(build_gamma(*one, RelationSequence(one), 4), 4, 6);
    EXPECT_EQ(r.dims, dims_of({1, 0, 0, 0}));
    EXPECT_TRUE(r.stabilized);
    EXPECT_TRUE(r.vosnex);
}

TEST(HomologyDims, ZeroRelation) {
    const auto one = support::one_vertex();
    const std::map<int, std::map<int, std::size_t>> expected{
        {3, dims_of({1, 2, 3})}, {4, dims_of({1, 1, 2, 2})}, {5, dims_of({1, 1, 1, 2, 2})}, {6, dims_of({1, 1, 1, 1, 2, 2})}};
    for (const auto& [m, dims] : expected) {
        const auto r = homology_dims(build_gamma(*one, zero_relation(one), m), m, static_cast<std::size_t>(m) + 2);
        EXPECT_EQ(r.dims, dims) << "m=" << m;
        EXPECT_TRUE(r.stabilized);
        EXPECT_FALSE(r.vosnex);
    }
}

TEST(HomologyDims, Snex) {
    const auto one = support::one_vertex();
    const auto t = snex_table(build_gamma(*one, zero_relation(one), 4), 4, 6);
    ASSERT_EQ(t.entries.size(), 4u);
    for (const auto& e : t.entries) EXPECT_GT(e.dim, 0u);
    EXPECT_FALSE(t.caveat.has_value());

    const auto acyclic = share(GradedQuiver({"1", "2", "3"}, {{"a", "1", "2", 0}, {"b", "2", "3", 0}}));
    const auto ta = snex_table(build_gamma(*acyclic, RelationSequence(acyclic), 4), 4, 6);
    EXPECT_TRUE(ta.report.vosnex);
    EXPECT_EQ(ta.entries[0].dim, 6u);
}

TEST(HomologyDims, RelationsForceDimensionAtMMinus2) {
    const auto sq = support::load_fixture("square-D4.qp");
    for (int m = 3; m <= 4; ++m) {
        const auto r = homology_dims(build_gamma(*sq.quiver, sq.relations, m), m, 6);
        EXPECT_GE(r.dims.at(m - 2), 1u);
        EXPECT_FALSE(r.vosnex);
        EXPECT_EQ(r.dims.at(0), 9u);
    }
}

TEST(H0Presentation, GammaAboveTwoGivesQuiverAndRelations) {
    const auto sq = support::load_fixture("square-D4.qp");
    for (int m = 3; m <= 5; ++m) {
        const auto h = h0_presentation(build_gamma(*sq.quiver, sq.relations, m));
        EXPECT_EQ(*h.quiver, *sq.quiver);
        // At m = 3 the eps arrow itself sits in degree -1 and contributes a zero relation.
        ASSERT_EQ(h.relations.size(), m == 3 ? 2u : 1u);
        ASSERT_EQ(h.nonzero_relations().size(), 1u);
        const auto k = static_cast<std::size_t>(std::find(h.generators.begin(), h.generators.end(), "eps_r1^") - h.generators.begin());
        ASSERT_LT(k, h.generators.size());
        EXPECT_EQ(h.relations[k], Rational(m % 2 == 0 ? 1 : -1) * transport(sq.relations[0].body, h.quiver));
    }
}

TEST(H0Presentation, GammaTwoIsTheSplitExtension) {
    const auto sq = support::load_fixture("square-D4.qp");
    const auto g = build_gamma(*sq.quiver, sq.relations, 2);
    const auto qw = build_QW(*sq.quiver, sq.relations, 2);
    const auto h = h0_presentation(g);
    EXPECT_EQ(*h.quiver, *qw.quiver);
    ASSERT_EQ(h.relations.size(), qw.quiver->arrow_count());
    for (std::size_t a = 0; a < qw.quiver->arrow_count(); ++a) {
        EXPECT_EQ(h.generators[a], dual_id(qw.quiver->arrow_id(a)));
        EXPECT_EQ(h.relations[a], transport(cyclic_derivative(qw.potential, a), h.quiver));
    }
}

TEST(H0Presentation, BGivesTheRelations) {
    const auto sq = support::load_fixture("square-D4.qp");
    const auto h = h0_presentation(build_B(*sq.quiver, sq.relations));
    EXPECT_EQ(*h.quiver, *sq.quiver);
    ASSERT_EQ(h.relations.size(), 1u);
    EXPECT_EQ(h.relations[0], transport(sq.relations[0].body, h.quiver));
    EXPECT_EQ(h.as_relations().size(), 1u);
}

TEST(H0Presentation, RejectsPositiveDegrees) {
    const auto q = share(GradedQuiver({"1"}, {{"x", "1", "1", 1}}));
    EXPECT_THROW(h0_presentation(DgAlgebra(q, {PathElement(q)})), DegreeMismatch);
}

TEST(M1Preprojective, Examples) {
    const auto one = m1_preprojective_check(*support::one_vertex());
    ASSERT_EQ(one.relations.size(), 1u);
    EXPECT_TRUE(one.relations[0].is_zero());
    EXPECT_TRUE(one.nonzero_relations().empty());

    const auto h = m1_preprojective_check(*support::a2());
    ASSERT_EQ(h.relations.size(), 2u);
    const auto a = arrow(h.quiver, "a"), as = arrow(h.quiver, "a^");
    EXPECT_EQ(h.relations[0], a * as);
    EXPECT_EQ(h.relations[1], Rational(-1) * as * a);

    const auto loops = m1_preprojective_check(*support::quaternion_quiver());
    ASSERT_EQ(loops.relations.size(), 1u);
    const auto x = arrow(loops.quiver, "alpha"), xs = arrow(loops.quiver, "alpha^");
    const auto y = arrow(loops.quiver, "beta"), ys = arrow(loops.quiver, "beta^");
    EXPECT_EQ(loops.relations[0], x * xs - xs * x + y * ys - ys * y);
}

TEST(Vosnex, Examples) {
    const auto acyclic = share(GradedQuiver({"1", "2", "3"}, {{"a", "1", "2", 0}, {"b", "2", "3", 0}, {"c", "1", "3", 0}}));
    for (int m = 3; m <= 4; ++m) {
        const auto v = vosnex_equivalence_check(*acyclic, RelationSequence(acyclic), m);
        EXPECT_TRUE(v.acyclic_and_no_relations && v.B_finite_in_degree_zero && v.vanishing_small_extensions && v.vanishing_at_m_minus_2);
    }

    const auto sq = support::load_fixture("square-D4.qp");
    const auto s = vosnex_equivalence_check(*sq.quiver, sq.relations, 4);
    EXPECT_FALSE(s.acyclic_and_no_relations || s.B_finite_in_degree_zero || s.vanishing_small_extensions || s.vanishing_at_m_minus_2);
    EXPECT_TRUE(s.all_agree());

    const auto loop = share(GradedQuiver({"1"}, {{"alpha", "1", "1", 0}}));
    RelationSequence R(loop);
    R.add("r", arrow(loop, "alpha") * arrow(loop, "alpha"));
    const auto l = vosnex_equivalence_check(*loop, R, 3);
    EXPECT_FALSE(l.acyclic_and_no_relations || l.B_finite_in_degree_zero || l.vanishing_small_extensions || l.vanishing_at_m_minus_2);
}

TEST(Vosnex, Preconditions) {
    const auto loop = share(GradedQuiver({"1"}, {{"alpha", "1", "1", 0}}));
    EXPECT_THROW(vosnex_equivalence_check(*loop, RelationSequence(loop), 3), NotAdmissible);
    RelationSequence lin(loop);
    lin.add("r", arrow(loop, "alpha"));
    EXPECT_THROW(vosnex_equivalence_check(*loop, lin, 3), InvalidRelation);
    EXPECT_THROW(vosnex_equivalence_check(*support::a2(), RelationSequence(support::a2()), 2), Error);
}

TEST(DefaultTruncation, Formula) {
    EXPECT_EQ(default_truncation_length(4, std::nullopt, 2), 6u);
    EXPECT_EQ(default_truncation_length(3, 5, 3), 10u);
    EXPECT_EQ(default_truncation_length(3, 2, 7), 9u);
}

TEST(HomologyProperty, MatricesCompose) {
    support::Rng rng(41);
    for (int trial = 0; trial < 25; ++trial) {
        const auto q = support::random_quiver(rng, 2, 3);
        const auto R = support::random_relations(rng, q, support::uniform(rng, 0, 2), 3);
        const int m = static_cast<int>(support::uniform(rng, 2, 4));
        const auto c = build_truncated(build_gamma(*q, R, m), 4, -m, 1);
        for (int i = -m; i + 1 < 1; ++i) {
            EXPECT_TRUE((c.matrix(i) * c.matrix(i + 1)).is_zero()) << "degree " << i;
        }
    }
}

TEST(HomologyProperty, EmptyRelationsVanishBetween) {
    support::Rng rng(42);
    for (int trial = 0; trial < 15; ++trial) {
        const auto q = support::random_quiver(rng, 3, 3);
        const int m = static_cast<int>(support::uniform(rng, 3, 5));
        for (std::size_t L = 1; L <= 4; ++L) {
            const auto r = homology_dims(build_gamma(*q, RelationSequence(q), m), m, L);
            for (int i = 1; i <= m - 2; ++i) EXPECT_EQ(r.dims.at(i), 0u);
        }
    }
}

TEST(HomologyProperty, RelationsBoundDimensionBelow) {
    support::Rng rng(43);
    for (int trial = 0; trial < 12; ++trial) {
        const auto [q, R] = random_admissible(rng, 3);
        const int m = static_cast<int>(support::uniform(rng, 3, 4));
        const auto r = homology_dims(build_gamma(*q, R, m), m, R.max_length() + 1);
        EXPECT_GE(r.dims.at(m - 2), R.size());
    }
}

TEST(HomologyProperty, GammaAgreesWithBBelowMMinus2) {
    support::Rng rng(44);
    for (int trial = 0; trial < 12; ++trial) {
        const auto q = support::random_quiver(rng, 2, 3);
        const auto R = support::random_relations(rng, q, support::uniform(rng, 0, 2), 3);
        const int m = static_cast<int>(support::uniform(rng, 4, 5));
        const std::size_t L = 4;
        const auto gamma = detail::negative_homology(build_gamma(*q, R, m), m - 2, L);
        const auto b = detail::negative_homology(build_B(*q, R), m - 2, L);
        for (int i = 0; i < m - 2; ++i) EXPECT_EQ(gamma.at(i), b.at(i)) << "i=" << i;
    }
}

TEST(HomologyProperty, DegreeZeroMatchesQuotientDimension) {
    support::Rng rng(45);
    auto check = [](const QuiverPtr& q, const RelationSequence& R, int m) {
        const auto bound = find_admissibility_bound(R);
        ASSERT_TRUE(bound.found());
        const auto c = build_truncated(build_gamma(*q, R, m), 2 * bound.bound, -1, 1);
        EXPECT_EQ(c.homology_dim(0), algebra_dim(R, bound.bound));
    };
    const auto h = support::quaternion_quiver();
    check(h, support::quaternion_relations(h), 4);
    const auto sq = support::load_fixture("square-D4.qp");
    check(sq.quiver, sq.relations, 3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto [q, R] = random_admissible(rng, 3);
        check(q, R, 3);
    }
}
