#include <gtest/gtest.h>

#include "support.hpp"

using namespace qpot;
using support::arrow;

namespace {

// Brute force: expand both factors term by term with concatenation.
PathElement naive_product(const PathElement& x, const PathElement& y) {
    PathElement out(x.quiver_ptr());
    for (const auto& [p, c] : x.terms()) {
        for (const auto& [r, d] : y.terms()) {
            if (path_target(x.quiver(), p) != path_source(x.quiver(), r)) continue;
            Path pr = p;
            pr.arrows.insert(pr.arrows.end(), r.arrows.begin(), r.arrows.end());
            out.add_term(pr, c * d);
        }
    }
    return out;
}

QuiverPtr graded_loops(int m) {
    // eps of degree 2-m and eps^ of degree -1 at one vertex.
    return share(GradedQuiver({"1"}, {{"eps", "1", "1", 2 - m}, {"eps^", "1", "1", -1}}));
}

// A random cycle of length 1..max_len, or nullopt.
std::optional<Path> random_cycle(support::Rng& rng, const GradedQuiver& q, std::size_t max_len) {
    for (int tries = 0; tries < 30; ++tries) {
        auto p = support::random_path(rng, q, max_len);
        if (p && is_cycle(q, *p)) return p;
    }
    return std::nullopt;
}

QuiverPtr random_graded_quiver(support::Rng& rng) {
    GradedQuiver g;
    const auto n = support::uniform(rng, 1, 2);
    for (std::size_t v = 1; v <= n; ++v) g.add_vertex(std::to_string(v));
    const auto arrows = support::uniform(rng, 1, 4);
    for (std::size_t k = 0; k < arrows; ++k) {
        g.add_arrow("a" + std::to_string(k), std::to_string(support::uniform(rng, 1, n)), std::to_string(support::uniform(rng, 1, n)),
                    static_cast<int>(support::uniform(rng, 0, 4)) - 3);
    }
    return share(std::move(g));
}

} // namespace

TEST(Add, Examples) {
    const auto q = support::quaternion_quiver();
    const auto a = arrow(q, "alpha");
    EXPECT_EQ(a + PathElement(q), a);
    EXPECT_TRUE((a + Rational(-1) * a).is_zero());
    EXPECT_EQ(Rational(2) * a + Rational(3) * a, Rational(5) * a);
    EXPECT_THROW(a + arrow(support::a2(), "a"), QuiverMismatch);
}

TEST(Multiply, Examples) {
    const auto q = support::a2();
    const auto a = arrow(q, "a");
    EXPECT_EQ(PathElement::idempotent(q, "1") * a, a);
    EXPECT_TRUE((PathElement::idempotent(q, "2") * a).is_zero());
    EXPECT_EQ(a * PathElement::idempotent(q, "2"), a);
    EXPECT_TRUE((a * a).is_zero());

    const auto h = support::quaternion_quiver();
    const auto al = arrow(h, "alpha");
    const auto be = arrow(h, "beta");
    EXPECT_EQ((al * al - be * al * be) * be, al * al * be - be * al * be * be);
    EXPECT_EQ((al * be).to_string(), "alpha*beta");
    EXPECT_EQ((al * al - be * al * be) * be, naive_product(al * al - be * al * be, be));
}

TEST(Supercommutator, Examples) {
    const auto q = support::quaternion_quiver();
    const auto a = arrow(q, "alpha");
    EXPECT_TRUE(supercommutator(a, a).is_zero());

    // alpha of degree 0 and its dual of degree 1-m.
    const int m = 3;
    const auto dq = share(GradedQuiver({"1", "2"}, {{"a", "1", "2", 0}, {"a^", "2", "1", 1 - m}}));
    const auto x = arrow(dq, "a"), xs = arrow(dq, "a^");
    EXPECT_EQ(supercommutator(x, xs), x * xs - xs * x);

    for (int mm : {3, 5}) {
        const auto g = graded_loops(mm);
        const auto e = arrow(g, "eps"), es = arrow(g, "eps^");
        EXPECT_EQ(supercommutator(e, es), e * es + es * e);
    }
    const auto g4 = graded_loops(4);
    EXPECT_EQ(supercommutator(arrow(g4, "eps"), arrow(g4, "eps^")), arrow(g4, "eps") * arrow(g4, "eps^") - arrow(g4, "eps^") * arrow(g4, "eps"));

    const auto mixed = arrow(g4, "eps") + arrow(g4, "eps^");
    EXPECT_THROW(supercommutator(mixed, arrow(g4, "eps")), NotHomogeneous);
}

TEST(HomogeneousDegree, Examples) {
    const auto g = graded_loops(4);
    EXPECT_EQ(homogeneous_degree(arrow(g, "eps^")).value, -1);
    EXPECT_EQ(homogeneous_degree(PathElement::idempotent(g, "1")).value, 0);
    EXPECT_EQ(homogeneous_degree(PathElement(g)).kind, ElementDegree::Kind::any);

    const auto q = share(GradedQuiver({"1"}, {{"alpha", "1", "1", 0}, {"eps", "1", "1", 2 - 4}}));
    EXPECT_EQ(homogeneous_degree(arrow(q, "alpha") + arrow(q, "eps")).kind, ElementDegree::Kind::mixed);
}

TEST(CyclicReduce, Examples) {
    const auto q = support::quaternion_quiver();
    const auto e = PathElement::idempotent(q, "1");
    const auto w = cyclic_reduce(Rational(3) * e);
    ASSERT_EQ(w.cyclic_terms().size(), 1u);
    EXPECT_EQ(w.cyclic_terms().begin()->second, Rational(3));

    const auto a = arrow(q, "alpha"), b = arrow(q, "beta");
    EXPECT_TRUE(cyclic_reduce(a * b - b * a).is_zero());
    EXPECT_FALSE(cyclic_reduce(a * b + b * a).is_zero());

    const auto odd = share(GradedQuiver({"1", "2"}, {{"u", "1", "2", -1}, {"v", "2", "1", -1}}));
    const auto u = arrow(odd, "u"), v = arrow(odd, "v");
    EXPECT_TRUE(cyclic_reduce(u * v + v * u).is_zero());
    EXPECT_FALSE(cyclic_reduce(u * v - v * u).is_zero());

    const auto a2 = support::a2();
    EXPECT_THROW(cyclic_reduce(arrow(a2, "a")), NotACycle);
}

TEST(CyclicReduce, PeriodicOddCycleVanishes) {
    // x of degree -1: x*x equals minus its own rotation.
    const auto q = share(GradedQuiver({"1"}, {{"x", "1", "1", -1}}));
    const auto x = arrow(q, "x");
    EXPECT_TRUE(cyclic_reduce(x * x).is_zero());
    EXPECT_FALSE(cyclic_reduce(x * x * x).is_zero());
}

TEST(CanonicalCycle, SmallestRotationInDeclarationOrder) {
    const auto q = support::quaternion_quiver();
    const auto c = canonical_cycle(*q, make_path(*q, {"beta", "alpha", "alpha"}));
    EXPECT_EQ(path_to_string(*q, c.representative), "alpha*alpha*beta");
    EXPECT_EQ(c.sign, 1);
}

TEST(CyclicDerivative, Examples) {
    const auto q = support::quaternion_quiver();
    const auto e = PathElement::idempotent(q, "1");
    EXPECT_TRUE(cyclic_derivative(cyclic_reduce(e), "alpha").is_zero());

    const auto a = arrow(q, "alpha"), b = arrow(q, "beta");
    EXPECT_EQ(cyclic_derivative(cyclic_reduce(a * a * b), "alpha"), a * b + b * a);
    EXPECT_EQ(cyclic_derivative(cyclic_reduce(a * a * b), "beta"), a * a);
    EXPECT_THROW(cyclic_derivative(cyclic_reduce(a * a * b), "gamma"), UnknownArrow);

    // Square quiver plus eps: v3 -> v1 of degree 2-m. d_eps(eps * rho) = (-1)^m rho.
    for (int m = 2; m <= 5; ++m) {
        const auto sq = share(GradedQuiver({"v1", "v2", "v3", "v4"}, {{"a", "v1", "v2", 0},
                                                                      {"b", "v2", "v3", 0},
                                                                      {"c", "v1", "v4", 0},
                                                                      {"d", "v4", "v3", 0},
                                                                      {"eps", "v3", "v1", 2 - m}}));
        const auto rho = arrow(sq, "a") * arrow(sq, "b") - arrow(sq, "c") * arrow(sq, "d");
        const auto w = cyclic_reduce(arrow(sq, "eps") * rho);
        EXPECT_EQ(cyclic_derivative(w, "eps"), Rational(m % 2 == 0 ? 1 : -1) * rho) << "m=" << m;
    }
}

TEST(AlgebraProperty, AssociativeDistributiveWithIdentity) {
    support::Rng rng(21);
    for (int trial = 0; trial < 150; ++trial) {
        const auto q = support::random_quiver(rng);
        const auto x = support::random_homogeneous(rng, q, 3);
        const auto y = support::random_homogeneous(rng, q, 3);
        const auto z = support::random_homogeneous(rng, q, 3);
        EXPECT_EQ((x * y) * z, x * (y * z));
        EXPECT_EQ(x * (y + z), x * y + x * z);
        EXPECT_EQ((x + y) * z, x * z + y * z);
        EXPECT_EQ(x * y, naive_product(x, y));
        const auto one = PathElement::identity(q);
        EXPECT_EQ(one * x, x);
        EXPECT_EQ(x * one, x);
    }
}

TEST(SuperpotentialProperty, DerivativeDegreeAndRotationInvariance) {
    support::Rng rng(22);
    int checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const auto q = random_graded_quiver(rng);
        const auto p = random_cycle(rng, *q, 5);
        if (!p) continue;
        ++checked;
        const int w = path_degree(*q, *p);
        for (std::size_t a = 0; a < q->arrow_count(); ++a) {
            const auto raw = cyclic_derivative_of_cycle(q, *p, a);
            const auto d = homogeneous_degree(raw);
            EXPECT_TRUE(d.matches(w - q->degree(a)));
            // Rotating uv to vu: the class of vu is sigma times the class of uv.
            int prefix = 0;
            for (std::size_t k = 0; k < p->length(); ++k) {
                const auto r = rotate(*p, k, *q);
                const int sigma = parity_sign(static_cast<long long>(prefix) * (w - prefix));
                EXPECT_EQ(raw, scale(cyclic_derivative_of_cycle(q, r, a), sigma));
                prefix += q->degree(p->arrows[k]);
            }
            // Through cyclic_reduce, which may store another rotation.
            Superpotential sp(q);
            sp.add_cycle(*p, 1);
            if (!sp.is_zero()) {
                EXPECT_EQ(cyclic_derivative(sp, a), raw);
            } else {
                EXPECT_TRUE(raw.is_zero());
            }
        }
    }
    EXPECT_GT(checked, 100);
}

TEST(SuperpotentialProperty, CommutatorsReduceToZero) {
    support::Rng rng(23);
    int checked = 0;
    for (int trial = 0; trial < 600; ++trial) {
        const auto q = random_graded_quiver(rng);
        const auto x = support::random_homogeneous(rng, q, 3);
        const auto y = support::random_homogeneous(rng, q, 3);
        const auto c = supercommutator(x, y);
        bool cycles = true;
        for (const auto& [p, coeff] : c.terms()) cycles = cycles && is_cycle(*q, p);
        if (!cycles || c.is_zero() || !homogeneous_degree(c).is_homogeneous()) continue;
        ++checked;
        EXPECT_TRUE(cyclic_reduce(c).is_zero()) << "x=" << x.to_string() << " y=" << y.to_string();
    }
    EXPECT_GT(checked, 30);
}

TEST(Transport, MovesElementsBetweenQuivers) {
    const auto q = support::a2();
    const auto big = share(GradedQuiver({"0", "1", "2"}, {{"b", "0", "1", 0}, {"a", "1", "2", 0}}));
    const auto moved = transport(arrow(q, "a"), big);
    EXPECT_EQ(moved, arrow(big, "a"));
}
