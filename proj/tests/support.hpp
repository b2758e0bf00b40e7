#pragma once

// Shared helpers for the test suites: fixture loading, small example
// quivers and random generators.

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qpot/qpot.hpp"

namespace qpot::support {

inline ProblemFile load_fixture(const std::string& name) {
    std::ifstream in(std::string(QPOT_FIXTURES_DIR) + "/" + name, std::ios::binary);
    if (!in) throw Error("missing fixture " + name);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

inline PathElement arrow(const QuiverPtr& q, const char* id) { return PathElement::arrow(q, id); }

inline QuiverPtr one_vertex() { return share(GradedQuiver({"1"}, {})); }

// a: 1 -> 2
inline QuiverPtr a2() { return share(GradedQuiver({"1", "2"}, {{"a", "1", "2", 0}})); }

inline QuiverPtr quaternion_quiver() { return share(GradedQuiver({"1"}, {{"alpha", "1", "1", 0}, {"beta", "1", "1", 0}})); }

inline RelationSequence quaternion_relations(const QuiverPtr& q, bool with_third = true) {
    const auto a = arrow(q, "alpha");
    const auto b = arrow(q, "beta");
    RelationSequence R(q);
    R.add("r1", a * a - b * a * b);
    R.add("r2", b * b - a * b * a);
    if (with_third) R.add("r3", a * a * b);
    return R;
}

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); }

// Vertices 1..n, arrows only from lower to higher index.
inline QuiverPtr random_acyclic_quiver(Rng& rng, std::size_t max_vertices = 4, std::size_t max_arrows = 5) {
    GradedQuiver q;
    const auto n = uniform(rng, 2, max_vertices);
    for (std::size_t v = 1; v <= n; ++v) q.add_vertex(std::to_string(v));
    const auto arrows = uniform(rng, 1, max_arrows);
    for (std::size_t k = 0; k < arrows; ++k) {
        const auto s = uniform(rng, 1, n - 1);
        const auto t = uniform(rng, s + 1, n);
        q.add_arrow("a" + std::to_string(k), std::to_string(s), std::to_string(t));
    }
    return share(std::move(q));
}

// Any quiver, loops and cycles allowed.
inline QuiverPtr random_quiver(Rng& rng, std::size_t max_vertices = 3, std::size_t max_arrows = 4) {
    GradedQuiver q;
    const auto n = uniform(rng, 1, max_vertices);
    for (std::size_t v = 1; v <= n; ++v) q.add_vertex(std::to_string(v));
    const auto arrows = uniform(rng, 1, max_arrows);
    for (std::size_t k = 0; k < arrows; ++k) {
        q.add_arrow("a" + std::to_string(k), std::to_string(uniform(rng, 1, n)), std::to_string(uniform(rng, 1, n)));
    }
    return share(std::move(q));
}

// A random relation in e_s r^2 e_t: up to three paths of lengths 2..max_len
// between a common pair of vertices, with small nonzero coefficients. Returns
// a zero body when no path of length >= 2 exists.
inline Relation random_relation(Rng& rng, const QuiverPtr& q, std::string label, std::size_t max_len = 3) {
    std::vector<Path> long_paths;
    for (const auto& p : enumerate_paths(*q, max_len)) {
        if (p.length() >= 2) long_paths.push_back(p);
    }
    if (long_paths.empty()) return {std::move(label), q->vertex_id(0), q->vertex_id(0), PathElement(q)};
    const auto& first = long_paths[uniform(rng, 0, long_paths.size() - 1)];
    const auto s = path_source(*q, first);
    const auto t = path_target(*q, first);
    std::vector<Path> parallel;
    for (const auto& p : long_paths) {
        if (path_source(*q, p) == s && path_target(*q, p) == t) parallel.push_back(p);
    }
    PathElement body(q);
    const auto terms = uniform(rng, 1, 3);
    for (std::size_t k = 0; k < terms; ++k) {
        const long long c = static_cast<long long>(uniform(rng, 1, 2)) * (uniform(rng, 0, 1) ? 1 : -1);
        body.add_term(k == 0 ? first : parallel[uniform(rng, 0, parallel.size() - 1)], c);
    }
    return {std::move(label), q->vertex_id(s), q->vertex_id(t), std::move(body)};
}

inline RelationSequence random_relations(Rng& rng, const QuiverPtr& q, std::size_t count, std::size_t max_len = 3) {
    RelationSequence R(q);
    for (std::size_t k = 0; k < count; ++k) {
        auto r = random_relation(rng, q, "r" + std::to_string(k + 1), max_len);
        R.add(r.label, r.source, r.target, r.body);
    }
    return R;
}

// Random path of length 1..max_len, or nullopt on a dead end at length 0.
inline std::optional<Path> random_path(Rng& rng, const GradedQuiver& q, std::size_t max_len) {
    Path p = Path::trivial_at(uniform(rng, 0, q.vertex_count() - 1));
    const auto len = uniform(rng, 1, max_len);
    for (std::size_t k = 0; k < len; ++k) {
        const auto out = q.out_arrows(path_target(q, p));
        if (out.empty()) break;
        p.arrows.push_back(static_cast<std::uint32_t>(out[uniform(rng, 0, out.size() - 1)]));
    }
    if (p.trivial()) return std::nullopt;
    return p;
}

// Homogeneous element: random paths of the degree of the first one.
inline PathElement random_homogeneous(Rng& rng, const QuiverPtr& q, std::size_t max_len) {
    PathElement x(q);
    std::optional<int> degree;
    for (int tries = 0; tries < 12 && x.size() < 3; ++tries) {
        auto p = random_path(rng, *q, max_len);
        if (!p) continue;
        const int d = path_degree(*q, *p);
        if (degree && *degree != d) continue;
        degree = d;
        x.add_term(*p, static_cast<long long>(uniform(rng, 1, 3)) * (uniform(rng, 0, 1) ? 1 : -1));
    }
    return x;
}

} // namespace qpot::support
