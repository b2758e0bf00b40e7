#pragma once

// Graded quivers and paths.
//
// Composition convention: the product pq of two paths means "first p, then
// q" and is defined when p ends where q starts. Every module follows this.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qpot/errors.hpp"

namespace qpot {

struct Arrow {
    std::string id;
    std::string source;
    std::string target;
    int degree = 0;

    friend bool operator==(const Arrow&, const Arrow&) = default;
};

// A quiver is allowed to be malformed (duplicate ids, dangling endpoints) so
// that validate() can report what is wrong. Everything else requires valid().
class GradedQuiver {
  public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    GradedQuiver() = default;
    GradedQuiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
        : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
        reindex();
    }

    GradedQuiver& add_vertex(std::string id) {
        vertices_.push_back(std::move(id));
        reindex();
        return *this;
    }
    GradedQuiver& add_arrow(std::string id, std::string source, std::string target, int degree = 0) {
        arrows_.push_back({std::move(id), std::move(source), std::move(target), degree});
        reindex();
        return *this;
    }

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t arrow_count() const { return arrows_.size(); }
    bool valid() const { return valid_; }

    std::optional<std::size_t> find_vertex(std::string_view id) const {
        auto it = vertex_index_.find(std::string(id));
        if (it == vertex_index_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<std::size_t> find_arrow(std::string_view id) const {
        auto it = arrow_index_.find(std::string(id));
        if (it == arrow_index_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t vertex(std::string_view id) const {
        auto v = find_vertex(id);
        if (!v) throw UnknownVertex(std::string(id));
        return *v;
    }
    std::size_t arrow(std::string_view id) const {
        auto a = find_arrow(id);
        if (!a) throw UnknownArrow(std::string(id));
        return *a;
    }

    std::size_t source(std::size_t a) const { return source_[a]; }
    std::size_t target(std::size_t a) const { return target_[a]; }
    int degree(std::size_t a) const { return arrows_[a].degree; }
    const std::string& arrow_id(std::size_t a) const { return arrows_[a].id; }
    const std::string& vertex_id(std::size_t v) const { return vertices_[v]; }
    std::span<const std::size_t> out_arrows(std::size_t v) const { return out_[v]; }

    bool all_degrees_nonpositive() const {
        return std::all_of(arrows_.begin(), arrows_.end(), [](const Arrow& a) { return a.degree <= 0; });
    }
    bool all_degrees_zero() const {
        return std::all_of(arrows_.begin(), arrows_.end(), [](const Arrow& a) { return a.degree == 0; });
    }

    void require_valid() const {
        if (!valid_) throw InvalidQuiver("quiver is malformed; run validate() for details");
    }

    friend bool operator==(const GradedQuiver& a, const GradedQuiver& b) {
        return a.vertices_ == b.vertices_ && a.arrows_ == b.arrows_;
    }

  private:
    void reindex() {
        valid_ = true;
        vertex_index_.clear();
        arrow_index_.clear();
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (!vertex_index_.emplace(vertices_[i], i).second) valid_ = false;
        }
        source_.assign(arrows_.size(), npos);
        target_.assign(arrows_.size(), npos);
        out_.assign(vertices_.size(), {});
        for (std::size_t i = 0; i < arrows_.size(); ++i) {
            if (!arrow_index_.emplace(arrows_[i].id, i).second) valid_ = false;
            auto s = vertex_index_.find(arrows_[i].source);
            auto t = vertex_index_.find(arrows_[i].target);
            if (s == vertex_index_.end() || t == vertex_index_.end()) {
                valid_ = false;
                continue;
            }
            source_[i] = s->second;
            target_[i] = t->second;
            out_[s->second].push_back(i);
        }
    }

    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::unordered_map<std::string, std::size_t> vertex_index_;
    std::unordered_map<std::string, std::size_t> arrow_index_;
    std::vector<std::size_t> source_;
    std::vector<std::size_t> target_;
    std::vector<std::vector<std::size_t>> out_;
    bool valid_ = true;
};

using QuiverPtr = std::shared_ptr<const GradedQuiver>;

inline QuiverPtr share(GradedQuiver q) { return std::make_shared<const GradedQuiver>(std::move(q)); }

struct Violation {
    std::string id;
    std::string message;
};

inline std::vector<Violation> validate(const GradedQuiver& q) {
    std::vector<Violation> out;
    std::map<std::string, int> seen;
    for (const auto& v : q.vertices()) {
        if (seen[v]++ == 1) out.push_back({v, "duplicate vertex id '" + v + "'"});
    }
    std::map<std::string, int> seen_arrows;
    for (const auto& a : q.arrows()) {
        if (seen_arrows[a.id]++ == 1) out.push_back({a.id, "duplicate arrow id '" + a.id + "'"});
        if (!seen.contains(a.source)) out.push_back({a.id, "arrow '" + a.id + "' starts at undeclared vertex '" + a.source + "'"});
        if (!seen.contains(a.target)) out.push_back({a.id, "arrow '" + a.id + "' ends at undeclared vertex '" + a.target + "'"});
    }
    return out;
}

// Arrows are dense indices into the owning quiver. `base` is the source
// vertex; for a trivial path it is the only data.
struct Path {
    std::uint32_t base = 0;
    std::vector<std::uint32_t> arrows;

    std::size_t length() const { return arrows.size(); }
    bool trivial() const { return arrows.empty(); }

    static Path trivial_at(std::size_t v) { return Path{static_cast<std::uint32_t>(v), {}}; }
    static Path of_arrow(const GradedQuiver& q, std::size_t a) {
        return Path{static_cast<std::uint32_t>(q.source(a)), {static_cast<std::uint32_t>(a)}};
    }

    // Length first, then lexicographic in arrow declaration order.
    friend std::strong_ordering operator<=>(const Path& a, const Path& b) {
        if (auto c = a.arrows.size() <=> b.arrows.size(); c != 0) return c;
        if (auto c = a.arrows <=> b.arrows; c != 0) return c;
        return a.base <=> b.base;
    }
    friend bool operator==(const Path&, const Path&) = default;
};

struct PathHash {
    std::size_t operator()(const Path& p) const noexcept {
        std::size_t h = 1469598103934665603ull ^ p.base;
        for (auto a : p.arrows) {
            h ^= a + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

inline std::size_t path_source(const GradedQuiver&, const Path& p) { return p.base; }
inline std::size_t path_target(const GradedQuiver& q, const Path& p) {
    return p.arrows.empty() ? p.base : q.target(p.arrows.back());
}
inline int path_degree(const GradedQuiver& q, const Path& p) {
    int d = 0;
    for (auto a : p.arrows) d += q.degree(a);
    return d;
}
inline bool is_cycle(const GradedQuiver& q, const Path& p) { return path_source(q, p) == path_target(q, p); }

inline bool composable(const GradedQuiver& q, const Path& p) {
    for (std::size_t i = 0; i + 1 < p.arrows.size(); ++i) {
        if (q.target(p.arrows[i]) != q.source(p.arrows[i + 1])) return false;
    }
    return p.arrows.empty() || q.source(p.arrows.front()) == p.base;
}

// Concatenation, or nullopt when p does not end where r starts.
inline std::optional<Path> concat(const GradedQuiver& q, const Path& p, const Path& r) {
    if (path_target(q, p) != path_source(q, r)) return std::nullopt;
    Path out{p.base, p.arrows};
    out.arrows.insert(out.arrows.end(), r.arrows.begin(), r.arrows.end());
    return out;
}

inline std::string path_to_string(const GradedQuiver& q, const Path& p) {
    if (p.arrows.empty()) return "e_" + q.vertex_id(p.base);
    std::string s;
    for (std::size_t i = 0; i < p.arrows.size(); ++i) {
        if (i) s += '*';
        s += q.arrow_id(p.arrows[i]);
    }
    return s;
}

// Builds a path from arrow ids; throws if they do not compose.
inline Path make_path(const GradedQuiver& q, std::initializer_list<std::string_view> ids) {
    if (ids.size() == 0) throw Error("make_path needs at least one arrow; use Path::trivial_at");
    Path p;
    for (auto id : ids) p.arrows.push_back(static_cast<std::uint32_t>(q.arrow(id)));
    p.base = static_cast<std::uint32_t>(q.source(p.arrows.front()));
    if (!composable(q, p)) throw Error("arrows do not compose into a path");
    return p;
}

namespace detail {

// Depth-first extension of `prefix`. When every arrow has non-positive degree
// the running degree only decreases, so a degree target prunes the search.
template <class Visit>
void extend_paths(const GradedQuiver& q, Path& prefix, int degree, std::size_t max_len, std::optional<int> target,
                  bool prune, Visit& visit) {
    visit(prefix, degree);
    if (prefix.arrows.size() == max_len) return;
    const auto at = path_target(q, prefix);
    for (auto a : q.out_arrows(at)) {
        const int d = degree + q.degree(a);
        if (prune && target && d < *target) continue;
        prefix.arrows.push_back(static_cast<std::uint32_t>(a));
        extend_paths(q, prefix, d, max_len, target, prune, visit);
        prefix.arrows.pop_back();
    }
}

} // namespace detail

// Calls visit(path, degree) for every path of length <= max_len (optionally of
// the given total degree), in no particular order.
template <class Visit>
void for_each_path(const GradedQuiver& q, std::size_t max_len, std::optional<int> degree, Visit&& visit) {
    q.require_valid();
    const bool prune = q.all_degrees_nonpositive();
    auto filtered = [&](const Path& p, int d) {
        if (!degree || d == *degree) visit(p, d);
    };
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
        Path p = Path::trivial_at(v);
        detail::extend_paths(q, p, 0, max_len, degree, prune, filtered);
    }
}

inline std::vector<Path> enumerate_paths(const GradedQuiver& q, std::size_t max_len, std::optional<int> degree = std::nullopt) {
    std::vector<Path> out;
    for_each_path(q, max_len, degree, [&](const Path& p, int) { out.push_back(p); });
    std::sort(out.begin(), out.end());
    return out;
}

// Number of paths of length <= max_len, trivial ones included, saturating at
// the largest std::size_t.
inline std::size_t count_paths(const GradedQuiver& q, std::size_t max_len) {
    constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
    auto add = [](std::size_t a, std::size_t b) { return a > kMax - b ? kMax : a + b; };
    std::vector<std::size_t> ending(q.vertex_count(), 1);
    std::size_t total = q.vertex_count();
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<std::size_t> next(q.vertex_count(), 0);
        for (std::size_t a = 0; a < q.arrow_count(); ++a) next[q.target(a)] = add(next[q.target(a)], ending[q.source(a)]);
        ending = std::move(next);
        for (auto c : ending) total = add(total, c);
        if (total == kMax) break;
    }
    return total;
}

inline bool is_acyclic(const GradedQuiver& q) {
    q.require_valid();
    // Kahn's algorithm; loops never reach in-degree zero.
    std::vector<std::size_t> indeg(q.vertex_count(), 0);
    for (std::size_t a = 0; a < q.arrow_count(); ++a) ++indeg[q.target(a)];
    std::vector<std::size_t> ready;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
        if (indeg[v] == 0) ready.push_back(v);
    }
    std::size_t removed = 0;
    while (!ready.empty()) {
        const auto v = ready.back();
        ready.pop_back();
        ++removed;
        for (auto a : q.out_arrows(v)) {
            if (--indeg[q.target(a)] == 0) ready.push_back(q.target(a));
        }
    }
    return removed == q.vertex_count();
}

// Length of the longest path; only meaningful for acyclic quivers.
inline std::size_t longest_path_length(const GradedQuiver& q) {
    if (!is_acyclic(q)) throw Error("longest path requested on a quiver with cycles");
    std::vector<std::size_t> best(q.vertex_count(), 0);
    // Relax |Q0| times; acyclicity bounds path length by |Q0| - 1.
    for (std::size_t round = 0; round < q.vertex_count(); ++round) {
        for (std::size_t a = 0; a < q.arrow_count(); ++a) {
            best[q.target(a)] = std::max(best[q.target(a)], best[q.source(a)] + 1);
        }
    }
    std::size_t m = 0;
    for (auto b : best) m = std::max(m, b);
    return m;
}

} // namespace qpot
