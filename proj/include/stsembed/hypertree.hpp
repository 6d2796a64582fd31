#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "stsembed/rng.hpp"
#include "stsembed/steiner.hpp"

namespace stsembed {

/// Ordinary (2-uniform) tree; the pre-image of a subdivision hypertree.
struct GraphTree {
    int order = 0;
    std::vector<std::pair<int, int>> edges;

    static GraphTree single_edge() { return GraphTree{2, {{0, 1}}}; }

    bool valid() const {
        if (order < 1 || edges.size() + 1 != static_cast<size_t>(order)) return false;
        std::vector<int> parent(static_cast<size_t>(order));
        for (int v = 0; v < order; ++v) parent[static_cast<size_t>(v)] = v;
        auto find = [&](int v) {
            while (parent[static_cast<size_t>(v)] != v) {
                parent[static_cast<size_t>(v)] = parent[static_cast<size_t>(parent[static_cast<size_t>(v)])];
                v = parent[static_cast<size_t>(v)];
            }
            return v;
        };
        for (auto [a, b] : edges) {
            if (a < 0 || b < 0 || a >= order || b >= order || a == b) return false;
            int ra = find(a), rb = find(b);
            if (ra == rb) return false;  // cycle
            parent[static_cast<size_t>(ra)] = rb;
        }
        return true;
    }

    std::vector<int> degrees() const {
        std::vector<int> deg(static_cast<size_t>(order), 0);
        for (auto [a, b] : edges) {
            ++deg[static_cast<size_t>(a)];
            ++deg[static_cast<size_t>(b)];
        }
        return deg;
    }

    // "GT v1": first line order, then one edge per line.
    std::string to_text() const {
        std::ostringstream out;
        out << order << "\n";
        for (auto [a, b] : edges) out << a << ' ' << b << "\n";
        return out.str();
    }

    static GraphTree parse_text(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        GraphTree t;
        bool have_order = false;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ls(line);
            if (!have_order) {
                if (!(ls >> t.order)) throw std::invalid_argument("GT v1 line " + std::to_string(lineno) + ": expected order");
                have_order = true;
                continue;
            }
            int a, b;
            if (!(ls >> a >> b)) throw std::invalid_argument("GT v1 line " + std::to_string(lineno) + ": expected two integers");
            t.edges.emplace_back(a, b);
        }
        if (!have_order) throw std::invalid_argument("GT v1: empty input");
        if (!t.valid()) throw std::invalid_argument("GT v1: edge list is not a tree on " + std::to_string(t.order) + " vertices");
        return t;
    }
};

struct HypertreeViolation {
    enum class Kind { MalformedEdge, Cycle, Disconnected, SizeMismatch };
    Kind kind;
    std::string message;
};

/// 3-uniform hypertree on vertices 0..n-1: connected and every two vertices
/// joined by a unique path, so |edges| = (n-1)/2.
class Hypertree {
public:
    Hypertree() = default;
    Hypertree(int n, std::vector<Triple> edges) : n_(n) {
        for (auto& e : edges) e = sorted_triple(e[0], e[1], e[2]);
        edges_ = std::move(edges);
        if (auto v = check(edges_, n_)) throw std::invalid_argument("Hypertree: " + v->message);
        build_incidence();
    }

    int order() const { return n_; }
    int size() const { return static_cast<int>(edges_.size()); }
    const std::vector<Triple>& edges() const { return edges_; }
    const std::vector<int>& incident(int v) const { return incidence_[static_cast<size_t>(v)]; }
    int degree(int v) const { return static_cast<int>(incidence_[static_cast<size_t>(v)].size()); }

    int max_degree() const {
        int d = 0;
        for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
        return d;
    }

    /// Vertices adjacent to v (sharing an edge), without duplicates.
    std::vector<int> neighbors(int v) const {
        std::vector<int> out;
        for (int e : incident(v)) {
            for (int u : edges_[static_cast<size_t>(e)]) {
                if (u != v && std::find(out.begin(), out.end(), u) == out.end()) out.push_back(u);
            }
        }
        return out;
    }

    /// Validation without construction: reports the first violation among
    /// malformed edges, cycles (a pair covered twice), disconnection, and
    /// edge-count mismatch. A valid instance is exactly one in which the
    /// vertex-edge incidence graph is a tree.
    static std::optional<HypertreeViolation> check(const std::vector<Triple>& edges, int n) {
        if (n < 1) return HypertreeViolation{HypertreeViolation::Kind::SizeMismatch, "order must be positive"};
        for (size_t e = 0; e < edges.size(); ++e) {
            for (int v : edges[e]) {
                if (v < 0 || v >= n)
                    return HypertreeViolation{HypertreeViolation::Kind::MalformedEdge,
                                              "edge " + std::to_string(e) + " has out-of-range vertex"};
            }
            const Triple& t = edges[e];
            if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2])
                return HypertreeViolation{HypertreeViolation::Kind::MalformedEdge,
                                          "edge " + std::to_string(e) + " repeats a vertex"};
        }
        // Two edges sharing two vertices break path uniqueness.
        std::vector<std::pair<long long, int>> pairs;
        pairs.reserve(edges.size() * 3);
        for (size_t e = 0; e < edges.size(); ++e) {
            const Triple t = sorted_triple(edges[e][0], edges[e][1], edges[e][2]);
            auto key = [n](int x, int y) { return static_cast<long long>(x) * n + y; };
            pairs.push_back({key(t[0], t[1]), static_cast<int>(e)});
            pairs.push_back({key(t[0], t[2]), static_cast<int>(e)});
            pairs.push_back({key(t[1], t[2]), static_cast<int>(e)});
        }
        std::sort(pairs.begin(), pairs.end());
        for (size_t i = 1; i < pairs.size(); ++i) {
            if (pairs[i].first == pairs[i - 1].first)
                return HypertreeViolation{HypertreeViolation::Kind::Cycle,
                                          "edges " + std::to_string(pairs[i - 1].second) + " and " +
                                              std::to_string(pairs[i].second) + " share two vertices"};
        }
        // Connectivity over the incidence structure.
        if (n > 1 || !edges.empty()) {
            std::vector<std::vector<int>> inc(static_cast<size_t>(n));
            for (size_t e = 0; e < edges.size(); ++e)
                for (int v : edges[e]) inc[static_cast<size_t>(v)].push_back(static_cast<int>(e));
            std::vector<char> vseen(static_cast<size_t>(n), 0), eseen(edges.size(), 0);
            std::vector<int> stack{0};
            vseen[0] = 1;
            int reached = 1;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int e : inc[static_cast<size_t>(v)]) {
                    if (eseen[static_cast<size_t>(e)]) continue;
                    eseen[static_cast<size_t>(e)] = 1;
                    for (int u : edges[static_cast<size_t>(e)]) {
                        if (!vseen[static_cast<size_t>(u)]) {
                            vseen[static_cast<size_t>(u)] = 1;
                            ++reached;
                            stack.push_back(u);
                        }
                    }
                }
            }
            if (reached != n)
                return HypertreeViolation{HypertreeViolation::Kind::Disconnected,
                                          "only " + std::to_string(reached) + " of " + std::to_string(n) +
                                              " vertices reachable from vertex 0"};
        }
        if (2 * edges.size() != static_cast<size_t>(n) - 1)
            return HypertreeViolation{HypertreeViolation::Kind::SizeMismatch,
                                      "expected (n-1)/2 = " + std::to_string((n - 1) / 2) + " edges, got " +
                                          std::to_string(edges.size())};
        return std::nullopt;
    }

    /// True iff every edge contains a degree-one vertex.
    bool is_subdivision_tree() const {
        for (const Triple& e : edges_) {
            if (degree(e[0]) > 1 && degree(e[1]) > 1 && degree(e[2]) > 1) return false;
        }
        return true;
    }

    /// 3-uniform subdivision of a graph tree: vertices of t keep their labels,
    /// edge i of t gains the new vertex order(t)+i.
    static Hypertree subdivide(const GraphTree& t) {
        if (!t.valid()) throw std::invalid_argument("subdivide: input is not a tree");
        const int p = t.order;
        std::vector<Triple> edges;
        edges.reserve(t.edges.size());
        for (size_t i = 0; i < t.edges.size(); ++i) {
            edges.push_back(sorted_triple(t.edges[i].first, t.edges[i].second, p + static_cast<int>(i)));
        }
        return Hypertree(2 * p - 1, std::move(edges));
    }

    // "HT v1": first line n, then one hyperedge per line.
    std::string to_text() const {
        std::ostringstream out;
        out << n_ << "\n";
        for (const Triple& t : edges_) out << t[0] << ' ' << t[1] << ' ' << t[2] << "\n";
        return out.str();
    }

    static Hypertree parse_text(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        int n = -1;
        std::vector<Triple> es;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ls(line);
            if (n < 0) {
                if (!(ls >> n) || n < 1) throw std::invalid_argument("HT v1 line " + std::to_string(lineno) + ": expected order");
                continue;
            }
            int a, b, c;
            if (!(ls >> a >> b >> c))
                throw std::invalid_argument("HT v1 line " + std::to_string(lineno) + ": expected three integers");
            es.push_back({a, b, c});
        }
        if (n < 0) throw std::invalid_argument("HT v1: empty input");
        return Hypertree(n, std::move(es));
    }

private:
    void build_incidence() {
        incidence_.assign(static_cast<size_t>(n_), {});
        for (size_t e = 0; e < edges_.size(); ++e)
            for (int v : edges_[e]) incidence_[static_cast<size_t>(v)].push_back(static_cast<int>(e));
    }

    int n_ = 0;
    std::vector<Triple> edges_;
    std::vector<std::vector<int>> incidence_;
};

/// Uniform random labeled tree with all degrees <= d, drawn by sampling each
/// position of a Pruefer-style sequence with per-entry rejection of labels
/// already at multiplicity d-1 (degree = multiplicity + 1).
inline GraphTree random_bounded_tree(int order, int d, std::uint64_t seed) {
    if (order < 2) throw std::invalid_argument("random_bounded_tree: order must be >= 2");
    if (d < 2 && order > 2) throw std::invalid_argument("random_bounded_tree: d must be >= 2 for order > 2");
    GraphTree t;
    t.order = order;
    if (order == 2) {
        t.edges = {{0, 1}};
        return t;
    }
    Rng rng = make_rng(seed);
    const int len = order - 2;
    std::vector<int> seq(static_cast<size_t>(len));
    std::vector<int> mult(static_cast<size_t>(order), 0);
    for (int i = 0; i < len; ++i) {
        int v;
        do {
            v = static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(order)));
        } while (mult[static_cast<size_t>(v)] >= d - 1);
        seq[static_cast<size_t>(i)] = v;
        ++mult[static_cast<size_t>(v)];
    }
    // Standard Pruefer decode.
    std::vector<int> deg(static_cast<size_t>(order), 1);
    for (int v : seq) ++deg[static_cast<size_t>(v)];
    std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
    for (int v = 0; v < order; ++v)
        if (deg[static_cast<size_t>(v)] == 1) leaves.push(v);
    for (int v : seq) {
        int leaf = leaves.top();
        leaves.pop();
        t.edges.emplace_back(leaf, v);
        if (--deg[static_cast<size_t>(v)] == 1) leaves.push(v);
    }
    int a = leaves.top();
    leaves.pop();
    int b = leaves.top();
    t.edges.emplace_back(a, b);
    return t;
}

enum class Color : unsigned char { Red, Blue };

/// Rooting data for a hypertree: father links, the designated celibate
/// (degree-one) vertex of every edge, the proper red/blue coloring, and
/// progeny sizes. Every edge ends up with exactly one red vertex.
struct RootedAnnotation {
    int root = 0;
    std::vector<int> father;            // -1 for root
    std::vector<int> father_edge;       // edge connecting v to its father; -1 for root
    std::vector<int> celibate_of_edge;  // edge index -> its celibate vertex
    std::vector<Color> color;
    std::vector<int> progeny_size;
    std::vector<int> bfs_order;         // root first; fathers precede sons
    std::vector<char> is_celibate;

    bool red(int v) const { return color[static_cast<size_t>(v)] == Color::Red; }
};

/// Roots the tree, designates celibate vertices, colors, and sizes progeny.
/// Default root: smallest-label vertex of degree >= 2 (any vertex for a
/// single-edge tree). Celibate tie-break among an edge's degree-one
/// non-root vertices: smallest label.
inline RootedAnnotation annotate(const Hypertree& t, std::optional<int> root = std::nullopt) {
    const int n = t.order();
    RootedAnnotation ann;
    int best_root = -1;
    for (int v = 0; v < n; ++v) {
        if (t.degree(v) >= 2) {
            best_root = v;
            break;
        }
    }
    const bool degenerate = (best_root == -1);  // single edge (or single vertex)
    if (root) {
        if (!degenerate && t.degree(*root) < 2)
            throw std::invalid_argument("annotate: requested root has degree 1 while a degree->=2 root exists");
        ann.root = *root;
    } else {
        ann.root = degenerate ? 0 : best_root;
    }

    ann.father.assign(static_cast<size_t>(n), -1);
    ann.father_edge.assign(static_cast<size_t>(n), -1);
    ann.bfs_order.reserve(static_cast<size_t>(n));
    std::vector<char> seen_edge(t.edges().size(), 0);
    std::vector<char> seen(static_cast<size_t>(n), 0);
    std::queue<int> q;
    q.push(ann.root);
    seen[static_cast<size_t>(ann.root)] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        ann.bfs_order.push_back(v);
        for (int e : t.incident(v)) {
            if (seen_edge[static_cast<size_t>(e)]) continue;
            seen_edge[static_cast<size_t>(e)] = 1;
            for (int u : t.edges()[static_cast<size_t>(e)]) {
                if (u == v) continue;
                if (seen[static_cast<size_t>(u)]) throw std::logic_error("annotate: input is not a hypertree");
                seen[static_cast<size_t>(u)] = 1;
                ann.father[static_cast<size_t>(u)] = v;
                ann.father_edge[static_cast<size_t>(u)] = e;
                q.push(u);
            }
        }
    }

    ann.celibate_of_edge.assign(t.edges().size(), -1);
    ann.is_celibate.assign(static_cast<size_t>(n), 0);
    for (size_t e = 0; e < t.edges().size(); ++e) {
        int pick = -1;
        for (int v : t.edges()[e]) {
            if (t.degree(v) == 1 && v != ann.root && (pick == -1 || v < pick)) pick = v;
        }
        if (pick == -1) throw std::invalid_argument("annotate: edge " + std::to_string(e) + " has no degree-one vertex (not a subdivision tree)");
        ann.celibate_of_edge[e] = pick;
        ann.is_celibate[static_cast<size_t>(pick)] = 1;
    }

    ann.color.assign(static_cast<size_t>(n), Color::Blue);
    for (int v : ann.bfs_order) {
        if (ann.is_celibate[static_cast<size_t>(v)]) {
            ann.color[static_cast<size_t>(v)] = Color::Blue;
        } else if (v == ann.root) {
            ann.color[static_cast<size_t>(v)] = Color::Red;
        } else {
            const Color f = ann.color[static_cast<size_t>(ann.father[static_cast<size_t>(v)])];
            ann.color[static_cast<size_t>(v)] = (f == Color::Red) ? Color::Blue : Color::Red;
        }
    }

    ann.progeny_size.assign(static_cast<size_t>(n), 1);
    for (auto it = ann.bfs_order.rbegin(); it != ann.bfs_order.rend(); ++it) {
        int f = ann.father[static_cast<size_t>(*it)];
        if (f >= 0) ann.progeny_size[static_cast<size_t>(f)] += ann.progeny_size[static_cast<size_t>(*it)];
    }
    return ann;
}

/// A sub-hypertree (or single vertex) carrying original labels.
struct Fragment {
    std::vector<int> vertices;  // sorted
    std::vector<Triple> edges;

    static Fragment single(int v) { return Fragment{{v}, {}}; }

    static Fragment whole(const Hypertree& t) {
        Fragment f;
        f.vertices.resize(static_cast<size_t>(t.order()));
        for (int v = 0; v < t.order(); ++v) f.vertices[static_cast<size_t>(v)] = v;
        f.edges = t.edges();
        return f;
    }

    bool operator==(const Fragment&) const = default;
};

}  // namespace stsembed
