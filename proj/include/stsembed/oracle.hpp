#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "stsembed/hypertree.hpp"
#include "stsembed/steiner.hpp"

namespace stsembed {

struct SearchBudget {
    std::uint64_t node_limit = 50'000'000;
    double time_limit_seconds = 60.0;
};

enum class BruteStatus { Found, None, BudgetExceeded };

struct BruteResult {
    BruteStatus status = BruteStatus::None;
    std::vector<int> vertex_map;  // guest vertex -> host vertex, when Found
    std::uint64_t nodes = 0;
};

namespace detail {

struct EdgeStep {
    int attach;  // guest vertex already mapped
    int x, y;    // the two new guest vertices
    int edge;
};

// BFS edge order from the root: every later edge meets the mapped part in
// exactly one vertex, so candidates are just the host edges through that
// vertex's image.
inline std::vector<EdgeStep> edge_order(const Hypertree& t, int root) {
    std::vector<EdgeStep> steps;
    std::vector<char> vseen(static_cast<size_t>(t.order()), 0), eseen(t.edges().size(), 0);
    std::vector<int> queue{root};
    vseen[static_cast<size_t>(root)] = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        const int v = queue[qi];
        for (int e : t.incident(v)) {
            if (eseen[static_cast<size_t>(e)]) continue;
            eseen[static_cast<size_t>(e)] = 1;
            EdgeStep st;
            st.attach = v;
            st.edge = e;
            st.x = st.y = -1;
            for (int u : t.edges()[static_cast<size_t>(e)]) {
                if (u == v) continue;
                (st.x == -1 ? st.x : st.y) = u;
                vseen[static_cast<size_t>(u)] = 1;
                queue.push_back(u);
            }
            steps.push_back(st);
        }
    }
    return steps;
}

}  // namespace detail

/// Exhaustive backtracking embedder; the ground truth for small instances.
/// Tries every image for the root and matches edges in BFS order, enumerating
/// host edges through the attach vertex in ascending index order. NONE is
/// returned only after the whole space is exhausted.
inline BruteResult brute_embed(const Hypertree& t, const SteinerTripleSystem& host, SearchBudget budget = {}) {
    BruteResult res;
    const int n = t.order();
    const int m = host.order();
    if (n > m) {
        res.status = BruteStatus::None;
        return res;
    }

    int root = 0;
    for (int v = 0; v < n; ++v) {
        if (t.degree(v) >= 2) {
            root = v;
            break;
        }
    }
    const auto steps = detail::edge_order(t, root);

    std::vector<int> map(static_cast<size_t>(n), -1);
    std::vector<char> used(static_cast<size_t>(m), 0);
    const auto t0 = std::chrono::steady_clock::now();
    bool out_of_budget = false;

    auto budget_ok = [&]() {
        if (res.nodes > budget.node_limit) return false;
        if ((res.nodes & 0xfff) == 0) {
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (secs > budget.time_limit_seconds) return false;
        }
        return true;
    };

    auto match = [&](auto&& self, size_t si) -> bool {
        if (si == steps.size()) return true;
        const auto& st = steps[si];
        const int a = map[static_cast<size_t>(st.attach)];
        for (int he : host.incident(a)) {
            const Triple& ht = host.triples()[static_cast<size_t>(he)];
            int p = -1, q = -1;
            for (int u : ht) {
                if (u == a) continue;
                (p == -1 ? p : q) = u;
            }
            for (int flip = 0; flip < 2; ++flip) {
                const int ix = flip ? q : p;
                const int iy = flip ? p : q;
                ++res.nodes;
                if (!budget_ok()) {
                    out_of_budget = true;
                    return false;
                }
                if (used[static_cast<size_t>(ix)] || used[static_cast<size_t>(iy)]) continue;
                map[static_cast<size_t>(st.x)] = ix;
                map[static_cast<size_t>(st.y)] = iy;
                used[static_cast<size_t>(ix)] = used[static_cast<size_t>(iy)] = 1;
                if (self(self, si + 1)) return true;
                used[static_cast<size_t>(ix)] = used[static_cast<size_t>(iy)] = 0;
                map[static_cast<size_t>(st.x)] = map[static_cast<size_t>(st.y)] = -1;
                if (out_of_budget) return false;
            }
        }
        return false;
    };

    for (int image = 0; image < m; ++image) {
        map[static_cast<size_t>(root)] = image;
        used[static_cast<size_t>(image)] = 1;
        if (match(match, 0)) {
            res.status = BruteStatus::Found;
            res.vertex_map = map;
            return res;
        }
        used[static_cast<size_t>(image)] = 0;
        map[static_cast<size_t>(root)] = -1;
        if (out_of_budget) {
            res.status = BruteStatus::BudgetExceeded;
            return res;
        }
    }
    res.status = BruteStatus::None;
    return res;
}

/// True iff some vertex bijection maps the edges of a onto the edges of b.
/// Intended for fragments of at most ~9 vertices; the whole permutation
/// space is enumerated (with degree-multiset pre-pruning).
inline bool exhaustive_isomorphic(const Fragment& a, const Fragment& b) {
    if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size()) return false;
    const size_t p = a.vertices.size();

    auto degree_multiset = [](const Fragment& f) {
        std::vector<int> deg;
        for (int v : f.vertices) {
            int d = 0;
            for (const Triple& e : f.edges) d += (e[0] == v) + (e[1] == v) + (e[2] == v);
            deg.push_back(d);
        }
        std::sort(deg.begin(), deg.end());
        return deg;
    };
    if (degree_multiset(a) != degree_multiset(b)) return false;

    std::vector<Triple> b_edges = b.edges;
    for (auto& e : b_edges) e = sorted_triple(e[0], e[1], e[2]);
    std::sort(b_edges.begin(), b_edges.end());

    std::unordered_map<int, int> a_index;
    for (size_t i = 0; i < p; ++i) a_index[a.vertices[i]] = static_cast<int>(i);

    std::vector<int> perm(p);
    for (size_t i = 0; i < p; ++i) perm[i] = static_cast<int>(i);
    do {
        std::vector<Triple> mapped;
        mapped.reserve(a.edges.size());
        bool ok = true;
        for (const Triple& e : a.edges) {
            Triple me = sorted_triple(b.vertices[static_cast<size_t>(perm[static_cast<size_t>(a_index[e[0]])])],
                                      b.vertices[static_cast<size_t>(perm[static_cast<size_t>(a_index[e[1]])])],
                                      b.vertices[static_cast<size_t>(perm[static_cast<size_t>(a_index[e[2]])])]);
            if (!std::binary_search(b_edges.begin(), b_edges.end(), me)) {
                ok = false;
                break;
            }
            mapped.push_back(me);
        }
        if (ok) {
            std::sort(mapped.begin(), mapped.end());
            if (mapped == b_edges) return true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

inline bool exhaustive_isomorphic(const Hypertree& a, const Hypertree& b) {
    return exhaustive_isomorphic(Fragment::whole(a), Fragment::whole(b));
}

}  // namespace stsembed
