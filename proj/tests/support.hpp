#pragma once

// Shared ground-truth helpers for the test suites: exhaustive enumeration of
// small labeled hypertrees and random relabelings. Kept independent of the
// library's canonical-form machinery so the two can argue with each other.

#include <algorithm>
#include <vector>

#include "stsembed/hypertree.hpp"
#include "stsembed/rng.hpp"

namespace stsembed::testsupport {

// Every valid labeled hypertree on exactly n vertices (n odd, or n == 1 for
// the single-vertex fragment), as fragments over vertices 0..n-1.
inline std::vector<Fragment> enumerate_hypertrees(int n) {
    std::vector<Fragment> out;
    if (n == 1) {
        out.push_back(Fragment::single(0));
        return out;
    }
    if (n < 3 || n % 2 == 0) return out;
    std::vector<Triple> all;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) all.push_back({a, b, c});
    const int need = (n - 1) / 2;
    std::vector<int> pick(static_cast<size_t>(need));
    std::vector<Triple> edges(static_cast<size_t>(need));
    auto rec = [&](auto&& self, int from, int depth) -> void {
        if (depth == need) {
            if (!Hypertree::check(edges, n).has_value()) {
                Fragment f;
                f.vertices.resize(static_cast<size_t>(n));
                for (int v = 0; v < n; ++v) f.vertices[static_cast<size_t>(v)] = v;
                f.edges = edges;
                out.push_back(std::move(f));
            }
            return;
        }
        for (int i = from; i < static_cast<int>(all.size()); ++i) {
            edges[static_cast<size_t>(depth)] = all[static_cast<size_t>(i)];
            self(self, i + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
    return out;
}

// Relabels a fragment by a seed-determined permutation of its own vertices.
inline Fragment random_relabel(const Fragment& f, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    std::vector<int> perm = f.vertices;
    for (size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rand_below(rng, i)]);
    std::vector<int> dest(f.vertices.size());
    for (size_t i = 0; i < f.vertices.size(); ++i) dest[i] = perm[i];
    Fragment g;
    g.vertices = f.vertices;
    auto mapv = [&](int v) {
        const auto it = std::lower_bound(f.vertices.begin(), f.vertices.end(), v);
        return dest[static_cast<size_t>(it - f.vertices.begin())];
    };
    for (const Triple& e : f.edges) g.edges.push_back(sorted_triple(mapv(e[0]), mapv(e[1]), mapv(e[2])));
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

}  // namespace stsembed::testsupport
