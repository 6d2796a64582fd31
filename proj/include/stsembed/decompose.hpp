#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stsembed/hypertree.hpp"

namespace stsembed {

/// One removed star: all edges of T through `center`, split into rays
/// {v, w, center} with w the edge's celibate vertex. When the center is not
/// the root, rays[0] is the father ray (v = father of center).
struct SawedStar {
    int center = -1;
    struct Ray {
        int v = -1;
        int w = -1;
        int edge = -1;  // edge index in T

        bool operator==(const Ray&) const = default;
    };
    std::vector<Ray> rays;
    std::optional<int> father_ray_index;  // 0 when present
    int progeny_at_saw = 0;               // |progeny(center)| when sawed

    int degree() const { return static_cast<int>(rays.size()); }

    bool operator==(const SawedStar&) const = default;
};

/// Result of sawing T: stars (the removed edges), the forest of leftover
/// subtrees, and the isolated vertices (star centers and celibate ray ends).
struct Decomposition {
    static constexpr int kIsolated = -1;

    std::vector<SawedStar> stars;
    std::vector<Fragment> subtrees;
    std::vector<int> isolated;
    std::vector<int> vertex_location;  // vertex -> subtree index or kIsolated

    int star_count() const { return static_cast<int>(stars.size()); }
    int subtree_count() const { return static_cast<int>(subtrees.size()); }

    bool operator==(const Decomposition&) const = default;
};

namespace detail {

inline void require(bool cond, const char* what) {
    if (!cond) throw std::logic_error(std::string("saw: internal invariant failed: ") + what);
}

}  // namespace detail

/// Iteratively saws T around deep red vertices until every leftover subtree
/// has at most k vertices. When n <= k the whole tree is returned as the
/// single subtree and no star is removed. The procedure is guaranteed sound
/// for k >= 2d+1; smaller k is accepted and the internal invariants (red
/// center, progeny lower bound) abort loudly if the regime breaks them.
inline Decomposition saw(const Hypertree& t, const RootedAnnotation& ann, int k) {
    const int n = t.order();
    const int d = std::max(t.max_degree(), 2);
    if (k < 2) throw std::invalid_argument("saw: k must be at least 2");
    if (static_cast<int>(ann.father.size()) != n)
        throw std::invalid_argument("saw: annotation does not match tree");

    Decomposition dec;
    dec.vertex_location.assign(static_cast<size_t>(n), -2);

    std::vector<std::vector<int>> sons(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) {
        if (ann.father[static_cast<size_t>(v)] >= 0) sons[static_cast<size_t>(ann.father[static_cast<size_t>(v)])].push_back(v);
    }
    std::vector<char> alive(static_cast<size_t>(n), 1);
    std::vector<char> edge_alive(t.edges().size(), 1);
    std::vector<int> progeny = ann.progeny_size;
    int remaining = n;

    // Collects v's alive progeny as a Fragment and kills it.
    auto cut_subtree = [&](int v_top) {
        Fragment frag;
        std::vector<int> stack{v_top};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            frag.vertices.push_back(x);
            if (x != v_top) frag.edges.push_back(t.edges()[static_cast<size_t>(ann.father_edge[static_cast<size_t>(x)])]);
            for (int s : sons[static_cast<size_t>(x)])
                if (alive[static_cast<size_t>(s)]) stack.push_back(s);
        }
        std::sort(frag.vertices.begin(), frag.vertices.end());
        // Each subtree edge is seen once per son vertex it contains; dedupe.
        std::sort(frag.edges.begin(), frag.edges.end());
        frag.edges.erase(std::unique(frag.edges.begin(), frag.edges.end()), frag.edges.end());
        const int idx = static_cast<int>(dec.subtrees.size());
        for (int x : frag.vertices) {
            alive[static_cast<size_t>(x)] = 0;
            dec.vertex_location[static_cast<size_t>(x)] = idx;
            if (x != v_top) edge_alive[static_cast<size_t>(ann.father_edge[static_cast<size_t>(x)])] = 0;
        }
        remaining -= static_cast<int>(frag.vertices.size());
        dec.subtrees.push_back(std::move(frag));
    };

    while (remaining > 0) {
        if (progeny[static_cast<size_t>(ann.root)] <= k) {
            cut_subtree(ann.root);
            break;
        }
        // (a) descend the heaviest branch to the last vertex with progeny > k.
        int bx = ann.root;
        int next = -1;
        for (;;) {
            int best = -1;
            for (int s : sons[static_cast<size_t>(bx)]) {
                if (!alive[static_cast<size_t>(s)]) continue;
                if (best == -1 || progeny[static_cast<size_t>(s)] > progeny[static_cast<size_t>(best)] ||
                    (progeny[static_cast<size_t>(s)] == progeny[static_cast<size_t>(best)] && s < best))
                    best = s;
            }
            detail::require(best != -1, "vertex with progeny > k has no alive son");
            if (progeny[static_cast<size_t>(best)] > k) {
                bx = best;
            } else {
                next = best;
                break;
            }
        }
        const int u = ann.red(bx) ? bx : next;
        detail::require(ann.red(u), "saw center is not red");
        if (u != ann.root) {
            const int need = (k - d + d - 2) / (d - 1);  // ceil((k-d)/(d-1))
            detail::require(progeny[static_cast<size_t>(u)] >= need, "saw center has too small a progeny");
        }

        // (b) the star around u takes every edge through u.
        SawedStar star;
        star.center = u;
        star.progeny_at_saw = progeny[static_cast<size_t>(u)];
        const int father_edge = (u == ann.root) ? -1 : ann.father_edge[static_cast<size_t>(u)];
        for (int e : t.incident(u)) {
            detail::require(edge_alive[static_cast<size_t>(e)], "star edge already removed");
            const Triple& tri = t.edges()[static_cast<size_t>(e)];
            SawedStar::Ray ray;
            ray.edge = e;
            ray.w = ann.celibate_of_edge[static_cast<size_t>(e)];
            for (int x : tri)
                if (x != u && x != ray.w) ray.v = x;
            detail::require(ray.v >= 0 && ray.w != u, "malformed star ray");
            if (e == father_edge) {
                star.rays.insert(star.rays.begin(), ray);
            } else {
                star.rays.push_back(ray);
            }
            edge_alive[static_cast<size_t>(e)] = 0;
        }
        if (u != ann.root) star.father_ray_index = 0;

        // (c) the center and the celibate ray ends become isolated.
        alive[static_cast<size_t>(u)] = 0;
        dec.vertex_location[static_cast<size_t>(u)] = Decomposition::kIsolated;
        dec.isolated.push_back(u);
        --remaining;
        for (const auto& ray : star.rays) {
            alive[static_cast<size_t>(ray.w)] = 0;
            dec.vertex_location[static_cast<size_t>(ray.w)] = Decomposition::kIsolated;
            dec.isolated.push_back(ray.w);
            --remaining;
        }

        // (d) every non-father ray drops its v-subtree into the forest.
        const size_t first_ray = star.father_ray_index ? 1 : 0;
        for (size_t i = first_ray; i < star.rays.size(); ++i) {
            cut_subtree(star.rays[i].v);
        }

        // (e) what remains is the component containing the root; fix up the
        // progeny counts of the sawed vertex's ancestors.
        if (u != ann.root) {
            const int removed = star.progeny_at_saw + 1;  // progeny(u) plus the father-ray celibate
            for (int x = ann.father[static_cast<size_t>(u)]; x != -1; x = ann.father[static_cast<size_t>(x)])
                progeny[static_cast<size_t>(x)] -= removed;
        } else {
            detail::require(remaining == 0, "sawing the root left vertices behind");
        }
        dec.stars.push_back(std::move(star));
    }

    detail::require(remaining == 0, "vertices left unassigned");
    for (int v = 0; v < n; ++v) detail::require(dec.vertex_location[static_cast<size_t>(v)] != -2, "unassigned vertex");
    return dec;
}

struct DecompositionCheck {
    std::vector<int> violated;  // property numbers 1..6; 0 flags structural defects
    std::vector<std::string> messages;

    bool ok() const { return violated.empty(); }

    void fail(int property, std::string msg) {
        if (std::find(violated.begin(), violated.end(), property) == violated.end()) violated.push_back(property);
        messages.push_back(std::move(msg));
    }
};

/// Machine-checks the six sawing properties plus exactness of the edge and
/// vertex partitions. Property (3) is waived when no star was removed (the
/// whole tree fit in one subtree).
inline DecompositionCheck check_decomposition(const Hypertree& t, const RootedAnnotation& ann,
                                              const Decomposition& dec, int k, int d) {
    DecompositionCheck res;
    const int n = t.order();
    const long long e = dec.star_count();
    const long long l = dec.subtree_count();
    const long long iso = static_cast<long long>(dec.isolated.size());

    // Structural: edge partition.
    std::vector<int> edge_owner(t.edges().size(), -2);
    for (size_t j = 0; j < dec.stars.size(); ++j) {
        for (const auto& ray : dec.stars[j].rays) {
            if (ray.edge < 0 || ray.edge >= static_cast<int>(t.edges().size()) || edge_owner[static_cast<size_t>(ray.edge)] != -2) {
                res.fail(0, "star ray edge missing or claimed twice");
                continue;
            }
            edge_owner[static_cast<size_t>(ray.edge)] = static_cast<int>(j);
            const Triple want = t.edges()[static_cast<size_t>(ray.edge)];
            const Triple got = sorted_triple(dec.stars[j].center, ray.v, ray.w);
            if (want != got) res.fail(0, "star ray does not match its tree edge");
            if (ray.w != ann.celibate_of_edge[static_cast<size_t>(ray.edge)]) res.fail(0, "ray w is not the edge's celibate vertex");
        }
        const auto& st = dec.stars[j];
        if (!ann.red(st.center)) res.fail(0, "star center is not red");
        if (st.degree() != t.degree(st.center)) res.fail(0, "star does not use every edge of its center");
        if (st.father_ray_index) {
            if (*st.father_ray_index != 0 || st.rays.empty() || st.rays[0].v != ann.father[static_cast<size_t>(st.center)])
                res.fail(0, "father ray mislabeled");
        } else if (st.center != ann.root) {
            res.fail(0, "non-root star lacks a father ray");
        }
    }
    std::vector<std::pair<Triple, int>> edge_index;
    edge_index.reserve(t.edges().size());
    for (size_t ei = 0; ei < t.edges().size(); ++ei) edge_index.push_back({t.edges()[ei], static_cast<int>(ei)});
    std::sort(edge_index.begin(), edge_index.end());
    std::vector<char> edge_in_subtree(t.edges().size(), 0);
    for (const Fragment& p : dec.subtrees) {
        for (const Triple& fe : p.edges) {
            const auto it = std::lower_bound(edge_index.begin(), edge_index.end(), std::pair{fe, 0},
                                             [](const auto& a, const auto& b) { return a.first < b.first; });
            if (it == edge_index.end() || it->first != fe) {
                res.fail(0, "subtree edge is not an edge of T");
                continue;
            }
            const size_t ei = static_cast<size_t>(it->second);
            if (edge_owner[ei] != -2 || edge_in_subtree[ei]) res.fail(0, "subtree edge claimed twice");
            edge_in_subtree[ei] = 1;
        }
    }
    for (size_t ei = 0; ei < t.edges().size(); ++ei) {
        if (edge_owner[ei] == -2 && !edge_in_subtree[ei]) res.fail(0, "tree edge not covered by stars or subtrees");
    }

    // Structural: vertex partition.
    std::vector<int> where(static_cast<size_t>(n), -3);
    for (size_t pi = 0; pi < dec.subtrees.size(); ++pi) {
        for (int v : dec.subtrees[pi].vertices) {
            if (v < 0 || v >= n || where[static_cast<size_t>(v)] != -3) {
                res.fail(0, "subtree vertex out of range or repeated");
                continue;
            }
            where[static_cast<size_t>(v)] = static_cast<int>(pi);
        }
    }
    for (int v : dec.isolated) {
        if (v < 0 || v >= n || where[static_cast<size_t>(v)] != -3) {
            res.fail(0, "isolated vertex out of range or repeated");
            continue;
        }
        where[static_cast<size_t>(v)] = Decomposition::kIsolated;
    }
    for (int v = 0; v < n; ++v) {
        if (where[static_cast<size_t>(v)] == -3) res.fail(0, "vertex " + std::to_string(v) + " unassigned");
        if (where[static_cast<size_t>(v)] != dec.vertex_location[static_cast<size_t>(v)]) res.fail(0, "vertex_location inconsistent");
    }

    // Star centers are pairwise non-adjacent: no tree edge holds two centers.
    std::vector<char> is_center(static_cast<size_t>(n), 0);
    for (const auto& st : dec.stars) is_center[static_cast<size_t>(st.center)] = 1;
    for (const Triple& te : t.edges()) {
        int centers = is_center[static_cast<size_t>(te[0])] + is_center[static_cast<size_t>(te[1])] + is_center[static_cast<size_t>(te[2])];
        if (centers > 1) res.fail(0, "two star centers are adjacent");
    }

    // (1) subtree size cap.
    for (const Fragment& p : dec.subtrees) {
        if (static_cast<int>(p.vertices.size()) > k) {
            res.fail(1, "subtree with " + std::to_string(p.vertices.size()) + " > k vertices");
            break;
        }
    }
    // (2) |I| <= (2 d^2 / k) n, compared exactly over the integers.
    if (iso * k > 2LL * d * d * n) res.fail(2, "|I| exceeds (2d^2/k) n");
    // (3) |I| >= |P|, waived in the starless degenerate case.
    if (e > 0 && iso < l) res.fail(3, "|I| < |P|");
    // (4) |P| >= |E|.
    if (l < e) res.fail(4, "fewer subtrees than stars");
    // (5) |P| >= n/(k+3).
    if (l * (k + 3) < n) res.fail(5, "|P| < n/(k+3)");
    // (6) I is exactly the star centers and ray celibates, and no ray v is isolated.
    {
        std::vector<char> in_i(static_cast<size_t>(n), 0);
        for (int v : dec.isolated) in_i[static_cast<size_t>(v)] = 1;
        std::vector<char> expected(static_cast<size_t>(n), 0);
        long long expected_count = 0;
        for (const auto& st : dec.stars) {
            if (!expected[static_cast<size_t>(st.center)]) ++expected_count;
            expected[static_cast<size_t>(st.center)] = 1;
            for (const auto& ray : st.rays) {
                if (!expected[static_cast<size_t>(ray.w)]) ++expected_count;
                expected[static_cast<size_t>(ray.w)] = 1;
                if (in_i[static_cast<size_t>(ray.v)]) res.fail(6, "ray vertex v in I");
            }
        }
        if (expected_count != iso) res.fail(6, "I differs from star centers plus celibates");
        for (int v = 0; v < n && expected_count == iso; ++v) {
            if (in_i[static_cast<size_t>(v)] != expected[static_cast<size_t>(v)]) {
                res.fail(6, "I differs from star centers plus celibates");
                break;
            }
        }
    }
    return res;
}

/// Where each star re-attaches: for every ray, the subtree holding its
/// v-vertex. Father rays attach too (their v lands in a later subtree).
struct ReassemblyPlan {
    struct Attachment {
        int ray_index;
        int subtree;
        int vertex;
    };
    std::vector<std::vector<Attachment>> per_star;  // saw order
};

inline ReassemblyPlan reassembly_plan(const Decomposition& dec) {
    ReassemblyPlan plan;
    plan.per_star.resize(dec.stars.size());
    for (size_t j = 0; j < dec.stars.size(); ++j) {
        const auto& st = dec.stars[j];
        for (size_t i = 0; i < st.rays.size(); ++i) {
            const int v = st.rays[i].v;
            const int loc = dec.vertex_location[static_cast<size_t>(v)];
            if (loc < 0)
                throw std::logic_error("reassembly_plan: dangling star attachment: vertex " + std::to_string(v) +
                                       " is not in any subtree");
            plan.per_star[j].push_back({static_cast<int>(i), loc, v});
        }
    }
    return plan;
}

}  // namespace stsembed
