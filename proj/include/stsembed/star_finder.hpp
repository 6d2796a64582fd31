#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "stsembed/steiner.hpp"

namespace stsembed {

/// Pairwise-disjoint stars through a fixed anchor tuple: member l consists of
/// the edges {anchor_i, w_i, center} for all i, and the sets
/// W_l = {w_1..w_c, center} of distinct members never share a vertex.
struct StarFamily {
    std::vector<int> anchors;
    struct Member {
        int center;
        std::vector<int> ws;  // aligned with anchors
    };
    std::vector<Member> members;

    std::vector<int> w_set(size_t l) const {
        std::vector<int> out = members[l].ws;
        out.push_back(members[l].center);
        return out;
    }
};

inline constexpr size_t kAllStars = std::numeric_limits<size_t>::max();

/// Greedy inductive construction: scan candidate centers in ascending label
/// order, skipping anchors, vertices whose star would reuse an anchor pair,
/// all vertices of earlier W-sets, and all earlier cross-edge third vertices
/// (the vertices that would force a w collision). With want = kAllStars the
/// scan runs until no candidate remains, which yields at least
/// floor((m-1)/(c^2+1)) members.
inline StarFamily find_disjoint_stars(const SteinerTripleSystem& sts, std::vector<int> anchors,
                                      size_t want = kAllStars) {
    const int m = sts.order();
    const size_t c = anchors.size();
    if (c == 0) throw std::invalid_argument("find_disjoint_stars: at least one anchor required");
    for (size_t i = 0; i < c; ++i) {
        if (anchors[i] < 0 || anchors[i] >= m) throw std::invalid_argument("find_disjoint_stars: anchor out of range");
        for (size_t j = i + 1; j < c; ++j) {
            if (anchors[i] == anchors[j]) throw std::invalid_argument("find_disjoint_stars: anchors not distinct");
        }
    }

    StarFamily fam;
    fam.anchors = anchors;
    if (want == 0) return fam;

    std::vector<char> excluded(static_cast<size_t>(m), 0);
    for (int a : anchors) excluded[static_cast<size_t>(a)] = 1;
    for (size_t i = 0; i < c; ++i) {
        for (size_t j = i + 1; j < c; ++j) {
            excluded[static_cast<size_t>(sts.third_vertex(anchors[i], anchors[j]))] = 1;
        }
    }

    std::vector<int> ws(c);
    for (int u = 0; u < m; ++u) {
        if (excluded[static_cast<size_t>(u)]) continue;
        for (size_t i = 0; i < c; ++i) ws[i] = sts.third_vertex(anchors[i], u);
        // Remove this W-set and every vertex that completes an edge with one
        // anchor and another member's w; both classes would break disjointness
        // if later picked as a center.
        excluded[static_cast<size_t>(u)] = 1;
        for (size_t i = 0; i < c; ++i) excluded[static_cast<size_t>(ws[i])] = 1;
        for (size_t i = 0; i < c; ++i) {
            for (size_t j = 0; j < c; ++j) {
                if (i == j) continue;
                excluded[static_cast<size_t>(sts.third_vertex(anchors[i], ws[j]))] = 1;
            }
        }
        fam.members.push_back({u, ws});
        if (fam.members.size() == want) break;
    }
    return fam;
}

/// Lower bound the greedy search is contracted to reach with want = kAllStars:
/// each accepted center consumes at most c^2+1 candidates.
inline long long guaranteed_star_count(int m, size_t c) {
    return static_cast<long long>((m - 1) / (static_cast<long long>(c) * static_cast<long long>(c) + 1));
}

}  // namespace stsembed
