#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "stsembed/rng.hpp"
#include "stsembed/star_finder.hpp"
#include "stsembed/steiner.hpp"

namespace stsembed {

/// Random vertex subset R of a host system plus the induced complement view
/// (all triples avoiding R). Membership is decided per vertex by comparing a
/// seed-and-label-keyed uniform draw against epsilon, so the same seed gives
/// nested reservoirs as epsilon grows.
struct Reservoir {
    std::vector<int> members;  // sorted
    std::vector<char> in_reservoir;
    double epsilon = 0.0;
    std::uint64_t seed = 0;

    bool contains(int v) const { return in_reservoir[static_cast<size_t>(v)] != 0; }
    size_t size() const { return members.size(); }
};

inline Reservoir draw_reservoir(const SteinerTripleSystem& sts, double epsilon, std::uint64_t seed) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("draw_reservoir: epsilon must lie in [0,1]");
    Reservoir r;
    r.epsilon = epsilon;
    r.seed = seed;
    r.in_reservoir.assign(static_cast<size_t>(sts.order()), 0);
    for (int v = 0; v < sts.order(); ++v) {
        if (unit_at(seed, static_cast<std::uint64_t>(v)) < epsilon) {
            r.in_reservoir[static_cast<size_t>(v)] = 1;
            r.members.push_back(v);
        }
    }
    return r;
}

/// Induced subsystem on V(S) \ R: exactly the triples avoiding the reservoir.
inline InducedSystem complement_view(const SteinerTripleSystem& sts, const Reservoir& r) {
    std::vector<int> verts;
    verts.reserve(static_cast<size_t>(sts.order()) - r.size());
    for (int v = 0; v < sts.order(); ++v)
        if (!r.contains(v)) verts.push_back(v);
    std::vector<Triple> ts;
    for (const Triple& t : sts.triples()) {
        if (!r.contains(t[0]) && !r.contains(t[1]) && !r.contains(t[2])) ts.push_back(t);
    }
    return InducedSystem::from_triples(sts.order(), std::move(verts), std::move(ts));
}

/// Empirical audit of the four reservoir properties. Size and degree checks
/// are relative deviations from the expected values; the star-coverage check
/// samples anchor tuples and counts whole W-sets inside R against the
/// expectation-scale threshold r(c) = eps^(c+1) m / (2 (c^2+1)).
struct ReservoirAudit {
    double size_dev = 0.0;        // | |R| - eps m | / (eps m)
    double complement_dev = 0.0;  // | |V(S~)| - (1-eps) m | / ((1-eps) m)
    double degree_dev_max = 0.0;  // worst sampled relative deviation from (1-eps)^2 m/2
    double degree_within_15pct = 1.0;  // fraction of sampled vertices within 15%
    struct TupleCoverage {
        std::vector<int> anchors;
        int family_size = 0;
        int sets_in_reservoir = 0;
        double r_c = 0.0;  // asymptotic availability scale for this tuple
        bool below_r_c = false;
    };
    std::vector<TupleCoverage> tuples;
    int tuples_below_r_c = 0;
};

inline ReservoirAudit audit_reservoir(const SteinerTripleSystem& sts, const Reservoir& r, int sample_tuples,
                                      int d, std::uint64_t seed) {
    const int m = sts.order();
    ReservoirAudit audit;
    const double em = r.epsilon * m;
    audit.size_dev = em > 0 ? std::abs(static_cast<double>(r.size()) - em) / em : (r.size() == 0 ? 0.0 : 1.0);
    const double cm = (1.0 - r.epsilon) * m;
    const double comp = static_cast<double>(m - static_cast<int>(r.size()));
    audit.complement_dev = cm > 0 ? std::abs(comp - cm) / cm : (comp == 0 ? 0.0 : 1.0);

    // Degrees in the complement view.
    std::vector<int> deg(static_cast<size_t>(m), 0);
    for (const Triple& t : sts.triples()) {
        if (!r.contains(t[0]) && !r.contains(t[1]) && !r.contains(t[2])) {
            for (int v : t) ++deg[static_cast<size_t>(v)];
        }
    }
    const double expected_deg = (1.0 - r.epsilon) * (1.0 - r.epsilon) * m / 2.0;
    Rng rng = make_rng(derive_seed(seed, "audit"));
    std::vector<int> complement;
    complement.reserve(static_cast<size_t>(m) - r.size());
    for (int v = 0; v < m; ++v)
        if (!r.contains(v)) complement.push_back(v);
    int sampled = 0, within = 0;
    const int degree_samples = static_cast<int>(std::min<size_t>(complement.size(), 500));
    for (int i = 0; i < degree_samples; ++i) {
        const int v = complement[rand_below(rng, complement.size())];
        const double dev = expected_deg > 0
                               ? std::abs(deg[static_cast<size_t>(v)] - expected_deg) / expected_deg
                               : (deg[static_cast<size_t>(v)] == 0 ? 0.0 : 1.0);
        audit.degree_dev_max = std::max(audit.degree_dev_max, dev);
        ++sampled;
        if (dev <= 0.15) ++within;
    }
    audit.degree_within_15pct = sampled > 0 ? static_cast<double>(within) / sampled : 1.0;

    // Star coverage over sampled anchor tuples.
    for (int s = 0; s < sample_tuples; ++s) {
        const int c = 1 + static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(std::max(1, d))));
        std::vector<int> anchors;
        while (static_cast<int>(anchors.size()) < c) {
            const int v = static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(m)));
            if (std::find(anchors.begin(), anchors.end(), v) == anchors.end()) anchors.push_back(v);
        }
        StarFamily fam = find_disjoint_stars(sts, anchors, kAllStars);
        ReservoirAudit::TupleCoverage cov;
        cov.anchors = anchors;
        cov.family_size = static_cast<int>(fam.members.size());
        for (size_t l = 0; l < fam.members.size(); ++l) {
            bool inside = r.contains(fam.members[l].center);
            for (int w : fam.members[l].ws) inside = inside && r.contains(w);
            if (inside) ++cov.sets_in_reservoir;
        }
        cov.r_c = std::pow(r.epsilon, c + 1) * m / (2.0 * (static_cast<double>(c) * c + 1));
        cov.below_r_c = cov.sets_in_reservoir < cov.r_c;
        if (cov.below_r_c) ++audit.tuples_below_r_c;
        audit.tuples.push_back(std::move(cov));
    }
    return audit;
}

}  // namespace stsembed
