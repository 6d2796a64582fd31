// Acceptance suite: nine end-to-end criteria, one pass/fail line each.
// Exact criteria use zero tolerance; statistical ones use the stated
// thresholds. Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "stsembed/decompose.hpp"
#include "stsembed/embedder.hpp"
#include "stsembed/hypertree.hpp"
#include "stsembed/oracle.hpp"
#include "stsembed/reservoir.hpp"
#include "stsembed/rng.hpp"
#include "stsembed/star_finder.hpp"
#include "stsembed/steiner.hpp"
#include "support.hpp"

using namespace stsembed;
using stsembed::testsupport::enumerate_hypertrees;
using stsembed::testsupport::random_relabel;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            pass = false;
            notes.push_back("FAILED: " + what);
        }
    }
    void info(const std::string& what) { notes.push_back(what); }
};

SteinerTripleSystem& host_of_order(int m) {
    static std::map<int, SteinerTripleSystem> cache;
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, SteinerTripleSystem::build(m)).first;
    return it->second;
}

int smallest_admissible_at_least(double lower) {
    int m = static_cast<int>(std::ceil(lower - 1e-9));
    if (m < 3) m = 3;
    while (!admissible_sts_order(m)) ++m;
    return m;
}

// ---- criterion 1 -----------------------------------------------------------

Outcome criterion_sts_correctness() {
    Outcome out;
    for (int m : {3, 7, 9, 13, 15, 19, 21, 25, 27, 31, 33, 37, 39}) {
        const auto sts = SteinerTripleSystem::build(m);
        const auto report = SteinerTripleSystem::validate(sts.triples(), m);
        out.require(report.ok(), "validate(STS(" + std::to_string(m) + "))");
        out.require(sts.triples().size() == static_cast<size_t>(m) * (m - 1) / 6,
                    "triple count of STS(" + std::to_string(m) + ")");
        for (int v = 0; v < m; ++v) {
            if (sts.degree(v) != (m - 1) / 2) {
                out.require(false, "degree census of STS(" + std::to_string(m) + ")");
                break;
            }
        }
    }
    return out;
}

// ---- criterion 2 -----------------------------------------------------------

Outcome criterion_sawing_properties() {
    Outcome out;
    int checked = 0, with_stars = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::uint64_t seed = derive_seed(20002, "sawing", static_cast<std::uint64_t>(trial));
        Rng rng = make_rng(seed);
        const int d = 3 + trial % 3;
        const int k = (trial % 2 == 0) ? 20 : 50;
        const int order = 21 + static_cast<int>(rand_below(rng, 981));  // n up to 2001
        const auto t = Hypertree::subdivide(random_bounded_tree(order, d, rng()));
        const auto ann = annotate(t);
        const auto dec = saw(t, ann, k);
        const auto check = check_decomposition(t, ann, dec, k, d);
        if (!check.ok()) {
            std::string msg = "trial " + std::to_string(trial) + " (n=" + std::to_string(t.order()) +
                              ", d=" + std::to_string(d) + ", k=" + std::to_string(k) + "): violated";
            for (int p : check.violated) msg += " (" + std::to_string(p) + ")";
            out.require(false, msg);
            if (!out.pass && out.notes.size() > 10) break;
        }
        ++checked;
        with_stars += dec.star_count() > 0;
    }
    out.info("checked " + std::to_string(checked) + " decompositions, " + std::to_string(with_stars) +
             " with at least one star");
    return out;
}

// ---- criterion 3 -----------------------------------------------------------

Outcome criterion_star_bound() {
    Outcome out;
    int tuples = 0;
    for (int m : {63, 99, 201}) {
        const auto& sts = host_of_order(m);
        Rng rng = make_rng(derive_seed(30003, "stars", static_cast<std::uint64_t>(m)));
        for (int trial = 0; trial < 170; ++trial) {
            const int c = 1 + trial % 4;
            std::vector<int> anchors;
            while (static_cast<int>(anchors.size()) < c) {
                const int v = static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(m)));
                if (std::find(anchors.begin(), anchors.end(), v) == anchors.end()) anchors.push_back(v);
            }
            const auto fam = find_disjoint_stars(sts, anchors, kAllStars);
            const long long need = guaranteed_star_count(m, static_cast<size_t>(c));
            if (static_cast<long long>(fam.members.size()) < need) {
                out.require(false, "family below bound at m=" + std::to_string(m) + ", c=" + std::to_string(c));
                continue;
            }
            std::set<int> used;
            bool valid = true;
            for (size_t l = 0; l < fam.members.size() && valid; ++l) {
                const auto& mem = fam.members[l];
                for (size_t i = 0; i < anchors.size(); ++i) valid = valid && sts.has_triple(anchors[i], mem.ws[i], mem.center);
                for (int w : fam.w_set(l)) {
                    valid = valid && used.insert(w).second;
                    valid = valid && std::find(anchors.begin(), anchors.end(), w) == anchors.end();
                }
            }
            out.require(valid, "family validity at m=" + std::to_string(m) + ", c=" + std::to_string(c));
            ++tuples;
        }
    }
    out.info("verified " + std::to_string(tuples) + " anchor tuples");
    return out;
}

// ---- criterion 4 -----------------------------------------------------------

Outcome criterion_reservoir_concentration() {
    Outcome out;
    const auto& sts = host_of_order(999);
    for (double eps : {0.1, 0.2}) {
        double size_sum = 0;
        long long degree_samples = 0, degree_within = 0;
        std::vector<int> deg(999);
        for (int seed = 0; seed < 100; ++seed) {
            const auto r = draw_reservoir(sts, eps, derive_seed(40004, "reservoir", static_cast<std::uint64_t>(seed) * 2 + (eps > 0.15)));
            size_sum += static_cast<double>(r.size());

            std::fill(deg.begin(), deg.end(), 0);
            for (const Triple& t : sts.triples()) {
                if (!r.contains(t[0]) && !r.contains(t[1]) && !r.contains(t[2])) {
                    ++deg[static_cast<size_t>(t[0])];
                    ++deg[static_cast<size_t>(t[1])];
                    ++deg[static_cast<size_t>(t[2])];
                }
            }
            const double expected = (1.0 - eps) * (1.0 - eps) * 999.0 / 2.0;
            Rng rng = make_rng(derive_seed(40004, "degree-sample", static_cast<std::uint64_t>(seed)));
            std::vector<int> complement;
            complement.reserve(999 - r.size());
            for (int v = 0; v < 999; ++v)
                if (!r.contains(v)) complement.push_back(v);
            for (int s = 0; s < 100; ++s) {
                const int v = complement[rand_below(rng, complement.size())];
                ++degree_samples;
                degree_within += std::abs(deg[static_cast<size_t>(v)] - expected) / expected <= 0.15;
            }
        }
        const double mean = size_sum / 100.0;
        const double mean_dev = std::abs(mean - eps * 999.0) / (eps * 999.0);
        const double within_frac = static_cast<double>(degree_within) / static_cast<double>(degree_samples);
        std::ostringstream note;
        note << "eps=" << eps << ": mean |R| = " << mean << " (dev " << mean_dev * 100 << "%), degrees within 15%: "
             << within_frac * 100 << "%";
        out.info(note.str());
        out.require(mean_dev <= 0.05, "mean reservoir size within 5% at eps=" + std::to_string(eps));
        out.require(within_frac >= 0.95, "95% of sampled degrees within 15% at eps=" + std::to_string(eps));
    }
    return out;
}

// ---- criterion 5 -----------------------------------------------------------

Outcome criterion_negative_control() {
    Outcome out;
    // Edges {u,v1,w1}, {u,v2,w2}, {w1,x,y}: contains two disjoint edges.
    const Hypertree t(7, {{0, 1, 2}, {0, 3, 4}, {2, 5, 6}});
    out.require(t.is_subdivision_tree(), "counterexample is a subdivision tree");
    std::vector<Triple> fano = {{0, 1, 3}, {1, 2, 4}, {2, 3, 5}, {3, 4, 6}, {4, 5, 0}, {5, 6, 1}, {6, 0, 2}};
    const auto cyclic = SteinerTripleSystem::from_triples(7, fano, true);
    out.require(brute_embed(t, cyclic).status == BruteStatus::None, "NONE against the cyclic Fano plane");
    out.require(brute_embed(t, host_of_order(7)).status == BruteStatus::None, "NONE against the constructed STS(7)");
    return out;
}

// ---- criterion 6 -----------------------------------------------------------

struct CellSpec {
    int n;
    int d;
    double mu;
    double eps;
    int k;
    int trials;
};

Outcome criterion_end_to_end() {
    Outcome out;
    std::vector<CellSpec> cells;
    for (int n : {49, 99, 199, 299, 399}) cells.push_back({n, 3, 0.5, 0.35, n < 99 ? 20 : 50, 50});
    for (int n : {49, 99, 199, 299, 399}) cells.push_back({n, 4, 1.0, 0.40, n < 99 ? 20 : 50, 50});

    int total = 0, successes = 0, cert_failures = 0, contract_failures = 0;
    for (const auto& cell : cells) {
        int cell_success = 0;
        for (int trial = 0; trial < cell.trials; ++trial, ++total) {
            const std::uint64_t seed = derive_seed(60006, "trial", static_cast<std::uint64_t>(total));
            const auto t = Hypertree::subdivide(random_bounded_tree((cell.n + 1) / 2, cell.d, seed));
            const int m = smallest_admissible_at_least((1.0 + cell.mu) * t.order());
            const auto& sts = host_of_order(m);
            PipelineConfig cfg;
            cfg.d = cell.d;
            cfg.mu = cell.mu;
            cfg.epsilon = cell.eps;
            cfg.k = cell.k;
            cfg.seed = derive_seed(60006, "embed", static_cast<std::uint64_t>(total));
            cfg.retry_budget = 40;
            const auto res = embed(t, sts, cfg);
            if (res.status != EmbedStatus::Success) continue;
            ++cell_success;
            ++successes;

            std::string why;
            if (!check_embedding(t, sts, *res.embedding, &why)) {
                ++cert_failures;
                out.require(false, "certificate failed re-verification: " + why);
            }
            // Re-derive the decomposition and reservoir to check the partition
            // contract from outside the pipeline.
            const auto ann = annotate(t);
            const auto dec = saw(t, ann, cfg.k);
            const auto reservoir =
                draw_reservoir(sts, cfg.epsilon, derive_seed(cfg.seed, "reservoir", static_cast<std::uint64_t>(res.retries_used)));
            if (!check_partition_contract(dec, reservoir, *res.embedding, &why)) {
                ++contract_failures;
                out.require(false, "partition contract violated: " + why);
            }
        }
        std::ostringstream note;
        note << "cell n=" << cell.n << " d=" << cell.d << " mu=" << cell.mu << " eps=" << cell.eps << " k=" << cell.k
             << ": success rate " << cell_success << "/" << cell.trials;
        out.info(note.str());
    }
    out.require(total >= 500, ">= 500 trials");
    out.require(successes > 0, "at least one success to audit");
    out.require(cert_failures == 0, "zero certificate re-verification failures");
    out.require(contract_failures == 0, "partition contract holds in 100% of successes");
    out.info("successes: " + std::to_string(successes) + "/" + std::to_string(total));

    // (b) small instances: embed success implies oracle success.
    int small_successes = 0;
    const std::vector<std::pair<int, int>> small_cells = {{7, 13}, {9, 15}, {11, 19}};
    for (int trial = 0; trial < 90; ++trial) {
        const auto [n, m] = small_cells[static_cast<size_t>(trial) % small_cells.size()];
        const std::uint64_t seed = derive_seed(60006, "small", static_cast<std::uint64_t>(trial));
        const auto t = Hypertree::subdivide(random_bounded_tree((n + 1) / 2, 3, seed));
        const auto& sts = host_of_order(m);
        PipelineConfig cfg;
        cfg.d = 3;
        cfg.mu = 0.4;
        cfg.epsilon = 0.3;
        cfg.k = 11;
        cfg.seed = seed;
        cfg.retry_budget = 30;
        const auto res = embed(t, sts, cfg);
        if (res.status != EmbedStatus::Success) continue;
        ++small_successes;
        const auto oracle = brute_embed(t, sts);
        out.require(oracle.status == BruteStatus::Found,
                    "oracle agreement at n=" + std::to_string(n) + ", m=" + std::to_string(m));
    }
    out.require(small_successes > 0, "small-instance successes observed");
    out.info("small-instance successes cross-checked: " + std::to_string(small_successes));
    return out;
}

// ---- criterion 7 -----------------------------------------------------------

Outcome criterion_canonical_oracle_equivalence() {
    Outcome out;
    int classes_total = 0, trees_total = 0;
    for (int n : {1, 3, 5, 7}) {
        const auto all = enumerate_hypertrees(n);
        trees_total += static_cast<int>(all.size());
        std::map<std::string, std::vector<size_t>> classes;
        for (size_t i = 0; i < all.size(); ++i) classes[canonical_key(all[i])].push_back(i);
        classes_total += static_cast<int>(classes.size());
        std::vector<size_t> reps;
        for (const auto& [key, members] : classes) {
            reps.push_back(members.front());
            for (size_t mi : members) {
                if (!exhaustive_isomorphic(all[members.front()], all[mi])) {
                    out.require(false, "equal keys but not isomorphic at n=" + std::to_string(n));
                }
            }
        }
        for (size_t a = 0; a < reps.size(); ++a) {
            for (size_t b = a + 1; b < reps.size(); ++b) {
                if (exhaustive_isomorphic(all[reps[a]], all[reps[b]])) {
                    out.require(false, "distinct keys but isomorphic at n=" + std::to_string(n));
                }
            }
        }
    }
    const auto all7 = enumerate_hypertrees(7);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Fragment& f = all7[mix64(seed) % all7.size()];
        const Fragment g = random_relabel(f, seed);
        const bool keys_equal = canonical_key(f) == canonical_key(g);
        const bool iso = exhaustive_isomorphic(f, g);
        out.require(keys_equal && iso, "relabeled pair " + std::to_string(seed));
    }
    out.info(std::to_string(trees_total) + " labeled hypertrees in " + std::to_string(classes_total) + " classes");
    return out;
}

// ---- criterion 8 -----------------------------------------------------------

Outcome criterion_counting_identity() {
    Outcome out;
    std::vector<Triple> fano = {{0, 1, 3}, {1, 2, 4}, {2, 3, 5}, {3, 4, 6}, {4, 5, 0}, {5, 6, 1}, {6, 0, 2}};
    const auto sts = SteinerTripleSystem::from_triples(7, fano, true);
    std::vector<int> verts{0, 1, 2, 3, 4, 5, 6};
    const auto host = InducedSystem::from_triples(7, verts, sts.triples());

    const LabeledForest triple{3, {Triple{0, 1, 2}}};
    const long long free_count = count_labeled_embeddings(host, triple);
    out.require(free_count == 42, "single triple into Fano = 42 (got " + std::to_string(free_count) + ")");

    for (int x : {0, 3, 6}) {
        const long long pinned = count_labeled_embeddings(host, triple, {{0, x}});
        const long long expected = 2LL * sts.degree(x);  // both labelings of each incident edge
        out.require(pinned == expected, "pinned count at vertex " + std::to_string(x));
        out.require(pinned == 6, "pinned count equals 6");
    }

    const LabeledForest with_isolated{4, {Triple{0, 1, 2}}};
    out.require(count_labeled_embeddings(host, with_isolated) == 42 * 4, "isolated vertex multiplies by remaining hosts");

    // Automorphism identity on small forests.
    const std::vector<LabeledForest> shapes = {
        {3, {Triple{0, 1, 2}}},
        {5, {sorted_triple(0, 1, 2), sorted_triple(2, 3, 4)}},
        {7, {sorted_triple(0, 1, 2), sorted_triple(0, 3, 4), sorted_triple(0, 5, 6)}},
    };
    for (const auto& forest : shapes) {
        std::vector<int> perm(static_cast<size_t>(forest.order));
        for (int v = 0; v < forest.order; ++v) perm[static_cast<size_t>(v)] = v;
        std::set<Triple> edges(forest.edges.begin(), forest.edges.end());
        long long direct = 0;
        do {
            bool ok = true;
            for (const Triple& e : forest.edges) {
                if (!edges.count(sorted_triple(perm[static_cast<size_t>(e[0])], perm[static_cast<size_t>(e[1])],
                                               perm[static_cast<size_t>(e[2])]))) {
                    ok = false;
                    break;
                }
            }
            direct += ok;
        } while (std::next_permutation(perm.begin(), perm.end()));
        out.require(automorphism_count(forest) == direct,
                    "Aut identity on forest of order " + std::to_string(forest.order));
    }
    return out;
}

// ---- criterion 9 -----------------------------------------------------------

Outcome criterion_forest_bounds() {
    Outcome out;
    // (i) unclipped bounds on synthetic partitions with honest constants.
    Rng rng = make_rng(derive_seed(90009, "synthetic", 0));
    for (int trial = 0; trial < 300; ++trial) {
        const int k = 4 + static_cast<int>(rand_below(rng, 9));  // 4..12
        const int t_classes = 1 + static_cast<int>(rand_below(rng, 30));
        IsoClassPartition part;
        long long weighted = 0;
        for (int i = 0; i < t_classes; ++i) {
            IsoClassPartition::Class cls;
            const int size = 1 + 2 * static_cast<int>(rand_below(rng, static_cast<std::uint64_t>((k - 1) / 2 + 1)));
            cls.representative.vertices.resize(static_cast<size_t>(size));
            cls.l_i = 1 + static_cast<long long>(rand_below(rng, 50));
            part.l += cls.l_i;
            weighted += cls.l_i * size;
            part.classes.push_back(std::move(cls));
        }
        const long long n_lo = weighted;
        const long long n_hi = part.l * (k + 3);
        const long long n = n_lo + static_cast<long long>(rand_below(rng, static_cast<std::uint64_t>(n_hi - n_lo + 1)));
        const double mu = 2.1 * static_cast<double>(part.l) / static_cast<double>(n);
        const auto bounds = unclipped_forest_bounds(part, k, n, mu);
        out.require(bounds.within_quadratic, "r <= k(k+4)3^k on synthetic partition " + std::to_string(trial));
        out.require(bounds.within_ratio, "r <= (k 3^k n / l)(1 + mu/2) on synthetic partition " + std::to_string(trial));
        if (!out.pass && out.notes.size() > 6) break;
    }

    // (ii) clipped sample size keeps every class supplied, on real pipeline
    // decompositions and as a pure arithmetic property.
    for (int trial = 0; trial < 100; ++trial) {
        const std::uint64_t seed = derive_seed(90009, "supply", static_cast<std::uint64_t>(trial));
        Rng trng = make_rng(seed);
        const int d = 3 + trial % 2;
        const int k = 2 * d + 1 + static_cast<int>(rand_below(trng, 10));
        const int order = 15 + static_cast<int>(rand_below(trng, 120));
        const auto t = Hypertree::subdivide(random_bounded_tree(order, d, trng()));
        const auto dec = saw(t, annotate(t), k);
        const auto part = partition_classes(dec, k);
        const long long copies = (part.l + part.sample_size - 1) / part.sample_size;
        for (const auto& cls : part.classes) {
            if (copies * cls.lambda_i < cls.l_i) {
                out.require(false, "supply shortfall on trial " + std::to_string(trial));
            }
        }
    }
    Rng arng = make_rng(derive_seed(90009, "arith", 0));
    for (int trial = 0; trial < 2000; ++trial) {
        const long long l = 1 + static_cast<long long>(rand_below(arng, 10000));
        const long long s = 1 + static_cast<long long>(rand_below(arng, static_cast<std::uint64_t>(l)));
        const long long l_i = 1 + static_cast<long long>(rand_below(arng, static_cast<std::uint64_t>(l)));
        const long long lambda = (s * l_i + l - 1) / l;
        const long long copies = (l + s - 1) / s;
        out.require(copies * lambda >= l_i, "ceil arithmetic property");
        if (!out.pass) break;
    }
    return out;
}

}  // namespace

int main() {
    struct Entry {
        int number;
        const char* label;
        Outcome (*fn)();
        double limit_seconds;  // 0 = no stated limit
    };
    const Entry entries[] = {
        {1, "STS correctness (construct + validate, m in {3..39})", criterion_sts_correctness, 1.0},
        {2, "sawing property suite (1000 random trees, d in {3,4,5}, k in {20,50})", criterion_sawing_properties, 60.0},
        {3, "disjoint-star bound (m in {63,99,201}, c in {1..4})", criterion_star_bound, 60.0},
        {4, "reservoir concentration (m=999, eps in {0.1,0.2}, 100 seeds)", criterion_reservoir_concentration, 120.0},
        {5, "negative control: 7-vertex tree with disjoint edges vs STS(7)", criterion_negative_control, 5.0},
        {6, "end-to-end pipeline (certificates, oracle agreement, partition contract)", criterion_end_to_end, 0.0},
        {7, "canonical key equivalence vs exhaustive isomorphism (n <= 7)", criterion_canonical_oracle_equivalence, 30.0},
        {8, "embedding-count identities on the Fano plane", criterion_counting_identity, 5.0},
        {9, "sample-forest size bounds and supply inequality", criterion_forest_bounds, 0.0},
    };

    int failures = 0;
    for (const auto& entry : entries) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out = entry.fn();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (entry.limit_seconds > 0 && secs > entry.limit_seconds) {
            out.pass = false;
            out.notes.push_back("FAILED: exceeded runtime budget of " + std::to_string(entry.limit_seconds) + " s");
        }
        std::printf("[%s] criterion %d: %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", entry.number, entry.label, secs);
        for (const auto& note : out.notes) std::printf("        %s\n", note.c_str());
        failures += !out.pass;
    }
    std::printf("%d/9 acceptance criteria passed\n", 9 - failures);
    return failures;
}
