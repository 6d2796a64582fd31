// Command-line front end: generators, decomposer, star search, reservoir
// audits, the embedding pipeline, the brute-force oracle, and the experiment
// runner. Every subcommand prints JSON on stdout (JSON-lines for experiment)
// and a manifest sufficient to reproduce the run byte-for-byte; diagnostics
// go to stderr. Exit codes: 0 success, 1 domain failure, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "stsembed/decompose.hpp"
#include "stsembed/embedder.hpp"
#include "stsembed/hypertree.hpp"
#include "stsembed/oracle.hpp"
#include "stsembed/reservoir.hpp"
#include "stsembed/rng.hpp"
#include "stsembed/star_finder.hpp"
#include "stsembed/steiner.hpp"

using json = nlohmann::json;
using namespace stsembed;

namespace {

constexpr const char* kVersion = "1.0.0";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << text;
}

std::string fnv64_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json make_manifest(const std::string& command, const json& config, std::uint64_t seed,
                   const std::vector<std::pair<std::string, std::string>>& input_files) {
    json digests = json::object();
    for (const auto& [path, content] : input_files) digests[path] = fnv64_hex(content);
    return json{{"command", command},
                {"config", config},
                {"seeds", json{{"global", seed}}},
                {"input_digests", digests},
                {"artifact_version", kVersion}};
}

json triple_json(const Triple& t) { return json::array({t[0], t[1], t[2]}); }

json triples_json(const std::vector<Triple>& ts) {
    json arr = json::array();
    for (const Triple& t : ts) arr.push_back(triple_json(t));
    return arr;
}

int smallest_admissible_order(double lower) {
    int m = static_cast<int>(std::ceil(lower - 1e-9));
    if (m < 3) m = 3;
    while (!admissible_sts_order(m)) ++m;
    return m;
}

SteinerTripleSystem load_sts(const std::string& path, bool allow_partial, std::vector<std::pair<std::string, std::string>>& inputs) {
    const std::string text = read_file(path);
    inputs.emplace_back(path, text);
    return SteinerTripleSystem::parse_text(text, allow_partial);
}

Hypertree load_tree(const std::string& path, std::vector<std::pair<std::string, std::string>>& inputs) {
    const std::string text = read_file(path);
    inputs.emplace_back(path, text);
    return Hypertree::parse_text(text);
}

const char* embed_status_name(EmbedStatus s) {
    switch (s) {
        case EmbedStatus::Success: return "success";
        case EmbedStatus::PreconditionFailed: return "precondition_failed";
        case EmbedStatus::RetriesExhausted: return "retries_exhausted";
    }
    return "unknown";
}

const char* brute_status_name(BruteStatus s) {
    switch (s) {
        case BruteStatus::Found: return "found";
        case BruteStatus::None: return "none";
        case BruteStatus::BudgetExceeded: return "budget_exceeded";
    }
    return "unknown";
}

json stats_json(const StageStats& st) {
    return json{{"n", st.n},
                {"m", st.m},
                {"isolated", st.isolated},
                {"subtrees", st.subtrees},
                {"stars", st.stars},
                {"classes", st.classes},
                {"sample_size", st.sample_size},
                {"forest_r", st.forest_r},
                {"forest_f", st.forest_f},
                {"forest_lambda", st.forest_lambda},
                {"copies_needed", st.copies_needed},
                {"attempts", st.attempts},
                {"attempt_failures", st.attempt_failures},
                {"unclipped_bounds_checked", st.unclipped_bounds_checked},
                {"unclipped_within_quadratic", st.unclipped_within_quadratic},
                {"unclipped_within_ratio", st.unclipped_within_ratio}};
}

json embedding_json(const Embedding& emb) {
    json cert = json::array();
    for (const auto& wit : emb.certificate) cert.push_back(json{{"edge", wit.edge}, {"host_triple", triple_json(wit.host_triple)}});
    return json{{"vertex_map", emb.vertex_map}, {"certificate", cert}};
}

// ---- gen-sts ----

struct GenStsArgs {
    int m = 0;
    std::string construction = "auto";
    std::string out;
};

int run_gen_sts(const GenStsArgs& a) {
    if (!admissible_sts_order(a.m)) throw std::invalid_argument("m = 1 or 3 (mod 6) required, got m=" + std::to_string(a.m));
    SteinerTripleSystem sts;
    if (a.construction == "bose") {
        sts = SteinerTripleSystem::build_bose(a.m);
    } else if (a.construction == "skolem") {
        sts = SteinerTripleSystem::build_skolem(a.m);
    } else {
        sts = SteinerTripleSystem::build(a.m);
    }
    const auto report = SteinerTripleSystem::validate(sts.triples(), a.m);
    json out{{"type", "gen-sts"},
             {"manifest", make_manifest("gen-sts", json{{"m", a.m}, {"construction", a.construction}, {"out", a.out}}, 0, {})},
             {"m", a.m},
             {"triples", static_cast<long long>(sts.triples().size())},
             {"valid", report.ok()}};
    if (a.out.empty()) {
        out["text"] = sts.to_text();
    } else {
        write_file(a.out, sts.to_text());
        out["out"] = a.out;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

// ---- gen-tree ----

struct GenTreeArgs {
    int order = 0;
    int d = 3;
    std::uint64_t seed = 0;
    std::string format = "ht";
    std::string out;
};

int run_gen_tree(const GenTreeArgs& a) {
    const GraphTree g = random_bounded_tree(a.order, a.d, a.seed);
    std::string text;
    json out{{"type", "gen-tree"},
             {"manifest", make_manifest("gen-tree",
                                        json{{"order", a.order}, {"d", a.d}, {"seed", a.seed}, {"format", a.format}, {"out", a.out}},
                                        a.seed, {})},
             {"order", a.order},
             {"d", a.d}};
    if (a.format == "gt") {
        text = g.to_text();
    } else if (a.format == "ht") {
        const Hypertree t = Hypertree::subdivide(g);
        text = t.to_text();
        out["n"] = t.order();
    } else {
        throw std::invalid_argument("format must be ht or gt");
    }
    if (a.out.empty()) {
        out["text"] = text;
    } else {
        write_file(a.out, text);
        out["out"] = a.out;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

// ---- decompose ----

struct DecomposeArgs {
    std::string tree;
    int k = 20;
};

int run_decompose(const DecomposeArgs& a) {
    std::vector<std::pair<std::string, std::string>> inputs;
    const Hypertree t = load_tree(a.tree, inputs);
    const RootedAnnotation ann = annotate(t);
    const Decomposition dec = saw(t, ann, a.k);
    const int d = std::max(t.max_degree(), 2);
    const auto check = check_decomposition(t, ann, dec, a.k, d);
    const auto plan = reassembly_plan(dec);

    json stars = json::array();
    for (size_t j = 0; j < dec.stars.size(); ++j) {
        const auto& st = dec.stars[j];
        json rays = json::array();
        for (const auto& ray : st.rays) rays.push_back(json{{"v", ray.v}, {"w", ray.w}, {"edge", ray.edge}});
        json attachments = json::array();
        for (const auto& att : plan.per_star[j])
            attachments.push_back(json{{"ray", att.ray_index}, {"subtree", att.subtree}, {"vertex", att.vertex}});
        stars.push_back(json{{"center", st.center},
                             {"rays", rays},
                             {"father_ray_index", st.father_ray_index ? json(*st.father_ray_index) : json()},
                             {"attachments", attachments}});
    }
    json subtrees = json::array();
    for (const auto& p : dec.subtrees) subtrees.push_back(json{{"vertices", p.vertices}, {"edges", triples_json(p.edges)}});

    json out{{"type", "decompose"},
             {"manifest", make_manifest("decompose", json{{"tree", a.tree}, {"k", a.k}}, 0, inputs)},
             {"n", t.order()},
             {"k", a.k},
             {"d", d},
             {"stars", stars},
             {"subtrees", subtrees},
             {"isolated", dec.isolated},
             {"check", json{{"ok", check.ok()}, {"violated", check.violated}, {"messages", check.messages}}}};
    std::cout << out.dump(2) << "\n";
    return check.ok() ? 0 : 1;
}

// ---- stars ----

struct StarsArgs {
    std::string sts;
    std::vector<int> anchors;
    std::string want = "all";
};

int run_stars(const StarsArgs& a) {
    std::vector<std::pair<std::string, std::string>> inputs;
    const SteinerTripleSystem sts = load_sts(a.sts, false, inputs);
    size_t want = kAllStars;
    if (a.want != "all") want = static_cast<size_t>(std::stoull(a.want));
    const StarFamily fam = find_disjoint_stars(sts, a.anchors, want);
    json members = json::array();
    for (const auto& mem : fam.members) members.push_back(json{{"center", mem.center}, {"ws", mem.ws}});
    json out{{"type", "stars"},
             {"manifest", make_manifest("stars", json{{"sts", a.sts}, {"anchors", a.anchors}, {"want", a.want}}, 0, inputs)},
             {"anchors", fam.anchors},
             {"members", members},
             {"count", static_cast<long long>(fam.members.size())},
             {"guaranteed", guaranteed_star_count(sts.order(), fam.anchors.size())}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

// ---- reservoir ----

struct ReservoirArgs {
    int m = 0;
    std::string sts;
    double eps = 0.1;
    std::uint64_t seed = 0;
    int tuples = 50;
    int d = 4;
};

int run_reservoir(const ReservoirArgs& a) {
    std::vector<std::pair<std::string, std::string>> inputs;
    SteinerTripleSystem sts;
    if (!a.sts.empty()) {
        sts = load_sts(a.sts, false, inputs);
    } else if (a.m > 0) {
        if (!admissible_sts_order(a.m)) throw std::invalid_argument("m = 1 or 3 (mod 6) required, got m=" + std::to_string(a.m));
        sts = SteinerTripleSystem::build(a.m);
    } else {
        throw std::invalid_argument("reservoir: provide --m or --sts");
    }
    const Reservoir r = draw_reservoir(sts, a.eps, a.seed);
    const ReservoirAudit audit = audit_reservoir(sts, r, a.tuples, a.d, a.seed);
    json tuples = json::array();
    for (const auto& tup : audit.tuples) {
        tuples.push_back(json{{"anchors", tup.anchors},
                              {"family_size", tup.family_size},
                              {"sets_in_reservoir", tup.sets_in_reservoir},
                              {"r_c", tup.r_c},
                              {"below_r_c", tup.below_r_c}});
    }
    json out{{"type", "reservoir"},
             {"manifest", make_manifest("reservoir",
                                        json{{"m", sts.order()}, {"sts", a.sts}, {"eps", a.eps}, {"seed", a.seed},
                                             {"tuples", a.tuples}, {"d", a.d}},
                                        a.seed, inputs)},
             {"m", sts.order()},
             {"eps", a.eps},
             {"size", static_cast<long long>(r.size())},
             {"members", r.members},
             {"audit", json{{"size_dev", audit.size_dev},
                            {"complement_dev", audit.complement_dev},
                            {"degree_dev_max", audit.degree_dev_max},
                            {"degree_within_15pct", audit.degree_within_15pct},
                            {"tuples_below_r_c", audit.tuples_below_r_c},
                            {"tuples", tuples}}}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

// ---- embed ----

struct EmbedArgs {
    std::string tree;
    std::string sts;
    double mu = 0.5;
    double eps = 0.25;
    int k = 20;
    int d = 4;
    std::uint64_t seed = 0;
    int retries = 20;
    bool strict = false;
};

int run_embed(const EmbedArgs& a) {
    std::vector<std::pair<std::string, std::string>> inputs;
    const Hypertree t = load_tree(a.tree, inputs);
    const SteinerTripleSystem sts = load_sts(a.sts, false, inputs);
    PipelineConfig cfg;
    cfg.d = a.d;
    cfg.mu = a.mu;
    cfg.epsilon = a.eps;
    cfg.k = a.k;
    cfg.seed = a.seed;
    cfg.retry_budget = a.retries;
    cfg.strict_hierarchy = a.strict;
    const EmbedResult res = embed(t, sts, cfg);

    json out{{"type", "embed"},
             {"manifest", make_manifest("embed",
                                        json{{"tree", a.tree}, {"sts", a.sts}, {"mu", a.mu}, {"eps", a.eps}, {"k", a.k},
                                             {"d", a.d}, {"seed", a.seed}, {"retries", a.retries}, {"strict", a.strict}},
                                        a.seed, inputs)},
             {"status", embed_status_name(res.status)},
             {"message", res.message},
             {"retries", res.retries_used},
             {"stage_stats", stats_json(res.stats)}};
    if (res.embedding) {
        out.update(embedding_json(*res.embedding));
        std::string why;
        out["certificate_ok"] = check_embedding(t, sts, *res.embedding, &why);
    }
    std::cout << out.dump(2) << "\n";
    return res.ok() ? 0 : 1;
}

// ---- oracle ----

struct OracleEmbedArgs {
    std::string tree;
    std::string sts;
    std::uint64_t node_limit = 50'000'000;
    double time_limit = 60.0;
    bool allow_partial = false;
};

int run_oracle_embed(const OracleEmbedArgs& a) {
    std::vector<std::pair<std::string, std::string>> inputs;
    const Hypertree t = load_tree(a.tree, inputs);
    const SteinerTripleSystem sts = load_sts(a.sts, a.allow_partial, inputs);
    SearchBudget budget;
    budget.node_limit = a.node_limit;
    budget.time_limit_seconds = a.time_limit;
    const BruteResult res = brute_embed(t, sts, budget);
    json out{{"type", "oracle-embed"},
             {"manifest", make_manifest("oracle embed",
                                        json{{"tree", a.tree}, {"sts", a.sts}, {"node_limit", a.node_limit},
                                             {"time_limit", a.time_limit}, {"allow_partial", a.allow_partial}},
                                        0, inputs)},
             {"status", brute_status_name(res.status)},
             {"nodes", res.nodes}};
    if (res.status == BruteStatus::Found) out["vertex_map"] = res.vertex_map;
    std::cout << out.dump(2) << "\n";
    return res.status == BruteStatus::Found ? 0 : 1;
}

struct OracleIsoArgs {
    std::string a;
    std::string b;
};

int run_oracle_iso(const OracleIsoArgs& a) {
    std::vector<std::pair<std::string, std::string>> inputs;
    const Hypertree ta = load_tree(a.a, inputs);
    const Hypertree tb = load_tree(a.b, inputs);
    const bool iso = exhaustive_isomorphic(ta, tb);
    json out{{"type", "oracle-iso"},
             {"manifest", make_manifest("oracle iso", json{{"a", a.a}, {"b", a.b}}, 0, inputs)},
             {"isomorphic", iso}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

// ---- experiment ----

struct ExperimentArgs {
    std::string n_range = "49:199:50";
    int d = 3;
    double mu = 0.5;
    int trials = 20;
    std::uint64_t seed = 0;
    double eps = 0.35;
    int k = 20;
    int retries = 20;
};

int run_experiment(const ExperimentArgs& a) {
    int lo = 0, hi = 0, step = 1;
    {
        std::istringstream in(a.n_range);
        char c1 = 0, c2 = 0;
        if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0 || lo < 3 || hi < lo)
            throw std::invalid_argument("--n-range must be lo:hi:step with 3 <= lo <= hi, step > 0");
    }
    const json config{{"n_range", a.n_range}, {"d", a.d},       {"mu", a.mu},          {"trials", a.trials},
                      {"seed", a.seed},       {"eps", a.eps},   {"k", a.k},            {"retries", a.retries}};
    std::cout << json{{"type", "manifest"}, {"manifest", make_manifest("experiment", config, a.seed, {})}}.dump() << "\n";

    struct Cell {
        int n;
        int trials = 0;
        int successes = 0;
    };
    std::map<int, Cell> cells;

    int trial_index = 0;
    for (int n = lo; n <= hi; n += step) {
        const int n_odd = (n % 2 == 0) ? n + 1 : n;
        const int order = (n_odd + 1) / 2;
        for (int trial = 0; trial < a.trials; ++trial, ++trial_index) {
            const std::uint64_t tree_seed = derive_seed(a.seed, "tree", static_cast<std::uint64_t>(trial_index));
            const GraphTree g = random_bounded_tree(order, a.d, tree_seed);
            const Hypertree t = Hypertree::subdivide(g);
            const int m = smallest_admissible_order((1.0 + a.mu) * t.order());
            const SteinerTripleSystem sts = SteinerTripleSystem::build(m);

            PipelineConfig cfg;
            cfg.d = a.d;
            cfg.mu = a.mu;
            cfg.epsilon = a.eps;
            cfg.k = a.k;
            cfg.seed = derive_seed(a.seed, "embed", static_cast<std::uint64_t>(trial_index));
            cfg.retry_budget = a.retries;
            const EmbedResult res = embed(t, sts, cfg);

            json line{{"type", "trial"}, {"trial", trial_index}, {"n", t.order()}, {"m", m},
                      {"d", a.d},        {"mu", a.mu},           {"eps", a.eps},   {"k", a.k},
                      {"status", embed_status_name(res.status)}, {"retries", res.retries_used},
                      {"stars", res.stats.stars},               {"subtrees", res.stats.subtrees}};
            if (res.embedding) {
                std::string why;
                line["certificate_ok"] = check_embedding(t, sts, *res.embedding, &why);
            }
            if (t.order() <= 13 && m <= 19) {
                const BruteResult oracle = brute_embed(t, sts);
                line["oracle"] = brute_status_name(oracle.status);
            } else {
                line["oracle"] = "skipped";
            }
            std::cout << line.dump() << "\n";

            auto& cell = cells[t.order()];
            cell.n = t.order();
            ++cell.trials;
            cell.successes += res.ok();
        }
    }
    json summary = json::array();
    for (const auto& [n, cell] : cells) {
        summary.push_back(json{{"n", cell.n},
                               {"trials", cell.trials},
                               {"successes", cell.successes},
                               {"rate", cell.trials ? static_cast<double>(cell.successes) / cell.trials : 0.0}});
    }
    std::cout << json{{"type", "summary"}, {"d", a.d}, {"mu", a.mu}, {"eps", a.eps}, {"k", a.k}, {"cells", summary}}.dump()
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"subdivision hypertree embedding into Steiner triple systems"};
    app.require_subcommand(1);

    GenStsArgs gen_sts;
    auto* c_gen_sts = app.add_subcommand("gen-sts", "generate a Steiner triple system (STS v1)");
    c_gen_sts->add_option("--m", gen_sts.m, "number of vertices")->required();
    c_gen_sts->add_option("--construction", gen_sts.construction, "auto|bose|skolem")
        ->check(CLI::IsMember({"auto", "bose", "skolem"}));
    c_gen_sts->add_option("--out", gen_sts.out, "output file (inline text when omitted)");

    GenTreeArgs gen_tree;
    auto* c_gen_tree = app.add_subcommand("gen-tree", "generate a random bounded-degree tree (HT v1 or GT v1)");
    c_gen_tree->add_option("--order", gen_tree.order, "graph-tree order before subdivision")->required();
    c_gen_tree->add_option("--d", gen_tree.d, "maximum degree");
    c_gen_tree->add_option("--seed", gen_tree.seed, "rng seed");
    c_gen_tree->add_option("--format", gen_tree.format, "ht (subdivided) or gt")->check(CLI::IsMember({"ht", "gt"}));
    c_gen_tree->add_option("--out", gen_tree.out, "output file (inline text when omitted)");

    DecomposeArgs decompose_args;
    auto* c_decompose = app.add_subcommand("decompose", "saw a subdivision tree into stars, subtrees, and isolated vertices");
    c_decompose->add_option("--tree", decompose_args.tree, "HT v1 file")->required();
    c_decompose->add_option("--k", decompose_args.k, "block size");

    StarsArgs stars_args;
    auto* c_stars = app.add_subcommand("stars", "pairwise-disjoint stars through an anchor tuple");
    c_stars->add_option("--sts", stars_args.sts, "STS v1 file")->required();
    c_stars->add_option("--anchors", stars_args.anchors, "anchor vertices")->required()->delimiter(',');
    c_stars->add_option("--want", stars_args.want, "member count or 'all'");

    ReservoirArgs reservoir_args;
    auto* c_reservoir = app.add_subcommand("reservoir", "draw a reservoir and audit its properties");
    c_reservoir->add_option("--m", reservoir_args.m, "order of a generated host");
    c_reservoir->add_option("--sts", reservoir_args.sts, "STS v1 file (overrides --m)");
    c_reservoir->add_option("--eps", reservoir_args.eps, "selection probability")->required();
    c_reservoir->add_option("--seed", reservoir_args.seed, "rng seed")->required();
    c_reservoir->add_option("--tuples", reservoir_args.tuples, "sampled anchor tuples");
    c_reservoir->add_option("--d", reservoir_args.d, "max anchors per sampled tuple");

    EmbedArgs embed_args;
    auto* c_embed = app.add_subcommand("embed", "run the embedding pipeline");
    c_embed->add_option("--tree", embed_args.tree, "HT v1 file")->required();
    c_embed->add_option("--sts", embed_args.sts, "STS v1 file")->required();
    c_embed->add_option("--mu", embed_args.mu, "slack: require m >= (1+mu) n");
    c_embed->add_option("--eps", embed_args.eps, "reservoir probability");
    c_embed->add_option("--k", embed_args.k, "block size");
    c_embed->add_option("--d", embed_args.d, "degree bound");
    c_embed->add_option("--seed", embed_args.seed, "rng seed")->required();
    c_embed->add_option("--retries", embed_args.retries, "reservoir redraw budget");
    c_embed->add_flag("--strict-hierarchy", embed_args.strict, "enforce the constant hierarchy");

    auto* c_oracle = app.add_subcommand("oracle", "brute-force ground truth");
    c_oracle->require_subcommand(1);
    OracleEmbedArgs oracle_embed_args;
    auto* c_oracle_embed = c_oracle->add_subcommand("embed", "exhaustive embedding search");
    c_oracle_embed->add_option("--tree", oracle_embed_args.tree, "HT v1 file")->required();
    c_oracle_embed->add_option("--sts", oracle_embed_args.sts, "STS v1 file")->required();
    c_oracle_embed->add_option("--node-limit", oracle_embed_args.node_limit, "backtracking node budget");
    c_oracle_embed->add_option("--time-limit", oracle_embed_args.time_limit, "wall-clock budget in seconds");
    c_oracle_embed->add_flag("--allow-partial", oracle_embed_args.allow_partial, "accept partial hosts");
    OracleIsoArgs oracle_iso_args;
    auto* c_oracle_iso = c_oracle->add_subcommand("iso", "exhaustive isomorphism check");
    c_oracle_iso->add_option("--a", oracle_iso_args.a, "HT v1 file")->required();
    c_oracle_iso->add_option("--b", oracle_iso_args.b, "HT v1 file")->required();

    ExperimentArgs experiment_args;
    auto* c_experiment = app.add_subcommand("experiment", "seeded success-rate sweeps (JSON-lines)");
    c_experiment->add_option("--n-range", experiment_args.n_range, "lo:hi:step hypertree orders");
    c_experiment->add_option("--d", experiment_args.d, "degree bound");
    c_experiment->add_option("--mu", experiment_args.mu, "slack");
    c_experiment->add_option("--trials", experiment_args.trials, "trials per n");
    c_experiment->add_option("--seed", experiment_args.seed, "global seed")->required();
    c_experiment->add_option("--eps", experiment_args.eps, "reservoir probability");
    c_experiment->add_option("--k", experiment_args.k, "block size");
    c_experiment->add_option("--retries", experiment_args.retries, "reservoir redraw budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(c_gen_sts)) return run_gen_sts(gen_sts);
        if (app.got_subcommand(c_gen_tree)) return run_gen_tree(gen_tree);
        if (app.got_subcommand(c_decompose)) return run_decompose(decompose_args);
        if (app.got_subcommand(c_stars)) return run_stars(stars_args);
        if (app.got_subcommand(c_reservoir)) return run_reservoir(reservoir_args);
        if (app.got_subcommand(c_embed)) return run_embed(embed_args);
        if (app.got_subcommand(c_oracle)) {
            if (c_oracle->got_subcommand(c_oracle_embed)) return run_oracle_embed(oracle_embed_args);
            return run_oracle_iso(oracle_iso_args);
        }
        if (app.got_subcommand(c_experiment)) return run_experiment(experiment_args);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
