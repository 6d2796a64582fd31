#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "stsembed/canonical.hpp"
#include "stsembed/decompose.hpp"
#include "stsembed/hypertree.hpp"
#include "stsembed/reservoir.hpp"
#include "stsembed/rng.hpp"
#include "stsembed/star_finder.hpp"
#include "stsembed/steiner.hpp"

namespace stsembed {

/// Pipeline knobs. The intended regime is 1 > 1/d >> mu >> epsilon >> 1/k;
/// strict mode enforces concrete versions of those gaps, the default mode
/// only sanity bounds, since desk-scale instances cannot honor the
/// asymptotic hierarchy.
struct PipelineConfig {
    int d = 3;
    double mu = 0.5;
    double epsilon = 0.2;
    int k = 20;
    std::uint64_t seed = 0;
    int retry_budget = 20;
    bool strict_hierarchy = false;

    void validate() const {
        if (d < 2) throw std::invalid_argument("config: d must be >= 2");
        if (!(mu > 0.0)) throw std::invalid_argument("config: mu must be positive");
        if (!(epsilon >= 0.0 && epsilon < 1.0)) throw std::invalid_argument("config: epsilon must lie in [0,1)");
        if (k < 2 * d + 1) throw std::invalid_argument("config: k must be at least 2d+1");
        if (retry_budget < 1) throw std::invalid_argument("config: retry budget must be positive");
        if (strict_hierarchy) {
            if (!(mu <= 1.0 / (2.0 * d))) throw std::invalid_argument("config: strict hierarchy needs mu <= 1/(2d)");
            if (!(epsilon > 0.0 && epsilon <= mu / 2.0))
                throw std::invalid_argument("config: strict hierarchy needs 0 < epsilon <= mu/2");
            const double k_floor = 8.0 * std::pow(static_cast<double>(d), 5) / std::pow(epsilon, d + 1);
            if (static_cast<double>(k) < k_floor)
                throw std::invalid_argument("config: strict hierarchy needs k >= 8 d^5 / epsilon^(d+1)");
        }
    }
};

// min(3^k, cap) without overflow.
inline long long pow3_clamped(int k, long long cap) {
    long long value = 1;
    for (int i = 0; i < k; ++i) {
        if (value > cap / 3) return cap;
        value *= 3;
    }
    return value;
}

// min(k * 3^k, cap) without overflow.
inline long long k3k_clamped(int k, long long cap) {
    long long value = k;
    for (int i = 0; i < k; ++i) {
        if (value > cap / 3) return cap;
        value *= 3;
    }
    return std::min(value, cap);
}

/// Fragments of the decomposition grouped by isomorphism type. lambda_i uses
/// the effective sample size s = min(k 3^k, l): lambda_i = ceil(s l_i / l),
/// which keeps ceil(l/s) packed copies sufficient for every class.
struct IsoClassPartition {
    struct Class {
        std::string key;
        Fragment representative;   // canonical labels 0..p-1
        std::vector<int> members;  // indices into Decomposition::subtrees
        long long l_i = 0;
        long long lambda_i = 0;
    };
    std::vector<Class> classes;  // ordered by key
    long long l = 0;
    long long sample_size = 0;
    std::vector<CanonicalForm> member_form;  // per fragment index
    std::vector<int> class_of_fragment;

    int t() const { return static_cast<int>(classes.size()); }
};

inline IsoClassPartition partition_classes(const Decomposition& dec, int k) {
    IsoClassPartition part;
    part.l = dec.subtree_count();
    if (part.l == 0) throw std::invalid_argument("partition_classes: decomposition has no subtrees");
    part.member_form.reserve(dec.subtrees.size());
    part.class_of_fragment.assign(dec.subtrees.size(), -1);

    std::map<std::string, int> by_key;
    for (size_t fi = 0; fi < dec.subtrees.size(); ++fi) {
        CanonicalForm form = canonical_form(dec.subtrees[fi]);
        auto [it, inserted] = by_key.try_emplace(form.key, -1);
        if (inserted) {
            IsoClassPartition::Class cls;
            cls.key = form.key;
            cls.representative = form.representative();
            it->second = static_cast<int>(part.classes.size());
            part.classes.push_back(std::move(cls));
        }
        part.class_of_fragment[fi] = it->second;
        part.member_form.push_back(std::move(form));
    }
    // std::map iteration gave key order, but indices were assigned in
    // discovery order; reorder classes by key for a canonical layout.
    {
        std::vector<int> new_index(part.classes.size());
        std::vector<IsoClassPartition::Class> ordered;
        ordered.reserve(part.classes.size());
        int next = 0;
        for (auto& [key, idx] : by_key) {
            new_index[static_cast<size_t>(idx)] = next++;
            ordered.push_back(std::move(part.classes[static_cast<size_t>(idx)]));
        }
        part.classes = std::move(ordered);
        for (auto& c : part.class_of_fragment) c = new_index[static_cast<size_t>(c)];
    }
    for (size_t fi = 0; fi < dec.subtrees.size(); ++fi)
        part.classes[static_cast<size_t>(part.class_of_fragment[fi])].members.push_back(static_cast<int>(fi));

    // Class-count sanity: hypertrees on at most k vertices fall into fewer
    // than 3^k isomorphism types.
    const long long t_count = static_cast<long long>(part.classes.size());
    if (pow3_clamped(k, t_count + 1) <= t_count)
        throw std::logic_error("partition_classes: more classes than the 3^k type bound allows");

    part.sample_size = k3k_clamped(k, part.l);
    for (auto& cls : part.classes) {
        cls.l_i = static_cast<long long>(cls.members.size());
        cls.lambda_i = (part.sample_size * cls.l_i + part.l - 1) / part.l;  // ceil
    }
    return part;
}

/// The sample forest F: lambda_i vertex-disjoint copies of each class
/// representative, laid out on vertices 0..r-1.
struct SampleForest {
    struct Component {
        int class_index;
        int offset;  // first F-vertex of this component
        int size;
    };
    std::vector<Component> components;
    std::vector<Fragment> shapes;  // per class index, canonical labels
    std::vector<Triple> edges;
    int r = 0;
    long long lambda = 0;
    int f() const { return static_cast<int>(edges.size()); }
};

inline SampleForest build_sample_forest(const IsoClassPartition& part, int /*k*/) {
    SampleForest forest;
    for (const auto& cls : part.classes) forest.shapes.push_back(cls.representative);
    for (size_t ci = 0; ci < part.classes.size(); ++ci) {
        const auto& cls = part.classes[ci];
        const int size = static_cast<int>(cls.representative.vertices.size());
        for (long long copy = 0; copy < cls.lambda_i; ++copy) {
            forest.components.push_back({static_cast<int>(ci), forest.r, size});
            for (const Triple& e : cls.representative.edges)
                forest.edges.push_back(sorted_triple(e[0] + forest.r, e[1] + forest.r, e[2] + forest.r));
            forest.r += size;
            ++forest.lambda;
        }
    }
    return forest;
}

/// Size bounds for the unclipped forest: r computed with the full
/// lambda_i = ceil(k 3^k l_i / l) formula, checked against k(k+4) 3^k and
/// (k 3^k n / l)(1 + mu/2). Exact integer arithmetic in 128 bits.
struct ForestBounds {
    unsigned __int128 r_paper = 0;
    unsigned __int128 quadratic_cap = 0;
    bool within_quadratic = false;
    long double ratio_cap = 0.0L;
    bool within_ratio = false;
};

inline ForestBounds unclipped_forest_bounds(const IsoClassPartition& part, int k, long long n, double mu) {
    if (k > 70) throw std::invalid_argument("unclipped_forest_bounds: k too large for 128-bit arithmetic");
    unsigned __int128 pow3 = 1;
    for (int i = 0; i < k; ++i) pow3 *= 3;
    const unsigned __int128 k3k = static_cast<unsigned __int128>(k) * pow3;
    ForestBounds b;
    for (const auto& cls : part.classes) {
        const unsigned __int128 lam =
            (k3k * static_cast<unsigned __int128>(cls.l_i) + static_cast<unsigned __int128>(part.l) - 1) /
            static_cast<unsigned __int128>(part.l);
        b.r_paper += lam * static_cast<unsigned __int128>(cls.representative.vertices.size());
    }
    b.quadratic_cap = static_cast<unsigned __int128>(k) * static_cast<unsigned __int128>(k + 4) * pow3;
    b.within_quadratic = b.r_paper <= b.quadratic_cap;
    b.ratio_cap = static_cast<long double>(k3k) * static_cast<long double>(n) / static_cast<long double>(part.l) *
                  (1.0L + static_cast<long double>(mu) / 2.0L);
    b.within_ratio = static_cast<long double>(b.r_paper) <= b.ratio_cap;
    return b;
}

/// One vertex-disjoint placed copy of the sample forest.
struct PackedCopy {
    std::vector<int> image;  // F vertex -> host vertex
};

struct PackResult {
    bool ok = false;
    std::string failure;
    std::vector<PackedCopy> copies;
    std::uint64_t nodes = 0;
};

namespace detail {

struct ComponentPlan {
    // Edge-matching steps in BFS order; each step attaches one new edge at an
    // already-placed vertex. Vertex 0 of the component is placed first.
    struct Step {
        int attach;
        int x, y;
    };
    std::vector<Step> steps;
    int size = 0;
};

inline ComponentPlan component_plan(const Fragment& rep) {
    ComponentPlan plan;
    plan.size = static_cast<int>(rep.vertices.size());
    if (rep.edges.empty()) return plan;
    std::vector<std::vector<std::pair<int, int>>> inc(rep.vertices.size());  // vertex -> (edge, -)
    for (size_t e = 0; e < rep.edges.size(); ++e)
        for (int v : rep.edges[e]) inc[static_cast<size_t>(v)].push_back({static_cast<int>(e), 0});
    std::vector<char> vseen(rep.vertices.size(), 0), eseen(rep.edges.size(), 0);
    std::vector<int> queue{0};
    vseen[0] = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        const int v = queue[qi];
        for (auto [e, unused] : inc[static_cast<size_t>(v)]) {
            if (eseen[static_cast<size_t>(e)]) continue;
            eseen[static_cast<size_t>(e)] = 1;
            ComponentPlan::Step st{v, -1, -1};
            for (int u : rep.edges[static_cast<size_t>(e)]) {
                if (u == v) continue;
                (st.x == -1 ? st.x : st.y) = u;
                vseen[static_cast<size_t>(u)] = 1;
                queue.push_back(u);
            }
            plan.steps.push_back(st);
        }
    }
    return plan;
}

// Randomized backtracking embedding of one component into the unused part of
// the host. Returns false when the node budget or candidate space runs out.
inline bool place_component(const InducedSystem& host, const ComponentPlan& plan, std::vector<char>& used,
                            std::vector<int>& image, Rng& rng, std::uint64_t& nodes, std::uint64_t node_budget) {
    std::vector<int> local(static_cast<size_t>(plan.size), -1);

    // Random unused start vertex; sampled with retries then a linear sweep.
    int start = -1;
    for (int tries = 0; tries < 32 && start == -1; ++tries) {
        const int cand = host.vertices[rand_below(rng, host.vertices.size())];
        if (!used[static_cast<size_t>(cand)]) start = cand;
    }
    if (start == -1) {
        const size_t off = rand_below(rng, host.vertices.size());
        for (size_t i = 0; i < host.vertices.size() && start == -1; ++i) {
            const int cand = host.vertices[(i + off) % host.vertices.size()];
            if (!used[static_cast<size_t>(cand)]) start = cand;
        }
    }
    if (start == -1) return false;
    local[0] = start;
    used[static_cast<size_t>(start)] = 1;

    const std::uint64_t budget_end = nodes + node_budget;
    auto undo_start = [&]() {
        used[static_cast<size_t>(start)] = 0;
        local[0] = -1;
    };

    auto match = [&](auto&& self, size_t si) -> bool {
        if (si == plan.steps.size()) return true;
        const auto& st = plan.steps[si];
        const int a = local[static_cast<size_t>(st.attach)];
        const auto& inc = host.incident[static_cast<size_t>(a)];
        if (!inc.empty()) {
            const size_t rot = rand_below(rng, inc.size());
            for (size_t ii = 0; ii < inc.size(); ++ii) {
                const Triple& ht = host.triples[static_cast<size_t>(inc[(ii + rot) % inc.size()])];
                int p = -1, q = -1;
                for (int u : ht) {
                    if (u == a) continue;
                    (p == -1 ? p : q) = u;
                }
                const bool swap_first = (rng() & 1) != 0;
                for (int flip = 0; flip < 2; ++flip) {
                    if (++nodes > budget_end) return false;
                    const bool sw = (flip == 0) == swap_first;
                    const int ix = sw ? q : p;
                    const int iy = sw ? p : q;
                    if (used[static_cast<size_t>(ix)] || used[static_cast<size_t>(iy)]) continue;
                    local[static_cast<size_t>(st.x)] = ix;
                    local[static_cast<size_t>(st.y)] = iy;
                    used[static_cast<size_t>(ix)] = used[static_cast<size_t>(iy)] = 1;
                    if (self(self, si + 1)) return true;
                    used[static_cast<size_t>(ix)] = used[static_cast<size_t>(iy)] = 0;
                    local[static_cast<size_t>(st.x)] = local[static_cast<size_t>(st.y)] = -1;
                    if (nodes > budget_end) return false;
                }
            }
        }
        return false;
    };

    if (!match(match, 0)) {
        undo_start();
        return false;
    }
    for (int v = 0; v < plan.size; ++v) image[static_cast<size_t>(v)] = local[static_cast<size_t>(v)];
    return true;
}

}  // namespace detail

/// Greedy randomized sequential packing of vertex-disjoint copies of the
/// sample forest into the reservoir complement. Components are embedded one
/// at a time with bounded backtracking and per-component restarts; a copy
/// that cannot be completed fails the whole attempt so the caller can redraw
/// the reservoir.
inline PackResult pack_forest(const InducedSystem& host, const SampleForest& forest, long long copies_needed,
                              std::uint64_t seed) {
    PackResult res;
    if (forest.r <= 0) throw std::invalid_argument("pack_forest: empty forest");
    if (static_cast<long long>(host.vertex_count()) < copies_needed * forest.r) {
        res.failure = "host too small: " + std::to_string(host.vertex_count()) + " vertices for " +
                      std::to_string(copies_needed) + " copies of " + std::to_string(forest.r);
        return res;
    }

    std::vector<detail::ComponentPlan> plans;
    plans.reserve(forest.shapes.size());
    for (const auto& shape : forest.shapes) plans.push_back(detail::component_plan(shape));

    Rng rng = make_rng(seed);
    std::vector<char> used(static_cast<size_t>(host.host_order), 0);
    constexpr std::uint64_t kNodeBudget = 200000;
    constexpr int kRestarts = 24;

    for (long long copy = 0; copy < copies_needed; ++copy) {
        PackedCopy pc;
        pc.image.assign(static_cast<size_t>(forest.r), -1);
        for (const auto& comp : forest.components) {
            const auto& plan = plans[static_cast<size_t>(comp.class_index)];
            std::vector<int> image(static_cast<size_t>(plan.size), -1);
            bool placed = false;
            for (int attempt = 0; attempt < kRestarts && !placed; ++attempt) {
                placed = detail::place_component(host, plan, used, image, rng, res.nodes, kNodeBudget);
            }
            if (!placed) {
                res.failure = "could not place a component of size " + std::to_string(plan.size) + " (copy " +
                              std::to_string(copy) + ")";
                return res;
            }
            for (int v = 0; v < plan.size; ++v) pc.image[static_cast<size_t>(comp.offset + v)] = image[static_cast<size_t>(v)];
        }
        res.copies.push_back(std::move(pc));
    }
    res.ok = true;
    return res;
}

/// Verifies that packed copies are pairwise vertex-disjoint embeddings of the
/// forest into the host.
inline bool check_packing(const InducedSystem& host, const SampleForest& forest,
                          const std::vector<PackedCopy>& copies, std::string* why = nullptr) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    std::vector<char> used(static_cast<size_t>(host.host_order), 0);
    std::set<Triple> host_edges(host.triples.begin(), host.triples.end());
    for (const auto& copy : copies) {
        if (static_cast<int>(copy.image.size()) != forest.r) return fail("copy image size mismatch");
        for (int v : copy.image) {
            if (v < 0 || v >= host.host_order || !host.contains(v)) return fail("image vertex outside host");
            if (used[static_cast<size_t>(v)]) return fail("two copies share a host vertex");
            used[static_cast<size_t>(v)] = 1;
        }
        for (const Triple& e : forest.edges) {
            const Triple im = sorted_triple(copy.image[static_cast<size_t>(e[0])], copy.image[static_cast<size_t>(e[1])],
                                            copy.image[static_cast<size_t>(e[2])]);
            if (!host_edges.count(im)) return fail("forest edge image is not a host triple");
        }
    }
    return true;
}

/// Assignment of every decomposition subtree to a placed copy of its class
/// representative, through the canonical relabeling.
struct Placement {
    std::vector<int> image_of_vertex;                // T vertex -> host vertex, -1 where unset
    std::vector<std::pair<int, int>> fragment_slot;  // fragment -> (copy, component)
};

inline Placement realize_subtrees(const std::vector<PackedCopy>& copies, const SampleForest& forest,
                                  const IsoClassPartition& part, const Decomposition& dec, int n) {
    Placement placement;
    placement.image_of_vertex.assign(static_cast<size_t>(n), -1);
    placement.fragment_slot.assign(dec.subtrees.size(), {-1, -1});

    // Available component slots per class, in (copy, component) order.
    std::vector<std::vector<std::pair<int, int>>> slots(part.classes.size());
    for (size_t c = 0; c < copies.size(); ++c) {
        for (size_t j = 0; j < forest.components.size(); ++j) {
            slots[static_cast<size_t>(forest.components[j].class_index)].push_back(
                {static_cast<int>(c), static_cast<int>(j)});
        }
    }
    std::vector<size_t> next(part.classes.size(), 0);
    for (size_t fi = 0; fi < dec.subtrees.size(); ++fi) {
        const int ci = part.class_of_fragment[fi];
        if (next[static_cast<size_t>(ci)] >= slots[static_cast<size_t>(ci)].size())
            throw std::logic_error("realize_subtrees: supply shortfall for class " + std::to_string(ci));
        const auto [copy, compj] = slots[static_cast<size_t>(ci)][next[static_cast<size_t>(ci)]++];
        placement.fragment_slot[fi] = {copy, compj};
        const auto& comp = forest.components[static_cast<size_t>(compj)];
        const CanonicalForm& form = part.member_form[fi];
        for (int v : dec.subtrees[fi].vertices) {
            const int fv = comp.offset + form.to_canonical.at(v);
            placement.image_of_vertex[static_cast<size_t>(v)] = copies[static_cast<size_t>(copy)].image[static_cast<size_t>(fv)];
        }
    }
    return placement;
}

/// A certified embedding: injective vertex map plus one host-triple witness
/// per guest edge.
struct Embedding {
    std::vector<int> vertex_map;
    struct Witness {
        int edge;
        Triple host_triple;
    };
    std::vector<Witness> certificate;
};

struct AttachOutcome {
    bool ok = false;
    std::string failure;
    struct StarImage {
        int star;
        int center_image;
        std::vector<int> w_images;
    };
    std::vector<StarImage> images;
};

/// Reattaches every sawed star: for star j the anchors are the already-placed
/// images of its ray v-vertices; candidates come from the disjoint-star
/// family through those anchors, filtered to W-sets inside the reservoir and
/// untouched by earlier choices. First fit in family order.
inline AttachOutcome attach_stars(const SteinerTripleSystem& sts, const Reservoir& res, const Decomposition& dec,
                                  std::vector<int>& vertex_map, std::vector<char>& used_host) {
    AttachOutcome out;
    for (size_t j = 0; j < dec.stars.size(); ++j) {
        const auto& star = dec.stars[j];
        std::vector<int> anchors;
        anchors.reserve(star.rays.size());
        for (const auto& ray : star.rays) {
            const int img = vertex_map[static_cast<size_t>(ray.v)];
            if (img < 0) throw std::invalid_argument("attach_stars: star anchor not yet placed");
            anchors.push_back(img);
        }
        const StarFamily fam = find_disjoint_stars(sts, anchors, kAllStars);
        int chosen = -1;
        for (size_t l = 0; l < fam.members.size() && chosen < 0; ++l) {
            bool usable = res.contains(fam.members[l].center) && !used_host[static_cast<size_t>(fam.members[l].center)];
            for (int w : fam.members[l].ws) usable = usable && res.contains(w) && !used_host[static_cast<size_t>(w)];
            if (usable) chosen = static_cast<int>(l);
        }
        if (chosen < 0) {
            out.failure = "no unused reservoir star available for star " + std::to_string(j) + " (family size " +
                          std::to_string(fam.members.size()) + ")";
            return out;
        }
        const auto& member = fam.members[static_cast<size_t>(chosen)];
        vertex_map[static_cast<size_t>(star.center)] = member.center;
        used_host[static_cast<size_t>(member.center)] = 1;
        AttachOutcome::StarImage img;
        img.star = static_cast<int>(j);
        img.center_image = member.center;
        for (size_t i = 0; i < star.rays.size(); ++i) {
            vertex_map[static_cast<size_t>(star.rays[i].w)] = member.ws[i];
            used_host[static_cast<size_t>(member.ws[i])] = 1;
            img.w_images.push_back(member.ws[i]);
        }
        out.images.push_back(std::move(img));
    }
    out.ok = true;
    return out;
}

/// Re-derives the certificate facts from scratch: injectivity, range, and a
/// witness for every guest edge checked against the raw triple list (not the
/// pair index the pipeline used).
inline bool check_embedding(const Hypertree& t, const SteinerTripleSystem& sts, const Embedding& emb,
                            std::string* why = nullptr) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (static_cast<int>(emb.vertex_map.size()) != t.order()) return fail("vertex map size mismatch");
    std::vector<char> seen(static_cast<size_t>(sts.order()), 0);
    for (int v = 0; v < t.order(); ++v) {
        const int img = emb.vertex_map[static_cast<size_t>(v)];
        if (img < 0 || img >= sts.order()) return fail("image out of range");
        if (seen[static_cast<size_t>(img)]) return fail("vertex map not injective");
        seen[static_cast<size_t>(img)] = 1;
    }
    if (emb.certificate.size() != t.edges().size()) return fail("certificate does not cover every edge");
    std::set<Triple> host_edges(sts.triples().begin(), sts.triples().end());
    std::vector<char> edge_done(t.edges().size(), 0);
    for (const auto& wit : emb.certificate) {
        if (wit.edge < 0 || wit.edge >= static_cast<int>(t.edges().size())) return fail("witness for unknown edge");
        if (edge_done[static_cast<size_t>(wit.edge)]) return fail("duplicate witness");
        edge_done[static_cast<size_t>(wit.edge)] = 1;
        const Triple& ge = t.edges()[static_cast<size_t>(wit.edge)];
        const Triple expect = sorted_triple(emb.vertex_map[static_cast<size_t>(ge[0])],
                                            emb.vertex_map[static_cast<size_t>(ge[1])],
                                            emb.vertex_map[static_cast<size_t>(ge[2])]);
        if (expect != wit.host_triple) return fail("witness disagrees with vertex map");
        if (!host_edges.count(wit.host_triple)) return fail("witness triple is not a host edge");
    }
    return true;
}

/// Checks that isolated vertices land in the reservoir and subtree vertices
/// land outside it.
inline bool check_partition_contract(const Decomposition& dec, const Reservoir& res, const Embedding& emb,
                                     std::string* why = nullptr) {
    for (size_t v = 0; v < dec.vertex_location.size(); ++v) {
        const bool in_r = res.contains(emb.vertex_map[v]);
        if (dec.vertex_location[v] == Decomposition::kIsolated && !in_r) {
            if (why) *why = "isolated vertex image outside reservoir";
            return false;
        }
        if (dec.vertex_location[v] != Decomposition::kIsolated && in_r) {
            if (why) *why = "subtree vertex image inside reservoir";
            return false;
        }
    }
    return true;
}

enum class EmbedStatus { Success, PreconditionFailed, RetriesExhausted };

struct StageStats {
    long long n = 0, m = 0;
    long long isolated = 0, subtrees = 0, stars = 0, classes = 0;
    long long sample_size = 0, forest_r = 0, forest_f = 0, forest_lambda = 0, copies_needed = 0;
    int attempts = 0;
    std::vector<std::string> attempt_failures;
    bool unclipped_bounds_checked = false;
    bool unclipped_within_quadratic = false;
    bool unclipped_within_ratio = false;
};

struct EmbedResult {
    EmbedStatus status = EmbedStatus::PreconditionFailed;
    std::string message;
    std::optional<Embedding> embedding;
    StageStats stats;
    int retries_used = 0;

    bool ok() const { return status == EmbedStatus::Success; }
};

/// Full pipeline: annotate, saw, partition into isomorphism classes, build
/// the sample forest, then per reservoir draw: pack vertex-disjoint forest
/// copies into the complement, realize every subtree on a packed copy, and
/// reattach the stars through the reservoir. Failures inside an attempt
/// redraw the reservoir with a fresh derived seed, up to the retry budget.
/// A returned Success always carries an independently re-checked certificate.
inline EmbedResult embed(const Hypertree& t, const SteinerTripleSystem& sts, const PipelineConfig& cfg) {
    EmbedResult res;
    cfg.validate();
    res.stats.n = t.order();
    res.stats.m = sts.order();

    if (!sts.complete()) {
        res.message = "host is not a Steiner triple system";
        return res;
    }
    if (!t.is_subdivision_tree()) {
        res.message = "guest tree is not a subdivision tree";
        return res;
    }
    if (t.max_degree() > cfg.d) {
        res.message = "guest tree degree exceeds configured d";
        return res;
    }
    if (static_cast<double>(sts.order()) + 1e-9 < (1.0 + cfg.mu) * t.order()) {
        res.message = "host too small: need m >= (1+mu) n";
        return res;
    }

    const RootedAnnotation ann = annotate(t);
    const Decomposition dec = saw(t, ann, cfg.k);
    const IsoClassPartition part = partition_classes(dec, cfg.k);
    const SampleForest forest = build_sample_forest(part, cfg.k);
    const long long copies_needed = (part.l + part.sample_size - 1) / part.sample_size;

    res.stats.isolated = static_cast<long long>(dec.isolated.size());
    res.stats.subtrees = dec.subtree_count();
    res.stats.stars = dec.star_count();
    res.stats.classes = part.t();
    res.stats.sample_size = part.sample_size;
    res.stats.forest_r = forest.r;
    res.stats.forest_f = forest.f();
    res.stats.forest_lambda = forest.lambda;
    res.stats.copies_needed = copies_needed;

    if (cfg.k <= 70) {
        const ForestBounds bounds = unclipped_forest_bounds(part, cfg.k, t.order(), cfg.mu);
        res.stats.unclipped_bounds_checked = true;
        res.stats.unclipped_within_quadratic = bounds.within_quadratic;
        res.stats.unclipped_within_ratio = bounds.within_ratio;
        if (cfg.strict_hierarchy && !bounds.within_quadratic)
            throw std::logic_error("embed: unclipped forest exceeds its quadratic size bound");
    }

    for (int attempt = 0; attempt < cfg.retry_budget; ++attempt) {
        res.stats.attempts = attempt + 1;
        res.retries_used = attempt;
        const Reservoir reservoir = draw_reservoir(sts, cfg.epsilon, derive_seed(cfg.seed, "reservoir", static_cast<std::uint64_t>(attempt)));
        const InducedSystem stilde = complement_view(sts, reservoir);

        // Concentration screen at sizes where it is meaningful: reservoir and
        // complement sizes, and sampled complement degrees, within 15% of the
        // expected values. An out-of-tolerance draw is redrawn like any other
        // attempt failure.
        if (sts.order() >= 500) {
            bool within = true;
            const double em = cfg.epsilon * sts.order();
            const double cm = (1.0 - cfg.epsilon) * sts.order();
            if (em > 0 && std::abs(static_cast<double>(reservoir.size()) - em) / em > 0.15) within = false;
            if (cm > 0 && std::abs(static_cast<double>(stilde.vertex_count()) - cm) / cm > 0.15) within = false;
            if (within && !stilde.vertices.empty()) {
                const double expected_deg = (1.0 - cfg.epsilon) * (1.0 - cfg.epsilon) * sts.order() / 2.0;
                Rng rng = make_rng(derive_seed(cfg.seed, "audit", static_cast<std::uint64_t>(attempt)));
                for (int s = 0; s < 200 && within; ++s) {
                    const int v = stilde.vertices[rand_below(rng, stilde.vertices.size())];
                    const double deg = static_cast<double>(stilde.incident[static_cast<size_t>(v)].size());
                    within = std::abs(deg - expected_deg) / expected_deg <= 0.15;
                }
            }
            if (!within) {
                res.stats.attempt_failures.push_back("reservoir audit out of tolerance");
                continue;
            }
        }

        if (static_cast<long long>(stilde.vertex_count()) < copies_needed * forest.r) {
            res.stats.attempt_failures.push_back("complement smaller than the packing demand");
            continue;
        }
        PackResult pack = pack_forest(stilde, forest, copies_needed,
                                      derive_seed(cfg.seed, "pack", static_cast<std::uint64_t>(attempt)));
        if (!pack.ok) {
            res.stats.attempt_failures.push_back("pack: " + pack.failure);
            continue;
        }
        std::string why;
        if (!check_packing(stilde, forest, pack.copies, &why)) throw std::logic_error("embed: invalid packing: " + why);

        Placement placement = realize_subtrees(pack.copies, forest, part, dec, t.order());

        std::vector<int> vertex_map = placement.image_of_vertex;
        std::vector<char> used_host(static_cast<size_t>(sts.order()), 0);
        for (int v = 0; v < t.order(); ++v) {
            if (vertex_map[static_cast<size_t>(v)] >= 0) used_host[static_cast<size_t>(vertex_map[static_cast<size_t>(v)])] = 1;
        }
        AttachOutcome attach = attach_stars(sts, reservoir, dec, vertex_map, used_host);
        if (!attach.ok) {
            res.stats.attempt_failures.push_back("attach: " + attach.failure);
            continue;
        }

        Embedding emb;
        emb.vertex_map = std::move(vertex_map);
        for (size_t e = 0; e < t.edges().size(); ++e) {
            const Triple& ge = t.edges()[e];
            emb.certificate.push_back({static_cast<int>(e),
                                       sorted_triple(emb.vertex_map[static_cast<size_t>(ge[0])],
                                                     emb.vertex_map[static_cast<size_t>(ge[1])],
                                                     emb.vertex_map[static_cast<size_t>(ge[2])])});
        }
        if (!check_embedding(t, sts, emb, &why)) throw std::logic_error("embed: certificate check failed: " + why);
        if (!check_partition_contract(dec, reservoir, emb, &why))
            throw std::logic_error("embed: partition contract violated: " + why);

        res.status = EmbedStatus::Success;
        res.message = "embedded";
        res.embedding = std::move(emb);
        return res;
    }
    res.status = EmbedStatus::RetriesExhausted;
    res.message = "no reservoir draw admitted a full packing and star attachment";
    return res;
}

/// A small forest on vertices 0..order-1, the guest shape for the exhaustive
/// counting oracle below.
struct LabeledForest {
    int order = 0;
    std::vector<Triple> edges;
};

/// Exact count of injective maps of the forest into the host that send every
/// forest edge onto a host triple and honor the given pins. Exhaustive
/// backtracking, restricted to hosts of order <= 15 and forests of order <= 7.
inline long long count_labeled_embeddings(const InducedSystem& host, const LabeledForest& forest,
                                          const std::vector<std::pair<int, int>>& pins = {}) {
    if (host.vertex_count() > 15) throw std::invalid_argument("count_labeled_embeddings: host too large");
    if (forest.order > 7) throw std::invalid_argument("count_labeled_embeddings: forest too large");
    std::set<Triple> host_edges(host.triples.begin(), host.triples.end());

    std::vector<int> pinned(static_cast<size_t>(forest.order), -1);
    for (auto [fv, hv] : pins) {
        if (fv < 0 || fv >= forest.order || !host.contains(hv))
            throw std::invalid_argument("count_labeled_embeddings: bad pin");
        pinned[static_cast<size_t>(fv)] = hv;
    }

    std::vector<int> map(static_cast<size_t>(forest.order), -1);
    std::vector<char> used(static_cast<size_t>(host.host_order), 0);
    long long count = 0;

    auto edges_ok_with = [&](int just_assigned) {
        for (const Triple& e : forest.edges) {
            if (e[0] != just_assigned && e[1] != just_assigned && e[2] != just_assigned) continue;
            bool complete = true;
            for (int v : e) complete = complete && map[static_cast<size_t>(v)] >= 0;
            if (!complete) continue;
            const Triple im = sorted_triple(map[static_cast<size_t>(e[0])], map[static_cast<size_t>(e[1])],
                                            map[static_cast<size_t>(e[2])]);
            if (!host_edges.count(im)) return false;
        }
        return true;
    };

    auto assign = [&](auto&& self, int fv) -> void {
        if (fv == forest.order) {
            ++count;
            return;
        }
        if (pinned[static_cast<size_t>(fv)] >= 0) {
            const int hv = pinned[static_cast<size_t>(fv)];
            if (used[static_cast<size_t>(hv)]) return;
            map[static_cast<size_t>(fv)] = hv;
            used[static_cast<size_t>(hv)] = 1;
            if (edges_ok_with(fv)) self(self, fv + 1);
            used[static_cast<size_t>(hv)] = 0;
            map[static_cast<size_t>(fv)] = -1;
            return;
        }
        for (int hv : host.vertices) {
            if (used[static_cast<size_t>(hv)]) continue;
            map[static_cast<size_t>(fv)] = hv;
            used[static_cast<size_t>(hv)] = 1;
            if (edges_ok_with(fv)) self(self, fv + 1);
            used[static_cast<size_t>(hv)] = 0;
            map[static_cast<size_t>(fv)] = -1;
        }
    };
    assign(assign, 0);
    return count;
}

/// |Aut(F)|: embeddings of the forest into itself.
inline long long automorphism_count(const LabeledForest& forest) {
    std::vector<int> verts(static_cast<size_t>(forest.order));
    for (int v = 0; v < forest.order; ++v) verts[static_cast<size_t>(v)] = v;
    InducedSystem self_host = InducedSystem::from_triples(forest.order, verts, forest.edges);
    return count_labeled_embeddings(self_host, forest);
}

}  // namespace stsembed
