#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "stsembed/hypertree.hpp"

namespace stsembed {

/// Canonical description of a fragment up to hypergraph isomorphism: a key
/// (equal keys iff isomorphic) plus a relabeling of the fragment onto
/// canonical vertices 0..p-1.
struct CanonicalForm {
    std::string key;
    std::vector<Triple> edges;                 // canonical labels, sorted
    std::unordered_map<int, int> to_canonical; // original label -> canonical label

    int order() const { return static_cast<int>(to_canonical.size()); }

    Fragment representative() const {
        Fragment rep;
        rep.vertices.resize(to_canonical.size());
        std::iota(rep.vertices.begin(), rep.vertices.end(), 0);
        rep.edges = edges;
        return rep;
    }
};

namespace detail {

// Tree encoding over the vertex-edge incidence tree: a node's code is its
// type tag followed by the sorted codes of its children. Equal codes from
// equal roots characterize rooted isomorphism, and minimizing over vertex
// roots makes the code a free-isomorphism invariant.
class IncidenceEncoder {
public:
    explicit IncidenceEncoder(const Fragment& frag) {
        p_ = static_cast<int>(frag.vertices.size());
        q_ = static_cast<int>(frag.edges.size());
        index_.reserve(frag.vertices.size());
        for (int i = 0; i < p_; ++i) index_[frag.vertices[static_cast<size_t>(i)]] = i;
        adj_.assign(static_cast<size_t>(p_ + q_), {});
        for (int j = 0; j < q_; ++j) {
            const Triple& e = frag.edges[static_cast<size_t>(j)];
            for (int v : e) {
                auto it = index_.find(v);
                if (it == index_.end()) throw std::invalid_argument("fragment edge uses a vertex not in the fragment");
                adj_[static_cast<size_t>(p_ + j)].push_back(it->second);
                adj_[static_cast<size_t>(it->second)].push_back(p_ + j);
            }
        }
    }

    int vertex_nodes() const { return p_; }
    const std::unordered_map<int, int>& index() const { return index_; }

    std::string encode(int node, int parent) const {
        std::vector<std::string> kids;
        for (int nb : adj_[static_cast<size_t>(node)]) {
            if (nb != parent) kids.push_back(encode(nb, node));
        }
        std::sort(kids.begin(), kids.end());
        std::string out;
        out.reserve(2 + kids.size() * 4);
        out.push_back('(');
        out.push_back(node < p_ ? 'v' : 'e');
        for (const std::string& k : kids) out += k;
        out.push_back(')');
        return out;
    }

    // Preorder canonical numbering of vertex nodes from `root`, children
    // visited in sorted code order (ties broken by node id; tied siblings
    // have isomorphic subtrees, so the resulting edge list is unaffected).
    void number(int node, int parent, std::vector<int>& canon, int& next) const {
        if (node < p_) canon[static_cast<size_t>(node)] = next++;
        std::vector<std::pair<std::string, int>> kids;
        for (int nb : adj_[static_cast<size_t>(node)]) {
            if (nb != parent) kids.push_back({encode(nb, node), nb});
        }
        std::sort(kids.begin(), kids.end());
        for (auto& [code, kid] : kids) number(kid, node, canon, next);
    }

private:
    int p_ = 0;
    int q_ = 0;
    std::unordered_map<int, int> index_;
    std::vector<std::vector<int>> adj_;
};

}  // namespace detail

inline CanonicalForm canonical_form(const Fragment& frag) {
    if (frag.vertices.empty()) throw std::invalid_argument("canonical_form: empty fragment");
    detail::IncidenceEncoder enc(frag);
    const int p = enc.vertex_nodes();

    int best_root = 0;
    std::string best;
    for (int v = 0; v < p; ++v) {
        std::string code = enc.encode(v, -1);
        if (v == 0 || code < best) {
            best = std::move(code);
            best_root = v;
        }
    }

    CanonicalForm form;
    form.key = best;
    std::vector<int> canon(static_cast<size_t>(p), -1);
    int next = 0;
    enc.number(best_root, -1, canon, next);
    for (const auto& [orig, local] : enc.index()) form.to_canonical[orig] = canon[static_cast<size_t>(local)];
    for (const Triple& e : frag.edges) {
        form.edges.push_back(sorted_triple(form.to_canonical.at(e[0]), form.to_canonical.at(e[1]),
                                           form.to_canonical.at(e[2])));
    }
    std::sort(form.edges.begin(), form.edges.end());
    return form;
}

/// Equal keys iff the fragments are isomorphic hypergraphs.
inline std::string canonical_key(const Fragment& frag) { return canonical_form(frag).key; }

}  // namespace stsembed
