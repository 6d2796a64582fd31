#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace stsembed {

using Triple = std::array<int, 3>;

inline Triple sorted_triple(int a, int b, int c) {
    Triple t{a, b, c};
    if (t[0] > t[1]) std::swap(t[0], t[1]);
    if (t[1] > t[2]) std::swap(t[1], t[2]);
    if (t[0] > t[1]) std::swap(t[0], t[1]);
    return t;
}

inline bool admissible_sts_order(long long m) {
    return m >= 3 && (m % 6 == 1 || m % 6 == 3);
}

struct DesignViolation {
    enum class Kind { MalformedTriple, UncoveredPair, DoublyCoveredPair, BadVertexCount };
    Kind kind;
    std::string message;
};

struct ValidationReport {
    std::optional<DesignViolation> violation;  // empty == ok
    int uncovered_pairs = 0;

    bool ok() const { return !violation.has_value(); }
};

/// Triple system on vertices 0..m-1 with a flat triangular pair->third-vertex
/// index. Complete systems (every pair covered exactly once) are Steiner
/// triple systems; partial ones are allowed only as explicitly requested
/// fixtures and answer third_vertex with "no edge".
class SteinerTripleSystem {
public:
    static constexpr int kNoVertex = -1;

    SteinerTripleSystem() = default;

    int order() const { return m_; }
    const std::vector<Triple>& triples() const { return triples_; }
    bool complete() const { return complete_; }

    /// Edge indices incident to v.
    const std::vector<int>& incident(int v) const { return incidence_[static_cast<size_t>(v)]; }

    int degree(int v) const { return static_cast<int>(incidence_[static_cast<size_t>(v)].size()); }

    /// The unique z with {x,y,z} an edge, or kNoVertex for partial systems
    /// when the pair is uncovered. Throws on x == y or out-of-range labels.
    int third_vertex(int x, int y) const {
        if (x == y) throw std::invalid_argument("third_vertex: x == y");
        check_vertex(x);
        check_vertex(y);
        return pair_third_[pair_slot(x, y)];
    }

    bool has_triple(int a, int b, int c) const {
        if (a == b || a == c || b == c) return false;
        return third_vertex(a, b) == c;
    }

    /// Bose construction for m = 3 (mod 6): vertices are (i,k) with i in the
    /// cyclic group of odd order q = m/3 and k in {0,1,2}, labeled i + q*k.
    static SteinerTripleSystem build_bose(int m) {
        if (m < 3 || m % 6 != 3) throw std::invalid_argument("build_bose: m must be >= 3 and congruent to 3 mod 6");
        const int q = m / 3;  // odd
        const int half = (q + 1) / 2;  // multiplicative inverse of 2 mod q
        std::vector<Triple> ts;
        ts.reserve(static_cast<size_t>(m) * (m - 1) / 6);
        auto lab = [q](int i, int k) { return i + q * k; };
        for (int i = 0; i < q; ++i) ts.push_back(sorted_triple(lab(i, 0), lab(i, 1), lab(i, 2)));
        for (int i = 0; i < q; ++i) {
            for (int j = i + 1; j < q; ++j) {
                const int mid = static_cast<int>((static_cast<long long>(i + j) * half) % q);
                for (int k = 0; k < 3; ++k) {
                    ts.push_back(sorted_triple(lab(i, k), lab(j, k), lab(mid, (k + 1) % 3)));
                }
            }
        }
        return from_triples(m, ts, true);
    }

    /// Skolem construction for m = 1 (mod 6): one point at infinity plus
    /// (i,k) over a half-idempotent commutative quasigroup of order 2n,
    /// n = (m-1)/6. Labels: (i,k) -> i + 2n*k, infinity -> m-1.
    static SteinerTripleSystem build_skolem(int m) {
        if (m < 7 || m % 6 != 1) throw std::invalid_argument("build_skolem: m must be >= 7 and congruent to 1 mod 6");
        const int n = (m - 1) / 6;
        const int g = 2 * n;
        const int inf = m - 1;
        // x*y = h((x+y) mod 2n) with h(2j)=j, h(2j+1)=n+j gives a commutative
        // quasigroup with i*i = i for i < n and (n+i)*(n+i) = i.
        auto op = [n, g](int x, int y) {
            const int s = (x + y) % g;
            return (s % 2 == 0) ? s / 2 : n + (s - 1) / 2;
        };
        auto lab = [g](int i, int k) { return i + g * k; };
        std::vector<Triple> ts;
        ts.reserve(static_cast<size_t>(m) * (m - 1) / 6);
        for (int i = 0; i < n; ++i) ts.push_back(sorted_triple(lab(i, 0), lab(i, 1), lab(i, 2)));
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < 3; ++k) {
                ts.push_back(sorted_triple(inf, lab(n + i, k), lab(i, (k + 1) % 3)));
            }
        }
        for (int i = 0; i < g; ++i) {
            for (int j = i + 1; j < g; ++j) {
                for (int k = 0; k < 3; ++k) {
                    ts.push_back(sorted_triple(lab(i, k), lab(j, k), lab(op(i, j), (k + 1) % 3)));
                }
            }
        }
        return from_triples(m, ts, true);
    }

    /// Deterministic constructor choice by residue class.
    static SteinerTripleSystem build(int m) {
        if (m % 6 == 3) return build_bose(m);
        if (m % 6 == 1 && m >= 7) return build_skolem(m);
        throw std::invalid_argument("build: no Steiner triple system of order " + std::to_string(m));
    }

    /// Builds the indexed structure from a raw triple list. When
    /// require_complete is set the list must pass validate().
    static SteinerTripleSystem from_triples(int m, std::vector<Triple> ts, bool require_complete) {
        ValidationReport rep = validate(ts, m);
        if (rep.violation && rep.violation->kind == DesignViolation::Kind::MalformedTriple)
            throw std::invalid_argument("from_triples: " + rep.violation->message);
        if (require_complete && !rep.ok())
            throw std::invalid_argument("from_triples: not a Steiner triple system: " + rep.violation->message);
        SteinerTripleSystem s;
        s.m_ = m;
        for (auto& t : ts) t = sorted_triple(t[0], t[1], t[2]);
        s.triples_ = std::move(ts);
        s.complete_ = rep.ok();
        s.pair_third_.assign(static_cast<size_t>(m) * (m - 1) / 2, kNoVertex);
        s.incidence_.assign(static_cast<size_t>(m), {});
        for (size_t e = 0; e < s.triples_.size(); ++e) {
            const Triple& t = s.triples_[e];
            s.pair_third_[s.pair_slot(t[0], t[1])] = t[2];
            s.pair_third_[s.pair_slot(t[0], t[2])] = t[1];
            s.pair_third_[s.pair_slot(t[1], t[2])] = t[0];
            for (int v : t) s.incidence_[static_cast<size_t>(v)].push_back(static_cast<int>(e));
        }
        return s;
    }

    /// Checks the defining property: every unordered pair of {0..m-1} is
    /// covered by exactly one triple. Reports the first malformed triple,
    /// doubly-covered pair, or uncovered pair.
    static ValidationReport validate(const std::vector<Triple>& ts, int m) {
        ValidationReport rep;
        if (m < 1) {
            rep.violation = {DesignViolation::Kind::BadVertexCount, "vertex count must be positive"};
            return rep;
        }
        for (size_t e = 0; e < ts.size(); ++e) {
            const Triple& t = ts[e];
            for (int v : t) {
                if (v < 0 || v >= m) {
                    rep.violation = {DesignViolation::Kind::MalformedTriple,
                                     "triple " + std::to_string(e) + " has out-of-range vertex " + std::to_string(v)};
                    return rep;
                }
            }
            if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2]) {
                rep.violation = {DesignViolation::Kind::MalformedTriple,
                                 "triple " + std::to_string(e) + " repeats a vertex"};
                return rep;
            }
        }
        std::vector<signed char> covered(static_cast<size_t>(m) * (m - 1) / 2, 0);
        auto slot = [m](int x, int y) {
            if (x > y) std::swap(x, y);
            return static_cast<size_t>(y) * (y - 1) / 2 + x;
        };
        (void)m;
        for (const Triple& t : ts) {
            for (auto [x, y] : {std::pair{t[0], t[1]}, std::pair{t[0], t[2]}, std::pair{t[1], t[2]}}) {
                if (covered[slot(x, y)]++) {
                    rep.violation = {DesignViolation::Kind::DoublyCoveredPair,
                                     "pair {" + std::to_string(x) + "," + std::to_string(y) + "} covered twice"};
                    return rep;
                }
            }
        }
        int uncovered = 0;
        int fx = -1, fy = -1;
        for (int y = 1; y < m; ++y) {
            for (int x = 0; x < y; ++x) {
                if (!covered[slot(x, y)]) {
                    if (uncovered == 0) { fx = x; fy = y; }
                    ++uncovered;
                }
            }
        }
        if (uncovered > 0) {
            rep.uncovered_pairs = uncovered;
            rep.violation = {DesignViolation::Kind::UncoveredPair,
                             "pair {" + std::to_string(fx) + "," + std::to_string(fy) + "} uncovered (" +
                                 std::to_string(uncovered) + " uncovered pairs total)"};
        }
        return rep;
    }

    // ---- "STS v1" text format: first line m, then one triple per line. ----

    std::string to_text() const {
        std::ostringstream out;
        out << m_ << "\n";
        for (const Triple& t : triples_) out << t[0] << ' ' << t[1] << ' ' << t[2] << "\n";
        return out.str();
    }

    static SteinerTripleSystem parse_text(const std::string& text, bool allow_partial = false) {
        std::istringstream in(text);
        std::string line;
        int m = -1;
        std::vector<Triple> ts;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ls(line);
            if (m < 0) {
                if (!(ls >> m) || m < 1) throw std::invalid_argument("STS v1 line " + std::to_string(lineno) + ": expected vertex count");
                continue;
            }
            int a, b, c;
            if (!(ls >> a >> b >> c))
                throw std::invalid_argument("STS v1 line " + std::to_string(lineno) + ": expected three integers");
            ts.push_back({a, b, c});
        }
        if (m < 0) throw std::invalid_argument("STS v1: empty input");
        return from_triples(m, std::move(ts), !allow_partial);
    }

private:
    size_t pair_slot(int x, int y) const {
        if (x > y) std::swap(x, y);
        return static_cast<size_t>(y) * (y - 1) / 2 + x;
    }

    void check_vertex(int v) const {
        if (v < 0 || v >= m_) throw std::out_of_range("vertex label out of range");
    }

    int m_ = 0;
    std::vector<Triple> triples_;
    std::vector<int> pair_third_;
    std::vector<std::vector<int>> incidence_;
    bool complete_ = false;
};

/// A triple system restricted to a vertex subset of a host system, keeping
/// host labels. Used for the reservoir complement and as a generic packing
/// host in tests.
struct InducedSystem {
    int host_order = 0;
    std::vector<int> vertices;              // sorted host labels
    std::vector<Triple> triples;            // host labels
    std::vector<std::vector<int>> incident; // host label -> triple indices (empty for non-members)
    std::vector<char> member;               // host label -> membership flag

    static InducedSystem from_triples(int host_order, std::vector<int> verts, std::vector<Triple> ts) {
        InducedSystem sys;
        sys.host_order = host_order;
        sys.vertices = std::move(verts);
        sys.triples = std::move(ts);
        sys.incident.assign(static_cast<size_t>(host_order), {});
        sys.member.assign(static_cast<size_t>(host_order), 0);
        for (int v : sys.vertices) sys.member[static_cast<size_t>(v)] = 1;
        for (size_t e = 0; e < sys.triples.size(); ++e) {
            for (int v : sys.triples[e]) sys.incident[static_cast<size_t>(v)].push_back(static_cast<int>(e));
        }
        return sys;
    }

    size_t vertex_count() const { return vertices.size(); }
    bool contains(int v) const { return v >= 0 && v < host_order && member[static_cast<size_t>(v)]; }
};

}  // namespace stsembed
