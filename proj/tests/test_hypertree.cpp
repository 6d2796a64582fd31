#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "stsembed/hypertree.hpp"

using namespace stsembed;

namespace {

GraphTree path3() { return GraphTree{3, {{0, 1}, {1, 2}}}; }

GraphTree star_k13() { return GraphTree{4, {{0, 1}, {0, 2}, {0, 3}}}; }

// Edges {u,v1,w1}, {u,v2,w2}, {w1,x,y}: a subdivision tree on 7 vertices
// with two disjoint edges, which no 7-point triple system can host.
Hypertree counterexample_s3() {
    // u=0, v1=1, w1=2, v2=3, w2=4, x=5, y=6
    return Hypertree(7, {{0, 1, 2}, {0, 3, 4}, {2, 5, 6}});
}

}  // namespace

TEST_CASE("subdivide a path") {
    auto t = Hypertree::subdivide(path3());
    CHECK(t.order() == 5);
    REQUIRE(t.size() == 2);
    CHECK(t.edges()[0] == sorted_triple(0, 1, 3));
    CHECK(t.edges()[1] == sorted_triple(1, 2, 4));
}

TEST_CASE("subdivide a single edge") {
    auto t = Hypertree::subdivide(GraphTree::single_edge());
    CHECK(t.order() == 3);
    REQUIRE(t.size() == 1);
    CHECK(t.edges()[0] == Triple{0, 1, 2});
}

TEST_CASE("subdivide a claw") {
    auto t = Hypertree::subdivide(star_k13());
    CHECK(t.order() == 7);
    CHECK(t.size() == 3);
    CHECK(t.degree(0) == 3);
    for (int v = 1; v < 7; ++v) CHECK(t.degree(v) == 1);
    CHECK(t.is_subdivision_tree());
}

TEST_CASE("validate_hypertree classifies violations") {
    SECTION("a subdivided path is fine") {
        CHECK_FALSE(Hypertree::check(Hypertree::subdivide(path3()).edges(), 5).has_value());
    }
    SECTION("two edges sharing two vertices form a cycle") {
        auto v = Hypertree::check({{0, 1, 2}, {0, 1, 3}}, 5);
        REQUIRE(v.has_value());
        CHECK(v->kind == HypertreeViolation::Kind::Cycle);
    }
    SECTION("disjoint edges are disconnected") {
        auto v = Hypertree::check({{0, 1, 2}, {3, 4, 5}}, 6);
        REQUIRE(v.has_value());
        CHECK(v->kind == HypertreeViolation::Kind::Disconnected);
    }
    SECTION("a loose cycle has too many edges for its order") {
        auto v = Hypertree::check({{0, 1, 2}, {2, 3, 4}, {4, 5, 0}}, 6);
        REQUIRE(v.has_value());
        CHECK(v->kind == HypertreeViolation::Kind::SizeMismatch);
    }
    SECTION("a dangling vertex reads as disconnection") {
        auto v = Hypertree::check({{0, 1, 2}}, 5);
        REQUIRE(v.has_value());
        CHECK(v->kind == HypertreeViolation::Kind::Disconnected);
    }
    SECTION("malformed edge") {
        auto v = Hypertree::check({{0, 1, 1}, {1, 2, 3}}, 5);
        REQUIRE(v.has_value());
        CHECK(v->kind == HypertreeViolation::Kind::MalformedEdge);
    }
}

TEST_CASE("is_subdivision_tree") {
    CHECK(Hypertree::subdivide(star_k13()).is_subdivision_tree());
    CHECK(counterexample_s3().is_subdivision_tree());
    // Middle edge {0,1,2} has all three vertices of degree two.
    Hypertree non_subdiv(9, {{0, 1, 2}, {0, 3, 4}, {1, 5, 6}, {2, 7, 8}});
    CHECK_FALSE(non_subdiv.is_subdivision_tree());
}

TEST_CASE("random_bounded_tree obeys its degree bound") {
    SECTION("order two is the single edge") {
        auto t = random_bounded_tree(2, 2, 7);
        REQUIRE(t.edges.size() == 1);
    }
    SECTION("degree census at d=3") {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            auto t = random_bounded_tree(50, 3, seed);
            REQUIRE(t.valid());
            for (int deg : t.degrees()) CHECK(deg <= 3);
        }
    }
    SECTION("d=2 forces a path") {
        auto t = random_bounded_tree(10, 2, 5);
        REQUIRE(t.valid());
        auto deg = t.degrees();
        CHECK(std::count(deg.begin(), deg.end(), 1) == 2);
        CHECK(std::count(deg.begin(), deg.end(), 2) == 8);
    }
    SECTION("deterministic per seed") {
        auto a = random_bounded_tree(40, 4, 123);
        auto b = random_bounded_tree(40, 4, 123);
        CHECK(a.edges == b.edges);
    }
    CHECK_THROWS_AS(random_bounded_tree(5, 1, 0), std::invalid_argument);
}

TEST_CASE("annotate the subdivided claw") {
    auto t = Hypertree::subdivide(star_k13());
    auto ann = annotate(t);
    CHECK(ann.root == 0);
    CHECK(ann.red(0));
    for (int v = 1; v < 7; ++v) CHECK_FALSE(ann.red(v));
    CHECK(ann.progeny_size[0] == 7);
    // Every edge holds two degree-one vertices; the smaller label wins celibacy.
    for (size_t e = 0; e < t.edges().size(); ++e) {
        int smallest_leaf = 7;
        for (int v : t.edges()[e])
            if (t.degree(v) == 1) smallest_leaf = std::min(smallest_leaf, v);
        CHECK(ann.celibate_of_edge[e] == smallest_leaf);
    }
}

TEST_CASE("annotate the single edge") {
    auto t = Hypertree::subdivide(GraphTree::single_edge());
    auto ann = annotate(t);
    CHECK(ann.root == 0);
    CHECK(ann.red(0));
    CHECK_FALSE(ann.red(1));
    CHECK_FALSE(ann.red(2));
    int celibates = 0;
    for (int v = 0; v < 3; ++v) celibates += ann.is_celibate[static_cast<size_t>(v)];
    CHECK(celibates == 1);
    CHECK_FALSE(ann.is_celibate[0]);  // never the root
}

TEST_CASE("annotate the subdivided path rooted at the middle") {
    auto t = Hypertree::subdivide(path3());  // vertices a=0 b=1 c=2, z_ab=3, z_bc=4
    auto ann = annotate(t, 1);
    CHECK(ann.root == 1);
    CHECK(ann.red(1));
    for (int v : {0, 2, 3, 4}) CHECK_FALSE(ann.red(v));
    CHECK(ann.progeny_size[1] == 5);
    CHECK(ann.father[0] == 1);
    CHECK(ann.father[3] == 1);
}

TEST_CASE("annotate rejects a degree-one root when alternatives exist") {
    auto t = Hypertree::subdivide(path3());
    CHECK_THROWS_AS(annotate(t, 0), std::invalid_argument);
}

TEST_CASE("coloring properties on random subdivision trees") {
    int celibate_ties_seen = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const int order = 2 + static_cast<int>(seed % 39);
        const int d = 2 + static_cast<int>(seed % 4);
        auto t = Hypertree::subdivide(random_bounded_tree(order, d, seed));
        CAPTURE(seed, order, d);
        REQUIRE_FALSE(Hypertree::check(t.edges(), t.order()).has_value());
        REQUIRE(t.is_subdivision_tree());
        auto ann = annotate(t);
        REQUIRE(ann.progeny_size[static_cast<size_t>(ann.root)] == t.order());
        for (size_t e = 0; e < t.edges().size(); ++e) {
            int reds = 0, celibates = 0;
            for (int v : t.edges()[e]) {
                reds += ann.red(v);
                celibates += (ann.celibate_of_edge[e] == v);
            }
            REQUIRE(reds == 1);  // exactly one red per edge
            REQUIRE(celibates == 1);
            REQUIRE(t.degree(ann.celibate_of_edge[e]) == 1);
            int degree_one = 0;
            for (int v : t.edges()[e]) degree_one += (t.degree(v) == 1);
            celibate_ties_seen += (degree_one >= 2);
        }
        // No two red vertices are adjacent.
        for (const Triple& e : t.edges()) {
            REQUIRE(ann.red(e[0]) + ann.red(e[1]) + ann.red(e[2]) <= 1);
        }
    }
    CHECK(celibate_ties_seen > 0);  // the tie-break rule was exercised
}

TEST_CASE("HT v1 and GT v1 round trips") {
    auto g = random_bounded_tree(12, 3, 99);
    auto g2 = GraphTree::parse_text(g.to_text());
    CHECK(g2.edges == g.edges);

    auto t = Hypertree::subdivide(g);
    auto t2 = Hypertree::parse_text(t.to_text());
    CHECK(t2.edges() == t.edges());
    CHECK(t2.order() == t.order());

    CHECK_THROWS_AS(Hypertree::parse_text("5\n0 1 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(GraphTree::parse_text("3\n0 1\n0 1\n"), std::invalid_argument);
}
