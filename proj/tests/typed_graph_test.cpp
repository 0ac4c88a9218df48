#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "hinbench/rng.hpp"
#include "hinbench/typed_graph.hpp"
#include "support/oracles.hpp"

using namespace hinbench;

TEST_CASE("add_node assigns dense ids and is idempotent on (type, name)") {
    TypedGraph g;
    const NodeRef a = g.add_node("A", "alice");
    CHECK(a.id == 0);
    CHECK(g.add_node("A", "alice") == a);
    const NodeRef p = g.add_node("P", "alice");  // same name, different type
    CHECK(p.id == 1);
    CHECK(p.type != a.type);
    CHECK(g.node_count() == 2);
}

TEST_CASE("add_node rejects empty labels and normalizes whitespace") {
    TypedGraph g;
    CHECK_THROWS_AS(g.add_node("", "x"), std::invalid_argument);
    CHECK_THROWS_AS(g.add_node("A", "   "), std::invalid_argument);
    const NodeRef a = g.add_node("A", "  alice  ");
    CHECK(g.name_of(a.id) == "alice");
    CHECK(g.add_node("A", "alice") == a);
    // case is preserved, not folded
    CHECK(g.add_node("A", "Alice").id != a.id);
}

TEST_CASE("add_edge dedups, rejects self-loops and keeps symmetry") {
    TypedGraph g;
    const NodeRef a1 = g.add_node("A", "a1");
    const NodeRef p1 = g.add_node("P", "p1");
    CHECK(g.add_edge(a1, p1));
    CHECK(g.edge_count() == 1);
    CHECK_FALSE(g.add_edge(a1, p1));
    CHECK_FALSE(g.add_edge(p1, a1));
    CHECK(g.edge_count() == 1);
    CHECK_THROWS_AS(g.add_edge(a1, a1), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(NodeId{0}, NodeId{99}), std::out_of_range);
    oracles::audit_graph(g);
}

TEST_CASE("neighbors_of_type returns the sorted typed subsequence") {
    TypedGraph g;
    const NodeRef a1 = g.add_node("A", "a1");
    const NodeRef p1 = g.add_node("P", "p1");
    const NodeRef p2 = g.add_node("P", "p2");
    const NodeRef v1 = g.add_node("V", "v1");
    g.add_edge(a1, p2);
    g.add_edge(a1, p1);
    g.add_edge(a1, v1);

    const auto papers = g.neighbors_of_type(a1.id, p1.type);
    REQUIRE(papers.size() == 2);
    CHECK(papers[0] == p1.id);
    CHECK(papers[1] == p2.id);
    const auto venues = g.neighbors_of_type(a1.id, v1.type);
    REQUIRE(venues.size() == 1);
    CHECK(venues[0] == v1.id);
    CHECK(g.neighbors_of_type(p1.id, v1.type).empty());
    CHECK_THROWS_AS(g.neighbors_of_type(NodeId{99}, v1.type), std::out_of_range);
}

TEST_CASE("summarize counts nodes by type and edges") {
    TypedGraph g;
    SUBCASE("empty graph") {
        const auto s = g.summarize();
        CHECK(s.nodes_by_type.empty());
        CHECK(s.edges == 0);
    }
    SUBCASE("author triangle") {
        const NodeRef a1 = g.add_node("A", "a1");
        const NodeRef a2 = g.add_node("A", "a2");
        const NodeRef a3 = g.add_node("A", "a3");
        g.add_edge(a1, a2);
        g.add_edge(a2, a3);
        g.add_edge(a1, a3);
        const auto s = g.summarize();
        CHECK(s.nodes_by_type.size() == 1);
        CHECK(s.nodes_by_type.at("A") == 3);
        CHECK(s.edges == 3);
    }
}

TEST_CASE("frozen graphs reject mutation") {
    TypedGraph g;
    const NodeRef a = g.add_node("A", "a");
    const NodeRef b = g.add_node("A", "b");
    g.add_edge(a, b);
    g.freeze();
    CHECK_THROWS_AS(g.add_node("A", "c"), std::logic_error);
    CHECK_THROWS_AS(g.add_edge(a, b), std::logic_error);
    CHECK(g.neighbors(a.id).size() == 1);
}

TEST_CASE("random graphs stay structurally sound and summarize agrees with recount") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        TypedGraph g;
        const char* types[] = {"A", "P", "V"};
        const int n = 2 + static_cast<int>(rng.next_below(40));
        std::vector<NodeRef> nodes;
        for (int i = 0; i < n; ++i)
            nodes.push_back(g.add_node(types[rng.next_below(3)], "n" + std::to_string(i)));
        std::size_t accepted = 0;
        for (int e = 0; e < 3 * n; ++e) {
            const NodeRef u = nodes[rng.next_below(nodes.size())];
            const NodeRef v = nodes[rng.next_below(nodes.size())];
            if (u.id == v.id) continue;
            if (g.add_edge(u, v)) ++accepted;
        }
        CHECK(g.edge_count() == accepted);
        oracles::audit_graph(g);

        std::size_t total_nodes = 0;
        for (const auto& [label, count] : g.summarize().nodes_by_type) total_nodes += count;
        CHECK(total_nodes == g.node_count());
    }
}

TEST_CASE("edge list round-trips bit-exact modulo line order") {
    TypedGraph g;
    const NodeRef a = g.add_node("A", "anne lee");  // names may contain spaces
    const NodeRef p = g.add_node("P", "conf/x:2001");  // and colons
    const NodeRef v = g.add_node("V", "VLDB");
    g.add_edge(a, p);
    g.add_edge(p, v);
    g.add_edge(a, v);

    std::ostringstream first;
    g.dump_edges(first);

    std::istringstream in(first.str());
    const TypedGraph g2 = TypedGraph::load_edges(in);
    CHECK(g2.summarize() == g.summarize());

    std::ostringstream second;
    g2.dump_edges(second);
    CHECK(second.str() == first.str());

    NodeRef found;
    REQUIRE(g2.find_node("P", "conf/x:2001", found));
    CHECK(g2.neighbors(found.id).size() == 2);
}

TEST_CASE("meta-path schema parsing and validation") {
    const MetaPathSchema apa = MetaPathSchema::parse("A,P,A");
    CHECK(apa.length() == 3);
    CHECK(apa.symmetric());
    CHECK(apa.to_string() == "A-P-A");
    CHECK(MetaPathSchema::parse("A-V-A").symmetric());
    CHECK_FALSE(MetaPathSchema::parse("A,P,V").symmetric());
    CHECK_THROWS_AS(MetaPathSchema::parse("A"), std::invalid_argument);

    // cyclic walk positions for A-P-A: A P A P ...
    CHECK(apa.label_at_walk_position(0) == "A");
    CHECK(apa.label_at_walk_position(1) == "P");
    CHECK(apa.label_at_walk_position(2) == "A");
    CHECK(apa.label_at_walk_position(3) == "P");

    TypedGraph g;
    g.add_node("A", "a");
    CHECK_THROWS_AS(apa.resolve(g), std::invalid_argument);
    g.add_node("P", "p");
    CHECK(apa.resolve(g).size() == 3);
}
