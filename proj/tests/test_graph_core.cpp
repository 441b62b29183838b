#include <doctest.h>

#include <sstream>

#include "mbsim/graph_core.hpp"
#include "mbsim/rng.hpp"

using namespace mbsim;

TEST_CASE("fresh boards have the right free-edge counts") {
    GameGraph k4(Board::complete(4));
    CHECK(k4.universe_size() == 6);
    CHECK(k4.free_count() == 6);
    for (int v = 0; v < 4; ++v) CHECK(k4.free_degree(v) == 3);

    GameGraph b33(Board::bipartite(3, 3));
    CHECK(b33.universe_size() == 9);
    CHECK(b33.free_count() == 9);

    GameGraph k1(Board::complete(1));
    CHECK(k1.universe_size() == 0);
}

TEST_CASE("invalid boards are rejected") {
    CHECK_THROWS_AS(Board::complete(0), InvalidBoard);
    CHECK_THROWS_AS(Board::bipartite(0, 3), InvalidBoard);
    CHECK_THROWS_AS(Board::bipartite(2, 0), InvalidBoard);
}

TEST_CASE("claim updates exactly one edge") {
    GameGraph g(Board::complete(4));
    g.claim(0, 1, Owner::Maker);
    CHECK(g.maker_degree(0) == 1);
    CHECK(g.free_degree(0) == 2);
    CHECK(g.maker_count() == 1);
    CHECK(g.free_count() == 5);
    g.check_invariants();

    CHECK_THROWS_AS(g.claim(0, 1, Owner::Breaker), AlreadyClaimed);
    CHECK_THROWS_AS(g.claim(1, 0, Owner::Maker), AlreadyClaimed);

    GameGraph b(Board::bipartite(2, 2));
    CHECK_THROWS_AS(b.claim(0, 1, Owner::Maker), NotAnEdge);  // inside a part
    CHECK_THROWS_AS(b.claim(2, 3, Owner::Maker), NotAnEdge);
}

TEST_CASE("free_edges_between") {
    GameGraph g(Board::complete(4));
    auto edges = g.free_edges_between({0}, {1, 2});
    CHECK(edges.size() == 2);

    g.claim(0, 1, Owner::Breaker);
    edges = g.free_edges_between({0}, {1, 2});
    CHECK(edges.size() == 1);
    CHECK(edges[0] == std::pair<int, int>{0, 2});

    CHECK(g.free_edges_between({0}, {0}).empty());  // no self-loops
}

TEST_CASE("ownership classes partition every vertex pair") {
    GameGraph g(Board::complete(7));
    Rng rng(99);
    for (int i = 0; i < 12; ++i) {
        long long id = g.free_edge_at(static_cast<long long>(rng.below(g.free_count())));
        g.claim_by_id(id, i % 2 ? Owner::Maker : Owner::Breaker);
        g.check_invariants();
    }
    std::vector<int> xs{0, 2, 4}, ys{1, 2, 5};
    auto free_part = g.free_edges_between(xs, ys);
    PlainGraph maker = g.owner_subgraph(Owner::Maker);
    PlainGraph breaker = g.owner_subgraph(Owner::Breaker);
    // count all pairs meeting both sets, then compare against the pieces
    int total = 0, maker_cnt = 0, breaker_cnt = 0;
    std::vector<uint8_t> in_x(7, 0), in_y(7, 0);
    for (int v : xs) in_x[v] = 1;
    for (int v : ys) in_y[v] = 1;
    for (int u = 0; u < 7; ++u)
        for (int v = u + 1; v < 7; ++v) {
            bool meets = (in_x[u] || in_x[v]) && (in_y[u] || in_y[v]) && (in_x[u] || in_y[u]) &&
                         (in_x[v] || in_y[v]);
            if (!meets) continue;
            ++total;
            if (maker.has_edge(u, v)) ++maker_cnt;
            if (breaker.has_edge(u, v)) ++breaker_cnt;
        }
    CHECK(total == static_cast<int>(free_part.size()) + maker_cnt + breaker_cnt);
}

TEST_CASE("owner_subgraph views") {
    GameGraph g(Board::complete(5));
    CHECK(g.owner_subgraph(Owner::Maker).edges.empty());
    g.claim(0, 1, Owner::Maker);
    g.claim(1, 2, Owner::Maker);
    g.claim(0, 2, Owner::Maker);
    PlainGraph m = g.owner_subgraph(Owner::Maker);
    CHECK(m.edges.size() == 3);
    CHECK(m.degree(0) == 2);
    CHECK(m.degree(3) == 0);
}

TEST_CASE("replaying claims reproduces the position byte for byte") {
    Board board = Board::bipartite(6, 6);
    GameGraph g(board);
    Rng rng(1234);
    std::vector<std::pair<long long, Owner>> log;
    for (int i = 0; i < 20; ++i) {
        long long id = g.free_edge_at(static_cast<long long>(rng.below(g.free_count())));
        Owner who = (i % 3 == 0) ? Owner::Maker : Owner::Breaker;
        g.claim_by_id(id, who);
        log.emplace_back(id, who);
    }
    GameGraph h(board);
    for (auto [id, who] : log) h.claim_by_id(id, who);
    std::ostringstream a, b;
    g.save(a);
    h.save(b);
    CHECK(a.str() == b.str());
}

TEST_CASE("edge-list text round-trip") {
    GameGraph g(Board::complete(6));
    g.claim(0, 5, Owner::Maker);
    g.claim(2, 3, Owner::Breaker);
    std::ostringstream out;
    g.save(out);
    std::istringstream in(out.str());
    GameGraph h = GameGraph::load(in);
    CHECK(h.owner(0, 5) == Owner::Maker);
    CHECK(h.owner(2, 3) == Owner::Breaker);
    CHECK(h.free_count() == g.free_count());
    std::ostringstream out2;
    h.save(out2);
    CHECK(out.str() == out2.str());
}
