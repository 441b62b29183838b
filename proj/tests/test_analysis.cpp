#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "mbsim/analysis.hpp"
#include "mbsim/rng.hpp"

using namespace mbsim;
using namespace mbsim::analysis;

namespace {

PlainGraph cycle_graph(int n) {
    PlainGraph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

PlainGraph path_graph(int n) {
    PlainGraph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

PlainGraph petersen() {
    PlainGraph g(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i, i + 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
    }
    return g;
}

PlainGraph complete_graph(int n) {
    PlainGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

PlainGraph random_graph(int n, double p, uint64_t seed) {
    PlainGraph g(n);
    Rng rng(seed);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.unit() < p) g.add_edge(u, v);
    return g;
}

bool cut_disconnects(const PlainGraph& g, const std::vector<int>& cut) {
    std::vector<uint8_t> removed(g.n, 0);
    for (int v : cut) removed[v] = 1;
    int start = -1, remaining = 0;
    for (int v = 0; v < g.n; ++v)
        if (!removed[v]) {
            if (start == -1) start = v;
            ++remaining;
        }
    if (start == -1) return false;
    std::vector<int> stack{start};
    std::vector<uint8_t> seen(g.n, 0);
    seen[start] = 1;
    int visited = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.adj[v])
            if (!removed[w] && !seen[w]) {
                seen[w] = 1;
                ++visited;
                stack.push_back(w);
            }
    }
    return visited < remaining;
}

}  // namespace

TEST_CASE("hamiltonicity: cycles, paths, Petersen") {
    auto c5 = is_hamiltonian(cycle_graph(5));
    CHECK(c5.verdict == Verdict::Yes);
    CHECK(validate_hamilton_cycle(cycle_graph(5), c5.cycle));

    CHECK(is_hamiltonian(path_graph(5)).verdict == Verdict::No);
    CHECK(is_hamiltonian(petersen()).verdict == Verdict::No);
}

TEST_CASE("hamiltonicity: degree certificates beyond the search cap") {
    // K_30 minus a perfect matching: min degree 28 >= 15.
    PlainGraph g(30);
    for (int u = 0; u < 30; ++u)
        for (int v = u + 1; v < 30; ++v)
            if (!(v == u + 15)) g.add_edge(u, v);
    auto rep = is_hamiltonian(g);
    CHECK(rep.verdict == Verdict::Yes);
    CHECK(validate_hamilton_cycle(g, rep.cycle));

    // sparse 30-vertex cycle: beyond the exact cap, no certificate
    CHECK(is_hamiltonian(cycle_graph(30)).verdict == Verdict::Unevaluated);
}

TEST_CASE("closure certificate agrees with exact search at small sizes") {
    for (uint64_t seed = 1; seed <= 60; ++seed) {
        PlainGraph g = random_graph(9, 0.55, seed);
        if (closure_complete(g)) {
            auto rep = is_hamiltonian(g, {24, 24});
            CHECK(rep.verdict == Verdict::Yes);
        }
    }
}

TEST_CASE("matchings") {
    PlainGraph k33(6);
    for (int u = 0; u < 3; ++u)
        for (int v = 3; v < 6; ++v) k33.add_edge(u, v);
    auto rep = has_matching_of_size(k33, 3);
    CHECK(rep.verdict == Verdict::Yes);
    CHECK(rep.matching.size() == 3);

    PlainGraph star(4);
    star.add_edge(0, 1);
    star.add_edge(0, 2);
    star.add_edge(0, 3);
    CHECK(has_matching_of_size(star, 2).verdict == Verdict::No);

    CHECK(has_matching_of_size(cycle_graph(6), 3).verdict == Verdict::Yes);
    // odd cycle: non-bipartite exact route
    CHECK(has_matching_of_size(cycle_graph(7), 3).verdict == Verdict::Yes);
    CHECK(has_matching_of_size(cycle_graph(7), 4).verdict == Verdict::No);
}

TEST_CASE("hall violators") {
    std::vector<int> left{0, 1, 2}, right{3, 4, 5};
    PlainGraph pm(6);
    pm.add_edge(0, 3);
    pm.add_edge(1, 4);
    pm.add_edge(2, 5);
    CHECK(!hall_violator(pm, left, right).has_value());

    PlainGraph crowded(6);
    crowded.add_edge(0, 3);
    crowded.add_edge(1, 3);
    crowded.add_edge(2, 3);
    crowded.add_edge(2, 4);
    crowded.add_edge(2, 5);
    auto viol = hall_violator(crowded, left, right);
    REQUIRE(viol.has_value());
    // verify the witness: |N(X)| < |X|
    std::set<int> nbrs;
    for (int v : *viol)
        for (int w : crowded.adj[v]) nbrs.insert(w);
    CHECK(nbrs.size() < viol->size());
}

TEST_CASE("dense pseudo-random bipartite graphs have perfect matchings") {
    // parts of size 10, minimum degree >= eps*n and no empty eps*n x eps*n
    // pair, checked by construction: complete bipartite minus a matching
    const int n = 10;
    PlainGraph g(2 * n);
    std::vector<int> left, right;
    for (int u = 0; u < n; ++u) left.push_back(u);
    for (int v = n; v < 2 * n; ++v) right.push_back(v);
    for (int u = 0; u < n; ++u)
        for (int v = n; v < 2 * n; ++v)
            if (v - n != u) g.add_edge(u, v);
    CHECK(!hall_violator(g, left, right).has_value());
    CHECK(has_matching_of_size(g, n).verdict == Verdict::Yes);
}

TEST_CASE("konig duality on random bipartite graphs") {
    for (uint64_t seed = 1; seed <= 200; ++seed) {
        const int n = 2 + static_cast<int>(seed % 5);
        PlainGraph g(2 * n);
        Rng rng(splitmix64(seed));
        std::vector<int> left, right;
        for (int u = 0; u < n; ++u) left.push_back(u);
        for (int v = n; v < 2 * n; ++v) right.push_back(v);
        for (int u = 0; u < n; ++u)
            for (int v = n; v < 2 * n; ++v)
                if (rng.unit() < 0.4) g.add_edge(u, v);
        bool pm = has_matching_of_size(g, n).verdict == Verdict::Yes;
        bool none = !hall_violator(g, left, right).has_value();
        CHECK(pm == none);
    }
}

TEST_CASE("k-connectivity") {
    CHECK(k_connected(complete_graph(5), 4).verdict == Verdict::Yes);
    CHECK(k_connected(cycle_graph(6), 2).verdict == Verdict::Yes);
    auto c6 = k_connected(cycle_graph(6), 3);
    CHECK(c6.verdict == Verdict::No);
    CHECK(c6.cut.size() < 3);
    CHECK(cut_disconnects(cycle_graph(6), c6.cut));

    PlainGraph bowtie(5);  // two triangles sharing vertex 2
    bowtie.add_edge(0, 1);
    bowtie.add_edge(0, 2);
    bowtie.add_edge(1, 2);
    bowtie.add_edge(2, 3);
    bowtie.add_edge(2, 4);
    bowtie.add_edge(3, 4);
    auto rep = k_connected(bowtie, 2);
    CHECK(rep.verdict == Verdict::No);
    REQUIRE(rep.cut.size() == 1);
    CHECK(rep.cut[0] == 2);
    CHECK(cut_disconnects(bowtie, rep.cut));
}

TEST_CASE("k-connectivity vs a brute-force cut search") {
    for (uint64_t seed = 1; seed <= 40; ++seed) {
        PlainGraph g = random_graph(8, 0.45, splitmix64(seed * 7));
        for (int k = 1; k <= 3; ++k) {
            auto rep = k_connected(g, k);
            // brute force: try all vertex subsets of size < k
            bool brute_connected_enough = g.n > k;
            if (brute_connected_enough) {
                for (int mask = 0; mask < (1 << g.n) && brute_connected_enough; ++mask) {
                    if (__builtin_popcount(mask) >= k) continue;
                    std::vector<int> cut;
                    for (int v = 0; v < g.n; ++v)
                        if (mask & (1 << v)) cut.push_back(v);
                    if (cut_disconnects(g, cut)) brute_connected_enough = false;
                }
            }
            CHECK((rep.verdict == Verdict::Yes) == brute_connected_enough);
            if (rep.verdict == Verdict::No && !rep.cut.empty())
                CHECK(cut_disconnects(g, rep.cut));
        }
    }
}

TEST_CASE("expander checks") {
    CHECK(is_expander(complete_graph(4), 1, 2.0).verdict == Verdict::Yes);

    PlainGraph edgeless(4);
    auto rep = is_expander(edgeless, 1, 1.0);
    CHECK(rep.verdict == Verdict::No);
    CHECK(rep.violating_set.size() == 1);
}

TEST_CASE("expander matches an independent enumerator on 3-regular graphs") {
    // circulant 3-regular graph on 12 vertices
    PlainGraph g(12);
    for (int i = 0; i < 12; ++i) g.add_edge(i, (i + 1) % 12);
    for (int i = 0; i < 6; ++i) g.add_edge(i, i + 6);
    const int r = 2;
    const double c = 2.0;
    // test-local enumeration over all subsets of size <= 2
    bool brute = true;
    for (int u = 0; u < 12 && brute; ++u) {
        for (int v = u; v < 12 && brute; ++v) {
            std::set<int> set{u, v};
            std::set<int> nbrs;
            for (int x : set)
                for (int w : g.adj[x])
                    if (!set.count(w)) nbrs.insert(w);
            if (nbrs.size() < c * set.size()) brute = false;
        }
    }
    auto rep = is_expander(g, r, c);
    CHECK((rep.verdict == Verdict::Yes) == brute);
}

TEST_CASE("sampled expander verdicts never contradict exact ones") {
    for (uint64_t seed = 1; seed <= 30; ++seed) {
        PlainGraph g = random_graph(12, 0.3, splitmix64(seed * 13));
        ExpanderOptions exact_opts;
        ExpanderOptions sampled_opts;
        sampled_opts.subset_budget = 1;  // force sampling
        sampled_opts.samples = 20000;
        auto exact = is_expander(g, 3, 2.0, exact_opts);
        auto sampled = is_expander(g, 3, 2.0, sampled_opts);
        if (sampled.verdict == Verdict::No) {
            CHECK(exact.verdict == Verdict::No);
            // the sampled witness must be a genuine violation
            std::set<int> set(sampled.violating_set.begin(), sampled.violating_set.end());
            std::set<int> nbrs;
            for (int x : set)
                for (int w : g.adj[x])
                    if (!set.count(w)) nbrs.insert(w);
            CHECK(static_cast<double>(nbrs.size()) < 2.0 * set.size());
        }
        if (exact.verdict == Verdict::Yes)
            CHECK(sampled.verdict != Verdict::No);
    }
}

TEST_CASE("boosters") {
    auto p4 = boosters(path_graph(4));
    CHECK(p4.verdict == Verdict::Yes);
    REQUIRE(p4.boosters.size() == 1);
    CHECK(p4.boosters[0] == std::pair<int, int>{0, 3});

    auto c4 = boosters(cycle_graph(4));
    CHECK(c4.already_hamiltonian);
    CHECK(c4.boosters.empty());

    PlainGraph bowtie(5);
    bowtie.add_edge(0, 1);
    bowtie.add_edge(0, 2);
    bowtie.add_edge(1, 2);
    bowtie.add_edge(2, 3);
    bowtie.add_edge(2, 4);
    bowtie.add_edge(3, 4);
    auto rep = boosters(bowtie);
    CHECK(rep.boosters.size() >= 2);  // a connected non-Hamiltonian 1-expander
}

TEST_CASE("booster reservoir on sampled expanders up to 10 vertices") {
    int candidates = 0;
    for (uint64_t seed = 1; seed <= 400; ++seed) {
        const int n = 9 + static_cast<int>(seed % 2);
        PlainGraph g = random_graph(n, 0.3, splitmix64(seed * 97));
        if (g.min_degree() < 2 || !is_connected(g)) continue;
        auto ham = is_hamiltonian(g, {24, 24});
        if (ham.verdict != Verdict::No) continue;
        ++candidates;
        auto rep = boosters(g);
        CHECK(rep.boosters.size() >= 2);  // (R+1)^2/2 with R = 1
        if (is_expander(g, 2, 2.0).verdict == Verdict::Yes)
            CHECK(rep.boosters.size() >= 5);  // ceil((2+1)^2/2)
    }
    CHECK(candidates > 10);
}

TEST_CASE("degree peeling") {
    auto c5 = peel_min_degree(cycle_graph(5), 1.0);
    CHECK(c5.vertices.size() == 5);

    PlainGraph pendant = cycle_graph(5);
    pendant.n = 6;
    pendant.adj.resize(6);
    pendant.add_edge(0, 5);
    auto peeled = peel_min_degree(pendant, 1.0);
    CHECK(peeled.vertices == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(peeled.subgraph.min_degree() >= 2);

    PlainGraph star(5);
    for (int leaf = 1; leaf < 5; ++leaf) star.add_edge(0, leaf);
    CHECK_THROWS_AS(peel_min_degree(star, 1.0), PreconditionViolated);
}

TEST_CASE("starved-vertex sets in bipartite views") {
    // complete bipartite restriction: nobody is starved
    const int n = 16;
    const double alpha = 0.5, eps = 0.2;
    const int usize = static_cast<int>(std::ceil(std::pow(n, alpha)));
    PlainGraph g(2 * n);
    for (int u = 0; u < n; ++u)
        for (int v = n; v < 2 * n; ++v) g.add_edge(u, v);
    std::vector<int> u0, u1;
    for (int i = 0; i < usize; ++i) u0.push_back(i);
    for (int i = 0; i < usize; ++i) u1.push_back(n + i);
    auto [t0, t1] = pseudo_t_sets(g, u0, u1, eps, alpha, n);
    CHECK(t0.empty());
    CHECK(t1.empty());

    // isolate u0[0] from u1
    PlainGraph h(2 * n);
    for (int u = 0; u < n; ++u)
        for (int v = n; v < 2 * n; ++v) {
            bool cut = (u == u0[0] && v - n < usize);
            if (!cut) h.add_edge(u, v);
        }
    auto [s0, s1] = pseudo_t_sets(h, u0, u1, eps, alpha, n);
    REQUIRE(s0.size() == 1);
    CHECK(s0[0] == u0[0]);

    // dense instance: complete bipartite minus a perfect matching; starved
    // sets stay below n^(alpha/2)
    PlainGraph d(2 * n);
    for (int u = 0; u < n; ++u)
        for (int v = n; v < 2 * n; ++v)
            if (v - n != u) d.add_edge(u, v);
    auto [d0, d1] = pseudo_t_sets(d, u0, u1, eps, alpha, n);
    CHECK(static_cast<double>(d0.size()) < std::pow(n, alpha / 2));
    CHECK(static_cast<double>(d1.size()) < std::pow(n, alpha / 2));
}

TEST_CASE("tail bounds evaluate the closed forms") {
    TailBoundQuery q;
    q.dist = TailBoundQuery::Dist::Binomial;
    q.n = 200;
    q.p = 0.5;
    q.dir = TailBoundQuery::Dir::Lower;
    q.a = 0.5;
    auto res = tail_bound(q);
    CHECK(res.mu == doctest::Approx(100.0));
    CHECK(res.bound == doctest::Approx(std::exp(-12.5)).epsilon(1e-12));

    q.dir = TailBoundQuery::Dir::Upper;
    q.a = 1e-9;
    CHECK(tail_bound(q).bound == doctest::Approx(1.0).epsilon(1e-9));

    TailBoundQuery h;
    h.dist = TailBoundQuery::Dist::Hypergeometric;
    h.big_n = 100;
    h.big_k = 50;
    h.draws = 10;
    h.dir = TailBoundQuery::Dir::Lower;
    h.a = 0.2;
    auto hres = tail_bound(h);
    CHECK(hres.mu == doctest::Approx(5.0));
    CHECK(hres.bound == doctest::Approx(std::exp(-0.1)).epsilon(1e-12));

    CHECK_THROWS_AS(tail_bound([] {
                        TailBoundQuery bad;
                        bad.dir = TailBoundQuery::Dir::Upper;
                        bad.a = 1.5;
                        return bad;
                    }()),
                    PreconditionViolated);
}

TEST_CASE("tail bounds dominate the exact binomial tails (sample)") {
    for (long long n : {5, 12, 25}) {
        for (double p : {0.2, 0.5, 0.8}) {
            for (double a : {0.1, 0.4, 0.9}) {
                TailBoundQuery q;
                q.n = n;
                q.p = p;
                q.dir = TailBoundQuery::Dir::Lower;
                q.a = a;
                CHECK(tail_bound(q).bound + 1e-12 >=
                      exact_binomial_tail(n, p, a, TailBoundQuery::Dir::Lower));
                if (a < 1.0) {
                    q.dir = TailBoundQuery::Dir::Upper;
                    CHECK(tail_bound(q).bound + 1e-12 >=
                          exact_binomial_tail(n, p, a, TailBoundQuery::Dir::Upper));
                }
            }
        }
    }
}

TEST_CASE("expansion implies connectivity and large components (sample)") {
    int checked = 0;
    for (uint64_t seed = 1; seed <= 120; ++seed) {
        PlainGraph g = random_graph(10, 0.75, splitmix64(seed * 31));
        for (int r = 2; r <= 3; ++r) {
            for (double c : {2.0, 3.0}) {
                auto exp_rep = is_expander(g, r, c);
                if (exp_rep.verdict != Verdict::Yes) continue;
                for (int k = 1; k <= static_cast<int>(c); ++k) {
                    if (r * c >= 0.5 * (g.n + k)) {
                        ++checked;
                        CHECK(k_connected(g, k).verdict == Verdict::Yes);
                    }
                }
                for (const auto& comp : connected_components(g))
                    CHECK(static_cast<double>(comp.size()) >= r * (c + 1));
            }
        }
    }
    CHECK(checked > 0);
}
