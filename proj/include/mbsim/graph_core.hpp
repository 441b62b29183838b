#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mbsim {

struct InvalidBoard : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotAnEdge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct AlreadyClaimed : std::logic_error {
    using std::logic_error::logic_error;
};

enum class Owner : uint8_t { Free = 0, Maker = 1, Breaker = 2 };

char owner_char(Owner o);
Owner owner_from_char(char c);

// Board for the games: the complete graph K_n or the complete bipartite
// graph K_{n0,n1}. For bipartite boards the left part is 0..n0-1 and the
// right part is n0..n0+n1-1.
struct Board {
    enum class Kind { Complete, Bipartite };

    Kind kind = Kind::Complete;
    int n0 = 0;
    int n1 = 0;

    static Board complete(int n) {
        if (n < 1) throw InvalidBoard("complete board needs n >= 1");
        return Board{Kind::Complete, n, 0};
    }
    static Board bipartite(int left, int right) {
        if (left < 1 || right < 1) throw InvalidBoard("bipartite board needs n0, n1 >= 1");
        return Board{Kind::Bipartite, left, right};
    }

    int vertex_count() const { return kind == Kind::Complete ? n0 : n0 + n1; }

    long long universe_size() const {
        if (kind == Kind::Complete) return static_cast<long long>(n0) * (n0 - 1) / 2;
        return static_cast<long long>(n0) * n1;
    }

    // Degree of a vertex in the full board graph.
    int board_degree(int v) const {
        if (kind == Kind::Complete) return n0 - 1;
        return v < n0 ? n1 : n0;
    }

    bool in_range(int v) const { return v >= 0 && v < vertex_count(); }

    bool is_edge(int u, int v) const {
        if (!in_range(u) || !in_range(v) || u == v) return false;
        if (kind == Kind::Complete) return true;
        return (u < n0) != (v < n0);
    }

    // Dense contiguous index over the edge universe.
    long long edge_index(int u, int v) const;

    bool operator==(const Board&) const = default;
};

// A plain undirected simple graph, used by the exact checkers and as the
// image of one ownership class of a position.
struct PlainGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adj;

    PlainGraph() = default;
    explicit PlainGraph(int vertices) : n(vertices), adj(vertices) {}

    void add_edge(int u, int v) {
        edges.emplace_back(u, v);
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    bool has_edge(int u, int v) const {
        for (int w : adj[u])
            if (w == v) return true;
        return false;
    }
    int degree(int v) const { return static_cast<int>(adj[v].size()); }
    int min_degree() const;
    double average_degree() const;
};

// Game position: every board edge is Free, Maker's or Breaker's.
// claim() is the only mutator. Free edges are kept both in a compacted
// array (uniform sampling with swap-remove) and in per-vertex adjacency
// lists (strategy scans), each with O(1) removal.
class GameGraph {
public:
    explicit GameGraph(const Board& board);

    const Board& board() const { return board_; }
    int vertex_count() const { return board_.vertex_count(); }
    long long universe_size() const { return static_cast<long long>(owner_.size()); }

    long long edge_id(int u, int v) const;
    std::pair<int, int> edge_endpoints(long long id) const {
        return {edge_u_[static_cast<size_t>(id)], edge_v_[static_cast<size_t>(id)]};
    }

    Owner owner(int u, int v) const { return owner_[static_cast<size_t>(edge_id(u, v))]; }
    Owner owner_by_id(long long id) const { return owner_[static_cast<size_t>(id)]; }
    bool is_free(int u, int v) const {
        return board_.is_edge(u, v) && owner(u, v) == Owner::Free;
    }

    void claim(int u, int v, Owner who);
    void claim_by_id(long long id, Owner who);

    long long free_count() const { return free_count_; }
    long long maker_count() const { return maker_count_; }
    long long breaker_count() const { return breaker_count_; }

    int free_degree(int v) const { return d_free_[v]; }
    int maker_degree(int v) const { return d_maker_[v]; }
    int breaker_degree(int v) const { return d_breaker_[v]; }
    int max_degree(Owner who) const;

    // Compacted free-edge array, index in [0, free_count).
    long long free_edge_at(long long idx) const { return free_list_[static_cast<size_t>(idx)]; }

    // Free neighbors of v (unordered).
    const std::vector<int32_t>& free_neighbors(int v) const { return free_adj_[v]; }

    // All free edges meeting both X and Y (as vertex sets), both endpoints
    // inside X union Y. Returned sorted by edge id.
    std::vector<std::pair<int, int>> free_edges_between(const std::vector<int>& xs,
                                                        const std::vector<int>& ys) const;

    PlainGraph owner_subgraph(Owner who) const;

    // Degree-sum and count identities; throws std::logic_error on violation.
    void check_invariants() const;

    // Text export/import: header line, then one "u v owner" triple per line.
    void save(std::ostream& out) const;
    static GameGraph load(std::istream& in);

private:
    void remove_from_free(long long id);

    Board board_;
    std::vector<Owner> owner_;
    std::vector<int32_t> edge_u_, edge_v_;
    std::vector<int64_t> free_list_;
    std::vector<int64_t> free_pos_;  // position of edge id in free_list_, -1 once claimed
    // free_adj_[v][i] is a free neighbor; adj_slot_ tracks each edge's
    // positions in both endpoint lists so removal is O(1).
    std::vector<std::vector<int32_t>> free_adj_;
    std::vector<std::pair<int32_t, int32_t>> adj_slot_;
    std::vector<int> d_free_, d_maker_, d_breaker_;
    long long free_count_ = 0, maker_count_ = 0, breaker_count_ = 0;
};

}  // namespace mbsim
