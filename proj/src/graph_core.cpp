#include "mbsim/graph_core.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace mbsim {

char owner_char(Owner o) {
    switch (o) {
        case Owner::Free: return 'F';
        case Owner::Maker: return 'M';
        case Owner::Breaker: return 'B';
    }
    return '?';
}

Owner owner_from_char(char c) {
    switch (c) {
        case 'F': return Owner::Free;
        case 'M': return Owner::Maker;
        case 'B': return Owner::Breaker;
    }
    throw std::invalid_argument(std::string("unknown owner tag '") + c + "'");
}

long long Board::edge_index(int u, int v) const {
    if (!is_edge(u, v)) throw NotAnEdge("pair is not a board edge");
    if (kind == Kind::Complete) {
        if (u > v) std::swap(u, v);
        long long n = n0;
        return static_cast<long long>(u) * n - static_cast<long long>(u) * (u + 1) / 2 +
               (v - u - 1);
    }
    if (u > v) std::swap(u, v);  // u in left part, v in right part
    return static_cast<long long>(u) * n1 + (v - n0);
}

int PlainGraph::min_degree() const {
    int d = n == 0 ? 0 : degree(0);
    for (int v = 1; v < n; ++v) d = std::min(d, degree(v));
    return d;
}

double PlainGraph::average_degree() const {
    if (n == 0) return 0.0;
    return 2.0 * static_cast<double>(edges.size()) / n;
}

GameGraph::GameGraph(const Board& board) : board_(board) {
    const long long m = board_.universe_size();
    const int n = board_.vertex_count();
    owner_.assign(static_cast<size_t>(m), Owner::Free);
    edge_u_.resize(static_cast<size_t>(m));
    edge_v_.resize(static_cast<size_t>(m));
    free_list_.resize(static_cast<size_t>(m));
    free_pos_.resize(static_cast<size_t>(m));
    adj_slot_.resize(static_cast<size_t>(m));
    free_adj_.assign(n, {});
    d_free_.assign(n, 0);
    d_maker_.assign(n, 0);
    d_breaker_.assign(n, 0);

    long long id = 0;
    auto add = [&](int u, int v) {
        edge_u_[id] = u;
        edge_v_[id] = v;
        free_list_[id] = id;
        free_pos_[id] = id;
        adj_slot_[id] = {static_cast<int32_t>(free_adj_[u].size()),
                         static_cast<int32_t>(free_adj_[v].size())};
        free_adj_[u].push_back(v);
        free_adj_[v].push_back(u);
        ++d_free_[u];
        ++d_free_[v];
        ++id;
    };
    if (board_.kind == Board::Kind::Complete) {
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) add(u, v);
    } else {
        for (int u = 0; u < board_.n0; ++u)
            for (int v = board_.n0; v < n; ++v) add(u, v);
    }
    free_count_ = m;
}

long long GameGraph::edge_id(int u, int v) const { return board_.edge_index(u, v); }

void GameGraph::remove_from_free(long long id) {
    // swap-remove from the compacted array
    long long pos = free_pos_[static_cast<size_t>(id)];
    long long last = free_list_[static_cast<size_t>(free_count_ - 1)];
    free_list_[static_cast<size_t>(pos)] = last;
    free_pos_[static_cast<size_t>(last)] = pos;
    free_list_.pop_back();
    free_pos_[static_cast<size_t>(id)] = -1;
    --free_count_;

    // swap-remove from both adjacency lists, fixing the moved entry's slot
    const int u = edge_u_[static_cast<size_t>(id)];
    const int v = edge_v_[static_cast<size_t>(id)];
    auto drop = [&](int a, int b, bool first_slot) {
        auto& lst = free_adj_[a];
        int32_t slot = first_slot ? adj_slot_[static_cast<size_t>(id)].first
                                  : adj_slot_[static_cast<size_t>(id)].second;
        int32_t moved_nbr = lst.back();
        lst[static_cast<size_t>(slot)] = moved_nbr;
        lst.pop_back();
        if (static_cast<size_t>(slot) < lst.size()) {
            long long moved_id = edge_id(a, moved_nbr);
            if (edge_u_[static_cast<size_t>(moved_id)] == a)
                adj_slot_[static_cast<size_t>(moved_id)].first = slot;
            else
                adj_slot_[static_cast<size_t>(moved_id)].second = slot;
        }
        (void)b;
    };
    drop(u, v, true);
    drop(v, u, false);
}

void GameGraph::claim_by_id(long long id, Owner who) {
    if (id < 0 || id >= universe_size()) throw NotAnEdge("edge id out of range");
    if (who == Owner::Free) throw std::invalid_argument("cannot claim an edge as Free");
    Owner& slot = owner_[static_cast<size_t>(id)];
    if (slot != Owner::Free) throw AlreadyClaimed("edge already claimed");
    slot = who;
    remove_from_free(id);
    const int u = edge_u_[static_cast<size_t>(id)];
    const int v = edge_v_[static_cast<size_t>(id)];
    --d_free_[u];
    --d_free_[v];
    if (who == Owner::Maker) {
        ++d_maker_[u];
        ++d_maker_[v];
        ++maker_count_;
    } else {
        ++d_breaker_[u];
        ++d_breaker_[v];
        ++breaker_count_;
    }
}

void GameGraph::claim(int u, int v, Owner who) { claim_by_id(edge_id(u, v), who); }

int GameGraph::max_degree(Owner who) const {
    const std::vector<int>& d = who == Owner::Free    ? d_free_
                                : who == Owner::Maker ? d_maker_
                                                      : d_breaker_;
    int best = 0;
    for (int x : d) best = std::max(best, x);
    return best;
}

std::vector<std::pair<int, int>> GameGraph::free_edges_between(
    const std::vector<int>& xs, const std::vector<int>& ys) const {
    const int n = vertex_count();
    std::vector<uint8_t> in_x(n, 0), in_y(n, 0);
    for (int v : xs) in_x[v] = 1;
    for (int v : ys) in_y[v] = 1;
    std::vector<long long> ids;
    for (long long i = 0; i < free_count_; ++i) {
        long long id = free_list_[static_cast<size_t>(i)];
        int u = edge_u_[static_cast<size_t>(id)];
        int v = edge_v_[static_cast<size_t>(id)];
        bool in_union_u = in_x[u] || in_y[u];
        bool in_union_v = in_x[v] || in_y[v];
        if (!in_union_u || !in_union_v) continue;
        if ((in_x[u] || in_x[v]) && (in_y[u] || in_y[v])) ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    std::vector<std::pair<int, int>> out;
    out.reserve(ids.size());
    for (long long id : ids) out.push_back(edge_endpoints(id));
    return out;
}

PlainGraph GameGraph::owner_subgraph(Owner who) const {
    PlainGraph g(vertex_count());
    for (long long id = 0; id < universe_size(); ++id)
        if (owner_[static_cast<size_t>(id)] == who)
            g.add_edge(edge_u_[static_cast<size_t>(id)], edge_v_[static_cast<size_t>(id)]);
    return g;
}

void GameGraph::check_invariants() const {
    const int n = vertex_count();
    long long f = 0, m = 0, b = 0;
    std::vector<int> df(n, 0), dm(n, 0), db(n, 0);
    for (long long id = 0; id < universe_size(); ++id) {
        int u = edge_u_[static_cast<size_t>(id)];
        int v = edge_v_[static_cast<size_t>(id)];
        switch (owner_[static_cast<size_t>(id)]) {
            case Owner::Free: ++f, ++df[u], ++df[v]; break;
            case Owner::Maker: ++m, ++dm[u], ++dm[v]; break;
            case Owner::Breaker: ++b, ++db[u], ++db[v]; break;
        }
    }
    auto fail = [](const char* what) { throw std::logic_error(what); };
    if (f != free_count_ || m != maker_count_ || b != breaker_count_) fail("edge totals drifted");
    if (f + m + b != universe_size()) fail("edge totals do not cover the universe");
    for (int v = 0; v < n; ++v) {
        if (df[v] != d_free_[v] || dm[v] != d_maker_[v] || db[v] != d_breaker_[v])
            fail("per-vertex degree counters drifted");
        if (df[v] + dm[v] + db[v] != board_.board_degree(v)) fail("degree partition broken");
        if (static_cast<int>(free_adj_[v].size()) != df[v]) fail("free adjacency out of sync");
    }
    for (long long i = 0; i < free_count_; ++i) {
        long long id = free_list_[static_cast<size_t>(i)];
        if (owner_[static_cast<size_t>(id)] != Owner::Free || free_pos_[static_cast<size_t>(id)] != i)
            fail("free list out of sync");
    }
}

void GameGraph::save(std::ostream& out) const {
    if (board_.kind == Board::Kind::Complete)
        out << "board complete " << board_.n0 << "\n";
    else
        out << "board bipartite " << board_.n0 << " " << board_.n1 << "\n";
    for (long long id = 0; id < universe_size(); ++id)
        out << edge_u_[static_cast<size_t>(id)] << " " << edge_v_[static_cast<size_t>(id)] << " "
            << owner_char(owner_[static_cast<size_t>(id)]) << "\n";
}

GameGraph GameGraph::load(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty edge-list file");
    std::istringstream hdr(line);
    std::string tag, kind;
    hdr >> tag >> kind;
    if (tag != "board") throw std::runtime_error("missing 'board' header line");
    Board board;
    if (kind == "complete") {
        int n;
        if (!(hdr >> n)) throw std::runtime_error("bad complete board header");
        board = Board::complete(n);
    } else if (kind == "bipartite") {
        int a, b;
        if (!(hdr >> a >> b)) throw std::runtime_error("bad bipartite board header");
        board = Board::bipartite(a, b);
    } else {
        throw std::runtime_error("unknown board kind '" + kind + "'");
    }
    GameGraph g(board);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        int u, v;
        char c;
        if (!(row >> u >> v >> c)) throw std::runtime_error("bad edge row: " + line);
        Owner who = owner_from_char(c);
        if (who != Owner::Free) g.claim(u, v, who);
        else g.edge_id(u, v);  // validates membership
    }
    return g;
}

}  // namespace mbsim
