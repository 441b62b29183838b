#include "mbsim/maker_strategies.hpp"

#include <algorithm>
#include <cmath>

#include "mbsim/analysis.hpp"

namespace mbsim {

namespace {

int ceil_power(double base, double exponent) {
    double v = std::pow(base, exponent);
    int c = static_cast<int>(std::ceil(v - 1e-9));
    return std::max(1, c);
}

int ceil_scaled(double factor, double base, double exponent) {
    double v = factor * std::pow(base, exponent);
    int c = static_cast<int>(std::ceil(v - 1e-9));
    return std::max(1, c);
}

std::pair<int, int> norm_edge(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

void erase_sorted(std::vector<int>& xs, int v) {
    auto it = std::lower_bound(xs.begin(), xs.end(), v);
    if (it != xs.end() && *it == v) xs.erase(it);
}

void insert_sorted(std::vector<int>& xs, int v) {
    xs.insert(std::lower_bound(xs.begin(), xs.end(), v), v);
}

}  // namespace

SubBoard SubBoard::clique(int total_vertices, std::vector<int> verts) {
    SubBoard sb;
    sb.kind = Kind::Clique;
    std::sort(verts.begin(), verts.end());
    sb.left = std::move(verts);
    sb.in_left.assign(total_vertices, 0);
    sb.in_right.assign(total_vertices, 0);
    for (int v : sb.left) sb.in_left[v] = 1;
    return sb;
}

SubBoard SubBoard::bipartite(int total_vertices, std::vector<int> l, std::vector<int> r) {
    SubBoard sb;
    sb.kind = Kind::Bipartite;
    std::sort(l.begin(), l.end());
    std::sort(r.begin(), r.end());
    sb.left = std::move(l);
    sb.right = std::move(r);
    sb.in_left.assign(total_vertices, 0);
    sb.in_right.assign(total_vertices, 0);
    for (int v : sb.left) sb.in_left[v] = 1;
    for (int v : sb.right) sb.in_right[v] = 1;
    return sb;
}

EmbeddedHalves embed_halves(int n) {
    if (n < 2) throw std::invalid_argument("embed_halves needs n >= 2");
    EmbeddedHalves h;
    const int half = n / 2;
    for (int v = 0; v < half; ++v) h.half_a.push_back(v);
    for (int v = half; v < 2 * half; ++v) h.half_b.push_back(v);
    if (n % 2 == 1) h.leftover = n - 1;
    return h;
}

// ---------------------------------------------------------------------------
// PathCycleStrategy
// ---------------------------------------------------------------------------

PathCycleStrategy::PathCycleStrategy(SubBoard sub, double epsilon)
    : sub_(std::move(sub)), eps_(epsilon) {
    if (sub_.kind != SubBoard::Kind::Clique)
        throw std::invalid_argument("cycle builder needs a clique view");
    const int n = static_cast<int>(sub_.left.size());
    t1_ = ceil_power(n, 1.0 / 5.0);
    t2_ = ceil_power(n, 1.0 / 6.0);
    t3_ = ceil_power(n, 1.0 / 8.0);
    stop_ = ceil_power(n, 1.0 / 4.0);
    grow_target_ = std::max(2, n - stop_);
    in_path_.assign(sub_.in_left.size(), 0);
    r_verts_ = sub_.left;
}

int PathCycleStrategy::r_degree(const GameGraph& g, int u, int exclude) const {
    int count = 0;
    for (int x : g.free_neighbors(u)) {
        if (x == exclude || x == u) continue;
        if (!sub_.contains(x) || in_path_[x]) continue;
        ++count;
    }
    return count;
}

void PathCycleStrategy::move_to_path(int v) {
    in_path_[v] = 1;
    erase_sorted(r_verts_, v);
}

void PathCycleStrategy::adopt_path(const GameGraph& g, const std::vector<int>& path) {
    path_ = path;
    for (int v : path_) move_to_path(v);
    (void)g;
    phase_ = Phase::Close;
}

StrategyStep PathCycleStrategy::next(const GameGraph& g) {
    switch (phase_) {
        case Phase::PathGrow: return grow_step(g);
        case Phase::Close: return close_step(g);
        case Phase::Absorb: return absorb_step(g);
        case Phase::Finished: return StrategyStep::done();
    }
    return StrategyStep::forfeit();
}

StrategyStep PathCycleStrategy::grow_step(const GameGraph& g) {
    if (path_.empty()) {
        // First edge: the far endpoint should keep a rich candidate pool.
        int best_u = -1, best_v = -1, best_deg = -1;
        for (int v0 : sub_.left) {
            std::vector<int> nbrs;
            for (int x : g.free_neighbors(v0))
                if (sub_.contains(x)) nbrs.push_back(x);
            std::sort(nbrs.begin(), nbrs.end());
            for (int v1 : nbrs) {
                int deg = r_degree(g, v1, v0);
                if (deg >= t1_) {
                    best_u = v0;
                    best_v = v1;
                    best_deg = deg;
                    break;
                }
                if (deg > best_deg) {
                    best_u = v0;
                    best_v = v1;
                    best_deg = deg;
                }
            }
            if (best_deg >= t1_) break;
        }
        if (best_u == -1) return StrategyStep::forfeit();
        path_ = {best_u, best_v};
        move_to_path(best_u);
        move_to_path(best_v);
        if (static_cast<int>(path_.size()) >= grow_target_) {
            phase_ = Phase::Close;
            milestone("path_grown");
        }
        return StrategyStep::claim(norm_edge(best_u, best_v).first,
                                   norm_edge(best_u, best_v).second);
    }

    const int v = path_.back();
    std::vector<int> cands;
    for (int x : g.free_neighbors(v))
        if (sub_.contains(x) && !in_path_[x]) cands.push_back(x);
    std::sort(cands.begin(), cands.end());
    int chosen = -1;
    for (int u : cands)
        if (r_degree(g, u) >= t1_) {
            chosen = u;
            break;
        }
    if (chosen == -1) {
        // No candidate clears the look-ahead bar; hand the path over to the
        // closing machinery early. It extends without the bar.
        phase_ = Phase::Close;
        early_close_ = true;
        milestone("path_grown_early");
        return close_step(g);
    }
    move_to_path(chosen);
    path_.push_back(chosen);
    if (static_cast<int>(path_.size()) >= grow_target_) {
        phase_ = Phase::Close;
        milestone("path_grown");
    }
    return StrategyStep::claim(norm_edge(v, chosen).first, norm_edge(v, chosen).second);
}

StrategyStep PathCycleStrategy::finish_cycle(std::vector<int> cycle) {
    cycle_ = std::move(cycle);
    milestone("cycle_closed");
    if (r_verts_.empty()) {
        witness_.cycle = cycle_;
        phase_ = Phase::Finished;
        milestone("hamilton_done");
    } else {
        phase_ = Phase::Absorb;
    }
    return StrategyStep{};  // caller fills the claim
}

StrategyStep PathCycleStrategy::close_step(const GameGraph& g) {
    if (!plan_.empty()) return continue_plan(g);

    // Extend from an endpoint into the leftover set while possible.
    if (!r_verts_.empty() && path_.size() >= 2) {
        const int v0 = path_.front();
        const int vs = path_.back();
        std::pair<int, int> best{-1, -1};
        bool from_front = false;
        for (int endpoint : {v0, vs}) {
            for (int x : g.free_neighbors(endpoint)) {
                if (!sub_.contains(x) || in_path_[x]) continue;
                auto e = norm_edge(endpoint, x);
                if (best.first == -1 || e < best) {
                    best = e;
                    from_front = (endpoint == v0);
                }
            }
        }
        if (best.first != -1) {
            int endpoint = from_front ? v0 : vs;
            int r = best.first == endpoint ? best.second : best.first;
            move_to_path(r);
            if (from_front)
                path_.insert(path_.begin(), r);
            else
                path_.push_back(r);
            return StrategyStep::claim(best.first, best.second);
        }
    }

    // Close the path into a cycle.
    if (path_.size() < 3) return StrategyStep::forfeit();
    const int v0 = path_.front();
    const int vs = path_.back();
    if (g.is_free(v0, vs)) {
        bool completes = r_verts_.empty();
        StrategyStep step =
            StrategyStep::claim(norm_edge(v0, vs).first, norm_edge(v0, vs).second, completes);
        finish_cycle(path_);
        return step;
    }
    if (!plan_rotation(g)) return StrategyStep::forfeit();
    plan_next_ = 1;
    return StrategyStep::claim(plan_[0].first, plan_[0].second);
}

StrategyStep PathCycleStrategy::continue_plan(const GameGraph& g) {
    auto [a, b] = plan_[plan_next_];
    if (!g.is_free(a, b)) {
        // Plan edge stolen; the claimed ones stay as harmless extra edges.
        ++replans_;
        plan_.clear();
        plan_next_ = 0;
        planned_cycle_.clear();
        return close_step(g);
    }
    ++plan_next_;
    bool last = plan_next_ == plan_.size();
    StrategyStep step = StrategyStep::claim(a, b, last && r_verts_.empty());
    if (last) {
        std::vector<int> cyc = std::move(planned_cycle_);
        plan_.clear();
        plan_next_ = 0;
        planned_cycle_.clear();
        finish_cycle(std::move(cyc));
    }
    return step;
}

bool PathCycleStrategy::plan_rotation(const GameGraph& g) {
    const int s = static_cast<int>(path_.size()) - 1;
    auto free_at = [&](int pi, int pj) { return g.is_free(path_[pi], path_[pj]); };

    std::vector<int> x0, xs;
    for (int p = 2; p <= s - 1; ++p)
        if (free_at(0, p)) x0.push_back(p);
    for (int p = 1; p <= s - 2; ++p)
        if (free_at(s, p)) xs.push_back(p);
    if (x0.empty() || xs.empty()) return false;

    const size_t h0 = (x0.size() + 1) / 2;
    const size_t hs = (xs.size() + 1) / 2;
    std::vector<int> y0(x0.begin(), x0.begin() + h0);            // nearer v0
    std::vector<int> z0(x0.begin() + h0, x0.end());              // farther
    std::vector<int> ys(xs.end() - hs, xs.end());                // nearer vs
    std::vector<int> zs(xs.begin(), xs.end() - hs);              // farther

    auto build_forward = [&](int i, int j) {
        plan_ = {norm_edge(path_[i], path_[j]), norm_edge(path_[i + 1], path_[0]),
                 norm_edge(path_[s], path_[j - 1])};
        planned_cycle_.clear();
        planned_cycle_.push_back(path_[0]);
        for (int p = i + 1; p <= j - 1; ++p) planned_cycle_.push_back(path_[p]);
        for (int p = s; p >= j; --p) planned_cycle_.push_back(path_[p]);
        for (int p = i; p >= 1; --p) planned_cycle_.push_back(path_[p]);
    };
    auto build_crossing = [&](int i, int j) {
        plan_ = {norm_edge(path_[i - 1], path_[j + 1]), norm_edge(path_[0], path_[j]),
                 norm_edge(path_[i], path_[s])};
        planned_cycle_.clear();
        for (int p = 0; p <= i - 1; ++p) planned_cycle_.push_back(path_[p]);
        for (int p = j + 1; p <= s; ++p) planned_cycle_.push_back(path_[p]);
        for (int p = i; p <= j; ++p) planned_cycle_.push_back(path_[p]);
    };

    // Forward form: chord {v_i, v_j} with {v_0, v_{i+1}} and {v_s, v_{j-1}}
    // free; i is a predecessor of an endpoint of a v_0-edge, j the successor
    // of an endpoint of a v_s-edge.
    auto search_forward = [&](const std::vector<int>& from0, const std::vector<int>& froms) {
        for (int p0 : from0) {
            int i = p0 - 1;
            for (int ps : froms) {
                int j = ps + 1;
                if (j < i + 2) continue;
                if (free_at(i, j)) {
                    build_forward(i, j);
                    return true;
                }
            }
        }
        return false;
    };
    // Crossing form: {v_0, v_j} and {v_i, v_s} free, chord {v_{i-1}, v_{j+1}}.
    auto search_crossing = [&](const std::vector<int>& is, const std::vector<int>& js) {
        for (int i : is) {
            for (int j : js) {
                if (j < i) continue;
                if (free_at(i - 1, j + 1)) {
                    build_crossing(i, j);
                    return true;
                }
            }
        }
        return false;
    };

    const bool case1 = !y0.empty() && !ys.empty() && y0.back() < ys.front();
    const bool case2 = !zs.empty() && !z0.empty() && zs.back() < z0.front();
    if (case1 && search_forward(y0, ys)) return true;
    if (case2 && search_crossing(zs, z0)) return true;
    // Median-split configuration missing at this scale: search every valid
    // pair in both forms before giving up.
    if (search_forward(x0, xs)) return true;
    if (search_crossing(xs, x0)) return true;
    return false;
}

StrategyStep PathCycleStrategy::absorb_step(const GameGraph& g) {
    int pick_r = -1, pick_c = -1;
    for (int r : r_verts_) {
        int best_c = -1;
        for (int x : g.free_neighbors(r))
            if (sub_.contains(x) && in_path_[x] && (best_c == -1 || x < best_c)) best_c = x;
        if (best_c != -1) {
            pick_r = r;
            pick_c = best_c;
            break;
        }
    }
    if (pick_r == -1) return StrategyStep::forfeit();

    const int len = static_cast<int>(cycle_.size());
    int at = 0;
    while (cycle_[at] != pick_c) ++at;
    path_.clear();
    for (int t = 1; t <= len; ++t) path_.push_back(cycle_[(at + t) % len]);
    path_.push_back(pick_r);
    move_to_path(pick_r);
    cycle_.clear();
    phase_ = Phase::Close;
    return StrategyStep::claim(norm_edge(pick_c, pick_r).first, norm_edge(pick_c, pick_r).second);
}

void PathCycleStrategy::final_stats(const GameGraph& g, std::map<std::string, bool>& out) const {
    if (static_cast<int>(sub_.left.size()) != g.vertex_count()) return;
    out["maker_degree_bound_ok"] = g.max_degree(Owner::Maker) <= 2 * stop_ + 2;
}

// ---------------------------------------------------------------------------
// MatchingStrategy
// ---------------------------------------------------------------------------

MatchingStrategy::MatchingStrategy(SubBoard sub, double epsilon, double alpha)
    : sub_(std::move(sub)), eps_(epsilon), alpha_(alpha) {
    if (sub_.kind != SubBoard::Kind::Bipartite || sub_.left.size() != sub_.right.size())
        throw std::invalid_argument("matching builder needs equal bipartite parts");
    side_size_ = static_cast<int>(sub_.left.size());
    residue_ = std::min(side_size_, ceil_power(side_size_, alpha_));
    repair_threshold_ = ceil_scaled(eps_ / 4.0, side_size_, alpha_);
    partner_threshold_ = ceil_scaled(eps_ / 8.0, side_size_, alpha_);
    greedy_remaining_ = side_size_ - residue_;
    match_planned_.assign(sub_.in_left.size(), -1);
    match_final_.assign(sub_.in_left.size(), -1);
    r_left_ = sub_.left;
    r_right_ = sub_.right;
}

int MatchingStrategy::free_into(const GameGraph& g, int v, const std::vector<int>& pool) const {
    int count = 0;
    for (int x : g.free_neighbors(v))
        if (sub_.has_edge(v, x) && std::binary_search(pool.begin(), pool.end(), x)) ++count;
    return count;
}

StrategyStep MatchingStrategy::next(const GameGraph& g) {
    while (true) {
        switch (stage_) {
            case Stage::Greedy:
                if (greedy_remaining_ > 0) return greedy_step(g);
                enter_repair(g);
                break;
            case Stage::Repair: return repair_step(g);
            case Stage::Residue: return residue_step(g);
            case Stage::Finished: return StrategyStep::done();
        }
    }
}

StrategyStep MatchingStrategy::greedy_step(const GameGraph& g) {
    for (int x : r_left_) {
        int best_y = -1;
        for (int y : g.free_neighbors(x))
            if (sub_.has_edge(x, y) && match_final_[y] == -1 && !sub_.in_left[y] &&
                (best_y == -1 || y < best_y))
                best_y = y;
        if (best_y == -1) continue;
        match_planned_[x] = best_y;
        match_planned_[best_y] = x;
        match_final_[x] = best_y;
        match_final_[best_y] = x;
        erase_sorted(r_left_, x);
        erase_sorted(r_right_, best_y);
        --greedy_remaining_;
        return StrategyStep::claim(std::min(x, best_y), std::max(x, best_y));
    }
    return StrategyStep::forfeit();
}

void MatchingStrategy::enter_repair(const GameGraph& g) {
    repair_queue_.clear();
    for (int v : r_left_)
        if (free_into(g, v, r_right_) < repair_threshold_) repair_queue_.push_back(v);
    for (int v : r_right_)
        if (free_into(g, v, r_left_) < repair_threshold_) repair_queue_.push_back(v);
    repair_next_ = 0;
    stage_ = Stage::Repair;
    milestone("repair_start");
}

std::optional<StrategyStep> MatchingStrategy::swap_out(const GameGraph& g, int v,
                                                       bool maximize_partner) {
    const bool v_left = sub_.in_left[v];
    const std::vector<int>& partner_pool = v_left ? r_right_ : r_left_;
    std::vector<int> candidates;
    for (int u : g.free_neighbors(v))
        if (sub_.has_edge(v, u) && match_planned_[u] != -1) candidates.push_back(u);
    std::sort(candidates.begin(), candidates.end());
    int pick_u = -1, pick_deg = -1;
    const int bar = maximize_partner ? 1 : partner_threshold_;
    for (int u : candidates) {
        int w = match_planned_[u];
        int deg = free_into(g, w, partner_pool);
        if (deg < bar) continue;
        if (!maximize_partner) {
            pick_u = u;
            break;
        }
        if (deg > pick_deg) {
            pick_u = u;
            pick_deg = deg;
        }
    }
    if (pick_u == -1) return std::nullopt;
    const int u = pick_u;
    const int w = match_planned_[u];
    match_planned_[u] = -1;
    match_planned_[w] = -1;
    match_final_[w] = -1;
    match_final_[v] = u;
    match_final_[u] = v;
    if (v_left) {
        erase_sorted(r_left_, v);
        insert_sorted(r_left_, w);
    } else {
        erase_sorted(r_right_, v);
        insert_sorted(r_right_, w);
    }
    return StrategyStep::claim(std::min(v, u), std::max(v, u));
}

StrategyStep MatchingStrategy::repair_step(const GameGraph& g) {
    while (repair_next_ < repair_queue_.size()) {
        int v = repair_queue_[repair_next_];
        ++repair_next_;
        if (match_final_[v] != -1) continue;  // already swapped away
        auto step = swap_out(g, v, false);
        if (!step) return StrategyStep::forfeit();
        return *step;
    }
    stage_ = Stage::Residue;
    milestone("residue_start");
    return residue_step(g);
}

StrategyStep MatchingStrategy::residue_step(const GameGraph& g) {
    if (r_left_.empty()) {
        stage_ = Stage::Finished;
        return StrategyStep::done();
    }
    // Free subgraph on the residue, local indices: left 0..L-1, right L..2L-1.
    const int lsize = static_cast<int>(r_left_.size());
    PlainGraph f(2 * lsize);
    for (int i = 0; i < lsize; ++i)
        for (int j = 0; j < lsize; ++j)
            if (g.is_free(r_left_[i], r_right_[j])) f.add_edge(i, lsize + j);
    auto rep = analysis::has_matching_of_size(f, lsize);
    if (rep.verdict == analysis::Verdict::Yes) {
        // Claim the planned edge with the lowest left vertex.
        std::pair<int, int> pick{-1, -1};
        for (auto [a, b] : rep.matching) {
            int li = std::min(a, b), rj = std::max(a, b) - lsize;
            int x = r_left_[li], y = r_right_[rj];
            if (pick.first == -1 || x < pick.first) pick = {x, y};
        }
        int x = pick.first, y = pick.second;
        match_final_[x] = y;
        match_final_[y] = x;
        erase_sorted(r_left_, x);
        erase_sorted(r_right_, y);
        bool completes = r_left_.empty();
        if (completes) {
            for (int v : sub_.left) witness_.matching.emplace_back(v, match_final_[v]);
            stage_ = Stage::Finished;
            milestone("matching_done");
        }
        return StrategyStep::claim(std::min(x, y), std::max(x, y), completes);
    }
    // No perfect matching on the residue: swap a starved vertex out for the
    // planned partner with the most free residue edges.
    std::vector<uint8_t> matched(static_cast<size_t>(lsize), 0);
    for (auto [a, b] : rep.matching) matched[static_cast<size_t>(std::min(a, b))] = 1;
    int v = -1;
    for (int i = 0; i < lsize; ++i)
        if (!matched[i]) {
            v = r_left_[i];
            break;
        }
    if (v == -1) return StrategyStep::forfeit();
    auto step = swap_out(g, v, true);
    if (!step) return StrategyStep::forfeit();
    ++residue_swaps_;
    return *step;
}

void MatchingStrategy::adopt_position(const GameGraph& g,
                                      const std::vector<std::pair<int, int>>& planned_matching) {
    for (auto [x, y] : planned_matching) {
        match_planned_[x] = y;
        match_planned_[y] = x;
        match_final_[x] = y;
        match_final_[y] = x;
        erase_sorted(r_left_, sub_.in_left[x] ? x : y);
        erase_sorted(r_right_, sub_.in_left[x] ? y : x);
    }
    greedy_remaining_ = 0;
    enter_repair(g);
}

std::vector<std::pair<int, int>> MatchingStrategy::repaired_matching() const {
    std::vector<std::pair<int, int>> out;
    for (int v : sub_.left)
        if (match_final_[v] != -1) out.emplace_back(v, match_final_[v]);
    return out;
}

void MatchingStrategy::final_stats(const GameGraph& g, std::map<std::string, bool>& out) const {
    (void)g;
    bool matching_ok = true;
    for (int v : sub_.left) {
        int m = match_final_[v];
        if (m != -1 && match_final_[m] != v) matching_ok = false;
    }
    out["repaired_matching_consistent"] = matching_ok;
}

// ---------------------------------------------------------------------------
// KConnectivityStrategy
// ---------------------------------------------------------------------------

KConnectivityStrategy::KConnectivityStrategy(int n, int k, double epsilon, double alpha)
    : n_(n), k_(k), eps_(epsilon) {
    if (k < 2) throw std::invalid_argument("k-connectivity builder needs k >= 2");
    const int q = n / (k - 1);
    if (q < 4) throw std::invalid_argument("board too small for the part size");
    for (int i = 0; i < k - 1; ++i) {
        std::vector<int> part;
        for (int v = i * q; v < (i + 1) * q; ++v) part.push_back(v);
        parts_.push_back(std::move(part));
    }
    in_leftover_.assign(n, 0);
    for (int v = q * (k - 1); v < n; ++v) {
        leftover_.push_back(v);
        in_leftover_[v] = 1;
    }
    for (int i = 0; i < k - 1; ++i)
        for (int j = i + 1; j < k - 1; ++j) {
            schedule_.push_back(std::make_unique<MatchingStrategy>(
                SubBoard::bipartite(n, parts_[i], parts_[j]), epsilon, alpha));
            schedule_labels_.push_back("pm_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
        }
    for (int i = 0; i < k - 1; ++i) {
        schedule_.push_back(
            std::make_unique<PathCycleStrategy>(SubBoard::clique(n, parts_[i]), epsilon));
        schedule_labels_.push_back("ham_" + std::to_string(i + 1));
    }
    attach_done_.assign(leftover_.size(), 0);
}

StrategyStep KConnectivityStrategy::next(const GameGraph& g) {
    while (active_ < schedule_.size()) {
        StrategyStep step = schedule_[active_]->next(g);
        if (step.kind == StrategyStep::Kind::Forfeit) {
            milestone(schedule_labels_[active_] + "_forfeit");
            return step;
        }
        if (step.kind == StrategyStep::Kind::Done) {
            ++active_;
            continue;
        }
        if (step.completes) {
            const Witness& w = schedule_[active_]->witness();
            if (!w.cycle.empty()) witness_.cycles.push_back(w.cycle);
            for (auto& e : w.matching) witness_.matching.push_back(e);
            milestone(schedule_labels_[active_] + "_done");
            ++active_;
            step.completes = active_ == schedule_.size() && leftover_.empty();
        }
        return step;
    }
    return attach_step(g);
}

StrategyStep KConnectivityStrategy::attach_step(const GameGraph& g) {
    while (attach_vertex_ < leftover_.size() && attach_done_[attach_vertex_] >= k_)
        ++attach_vertex_;
    if (attach_vertex_ >= leftover_.size()) return StrategyStep::done();
    const int u = leftover_[attach_vertex_];
    int best = -1;
    for (int w : g.free_neighbors(u))
        if (!in_leftover_[w] && (best == -1 || w < best)) best = w;
    if (best == -1) return StrategyStep::forfeit();
    ++attach_done_[attach_vertex_];
    bool completes = attach_vertex_ + 1 == leftover_.size() && attach_done_[attach_vertex_] == k_;
    if (completes) milestone("attach_done");
    return StrategyStep::claim(std::min(u, best), std::max(u, best), completes);
}

void KConnectivityStrategy::final_stats(const GameGraph& g, std::map<std::string, bool>& out) const {
    // Breaker degree inside each sub-board, against the (1 - eps/2) share.
    const int q = static_cast<int>(parts_[0].size());
    std::vector<int> part_of(n_, -1);
    for (size_t i = 0; i < parts_.size(); ++i)
        for (int v : parts_[i]) part_of[v] = static_cast<int>(i);
    std::vector<std::vector<int>> deg_in(parts_.size(), std::vector<int>(n_, 0));
    std::vector<std::vector<int>> deg_cross;
    for (size_t i = 0; i < parts_.size(); ++i)
        for (size_t j = 0; j < parts_.size(); ++j)
            if (i < j) deg_cross.emplace_back(n_, 0);
    auto cross_index = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        int idx = 0;
        for (int i = 0; i < static_cast<int>(parts_.size()); ++i)
            for (int j = i + 1; j < static_cast<int>(parts_.size()); ++j) {
                if (i == a && j == b) return idx;
                ++idx;
            }
        return -1;
    };
    for (long long id = 0; id < g.universe_size(); ++id) {
        if (g.owner_by_id(id) != Owner::Breaker) continue;
        auto [u, v] = g.edge_endpoints(id);
        int pu = part_of[u], pv = part_of[v];
        if (pu == -1 || pv == -1) continue;
        if (pu == pv) {
            ++deg_in[pu][u];
            ++deg_in[pu][v];
        } else {
            int idx = cross_index(pu, pv);
            ++deg_cross[idx][u];
            ++deg_cross[idx][v];
        }
    }
    bool ok = true;
    const double cap = (1.0 - eps_ / 2.0) * q;
    for (auto& d : deg_in)
        for (int x : d)
            if (x > cap) ok = false;
    for (auto& d : deg_cross)
        for (int x : d)
            if (x > cap) ok = false;
    out["subboard_breaker_degree_ok"] = ok;
}

StrategyStep RandomStrategy::next(const GameGraph& g) {
    if (g.free_count() == 0) return StrategyStep::forfeit();
    long long idx = static_cast<long long>(rng_.below(static_cast<uint64_t>(g.free_count())));
    auto [u, v] = g.edge_endpoints(g.free_edge_at(idx));
    return StrategyStep::claim(u, v);
}

}  // namespace mbsim
