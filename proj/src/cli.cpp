#include "mbsim/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mbsim/analysis.hpp"
#include "mbsim/box_games.hpp"
#include "mbsim/breaker_strategies.hpp"
#include "mbsim/engine.hpp"
#include "mbsim/montecarlo.hpp"
#include "mbsim/pipeline.hpp"

namespace mbsim::cli {

namespace {

constexpr const char* kVersion = "mbsim 0.1.0";

struct GameFlags {
    std::string game = "ham";
    int n = 0, n0 = 0, n1 = 0;
    int b = -1, m = -1;
    double eps = 0.2;
    int k = 3;
    double alpha = 0.25;
    uint64_t seed = 1;
    int trials = 1;
    int workers = 1;
    int smart_bias = 1;
    std::string move_order = "breaker_first";
    long long round_cap = -1;
    std::string strategy = "auto";
    std::string breaker = "isolation";
    double c = 0.75;
    bool paper_faithful = false;
    bool no_verify = false;
    std::string config_path;
    std::string records_path;
};

int default_workers() {
    if (const char* env = std::getenv("MBSIM_WORKERS")) {
        int w = std::atoi(env);
        if (w >= 1) return w;
    }
    return 1;
}

void add_game_flags(CLI::App* app, GameFlags& f) {
    f.workers = default_workers();
    app->add_option("--game", f.game, "ham | pm | kconn | isolate")
        ->check(CLI::IsMember({"ham", "pm", "kconn", "isolate"}));
    app->add_option("--n", f.n, "complete-board vertex count");
    app->add_option("--n0", f.n0, "bipartite left part size");
    app->add_option("--n1", f.n1, "bipartite right part size");
    app->add_option("--b", f.b, "random Breaker bias");
    app->add_option("--m", f.m, "random Maker bias");
    app->add_option("--eps", f.eps, "epsilon margin");
    app->add_option("--k", f.k, "connectivity target");
    app->add_option("--alpha", f.alpha, "matching residue exponent");
    app->add_option("--seed", f.seed, "master seed");
    app->add_option("--trials", f.trials, "trial count");
    app->add_option("--workers", f.workers, "worker threads");
    app->add_option("--smart-bias", f.smart_bias, "smart player's edges per round");
    app->add_option("--move-order", f.move_order, "breaker_first | maker_first");
    app->add_option("--round-cap", f.round_cap, "optional round cap");
    app->add_option("--strategy", f.strategy, "s_ham | s_pm | s_k | random | auto");
    app->add_option("--breaker", f.breaker, "isolation | random (smart-Breaker games)");
    app->add_option("--c", f.c, "isolation round-budget constant");
    app->add_flag("--paper-faithful", f.paper_faithful, "lowest-id isolation targets");
    app->add_flag("--no-verify", f.no_verify, "skip oracle verification of wins");
    app->add_option("--config", f.config_path, "game config file (key=value lines)");
    app->add_option("--records", f.records_path, "per-trial record sink (path or '-')");
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

GameSpec build_spec(const GameFlags& f) {
    GameSpec spec;
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw UsageError("--config: cannot open " + f.config_path);
        std::stringstream buf;
        buf << in.rdbuf();
        spec = GameSpec::from_config(buf.str());
    }
    if (f.game == "ham") {
        spec.target = Target::HamiltonCycle;
    } else if (f.game == "pm") {
        spec.target = Target::PerfectMatching;
    } else if (f.game == "kconn") {
        spec.target = Target::KConnectivity;
        if (f.k < 2) throw UsageError("--k: k-connectivity needs k >= 2");
        spec.k = f.k;
    } else if (f.game == "isolate") {
        spec.target = Target::PositiveMinDegree;
    }
    if (f.n0 > 0 || f.n1 > 0) {
        if (f.n0 < 1 || f.n1 < 1) throw UsageError("--n0/--n1: both parts need size >= 1");
        spec.board = Board::bipartite(f.n0, f.n1);
    } else if (f.n > 0) {
        spec.board = Board::complete(f.n);
    } else if (f.config_path.empty()) {
        throw UsageError("--n: board size is required");
    }
    const bool maker_random = f.m >= 0 || f.game == "isolate";
    if (maker_random && f.b >= 0) throw UsageError("--b: give either --b or --m, not both");
    if (maker_random) {
        spec.smart = Player::Breaker;
        spec.random_bias = std::max(0, f.m);
        spec.breaker = f.breaker;
    } else {
        spec.smart = Player::Maker;
        if (f.b < 0 && f.config_path.empty()) throw UsageError("--b: random Breaker bias required");
        if (f.b >= 0) spec.random_bias = f.b;
    }
    spec.smart_bias = f.smart_bias;
    spec.move_order =
        f.move_order == "maker_first" ? MoveOrder::MakerFirst : MoveOrder::BreakerFirst;
    spec.epsilon = f.eps;
    spec.alpha = f.alpha;
    spec.seed = f.seed;
    if (f.round_cap > 0) spec.round_cap = f.round_cap;
    spec.strategy = f.strategy;
    spec.c = f.c;
    spec.paper_faithful = f.paper_faithful;
    if (spec.epsilon <= 0.0 || spec.epsilon >= 1.0) throw UsageError("--eps: need 0 < eps < 1");
    if (f.n < 0) throw UsageError("--n: board size must be positive");
    if (f.trials < 1) throw UsageError("--trials: need at least one trial");
    return spec;
}

void emit_records(const GameFlags& f, const std::vector<mc::TrialRecord>& records,
                  std::ostream& out) {
    if (f.records_path.empty()) return;
    std::string text = mc::records_to_jsonl(records);
    if (f.records_path == "-") {
        out << text;
    } else {
        std::ofstream sink(f.records_path);
        if (!sink) throw UsageError("--records: cannot open " + f.records_path);
        sink << text;
    }
}

int cmd_play(const GameFlags& f, const std::string& dump_path, std::ostream& out) {
    GameSpec spec = build_spec(f);
    RunOptions opts;
    opts.record_transcript = true;
    TrialOutcome outcome = run_game(spec, opts);
    if (!dump_path.empty()) {
        GameGraph replay(spec.board);
        for (auto& r : outcome.transcript)
            replay.claim(r.u, r.v, r.player == Player::Maker ? Owner::Maker : Owner::Breaker);
        std::ofstream sink(dump_path);
        if (!sink) throw UsageError("--dump: cannot open " + dump_path);
        replay.save(sink);
    }
    out << transcript_to_jsonl(outcome.transcript);
    nlohmann::json j;
    j["winner"] = player_name(outcome.winner);
    j["rounds"] = outcome.rounds;
    j["forfeit"] = outcome.forfeit;
    nlohmann::json ms = nlohmann::json::array();
    for (auto& [label, round] : outcome.milestones)
        ms.push_back({{"label", label}, {"round", round}});
    j["milestones"] = ms;
    j["maker_edges"] = outcome.final_stats.maker_edges;
    j["breaker_edges"] = outcome.final_stats.breaker_edges;
    out << j.dump() << "\n";
    return 0;
}

int cmd_trials(const GameFlags& f, std::ostream& out) {
    mc::BatchSpec batch;
    batch.game = build_spec(f);
    batch.trials = f.trials;
    batch.master_seed = f.seed;
    batch.verify = !f.no_verify;
    batch.parallelism = f.workers;
    mc::BatchResult result = mc::run_batch(batch);
    emit_records(f, result.records, out);
    out << "# " << kVersion << " seed=" << f.seed << " trial_seed=splitmix64(master+golden*(i+1))"
        << "\n";
    out << mc::aggregate_csv_header() << "\n";
    out << mc::aggregate_csv_row(batch.game, result.aggregate) << "\n";
    if (result.aggregate.forfeit_count == result.aggregate.trials) {
        return 1;  // forfeit-only batch
    }
    return 0;
}

std::vector<double> parse_list(const std::string& csv, const char* flag) {
    std::vector<double> values;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) values.push_back(std::stod(item));
    if (values.empty()) throw UsageError(std::string(flag) + ": empty list");
    return values;
}

int cmd_sweep(const GameFlags& f, const std::string& sweep_key, const std::string& sweep_values,
              std::ostream& out) {
    if (sweep_key.empty() || sweep_values.empty())
        throw UsageError("--sweep/--values: sweep needs a key and a value list");
    mc::BatchSpec base;
    base.game = build_spec(f);
    base.trials = f.trials;
    base.master_seed = f.seed;
    base.verify = !f.no_verify;
    base.parallelism = f.workers;
    std::vector<mc::GridPoint> grid;
    for (double v : parse_list(sweep_values, "--values")) {
        mc::GridPoint p;
        p.overrides[sweep_key] = v;
        p.label = sweep_key + "=" + std::to_string(v);
        grid.push_back(p);
    }
    auto rows = mc::sweep(base, grid);
    out << "# " << kVersion << " seed=" << f.seed << " sweep=" << sweep_key << "\n";
    out << mc::aggregate_csv_header() << "\n";
    for (size_t i = 0; i < rows.size(); ++i) {
        GameSpec shown = base.game;
        for (auto& [key, value] : rows[i].point.overrides) {
            if (key == "n") shown.board = Board::complete(static_cast<int>(value));
            if (key == "bias" || key == "b" || key == "m")
                shown.random_bias = static_cast<int>(value);
            if (key == "epsilon") shown.epsilon = value;
            if (key == "k") shown.k = static_cast<int>(value);
        }
        out << mc::aggregate_csv_row(shown, rows[i].aggregate) << "\n";
    }
    return 0;
}

int cmd_box(int boxes, int size, int a, int b, int d, int trials, uint64_t seed,
            std::ostream& out) {
    if (boxes < 1) throw UsageError("--boxes: need at least one box");
    if (size < 1) throw UsageError("--size: need at least one element per box");
    if (b < 1) throw UsageError("--bias: collector bias must be >= 1");
    if (d < 1 || d > size) throw UsageError("--d: quota must be in [1, size]");
    if (trials < 1) throw UsageError("--trials: need at least one trial");
    long long wins = 0, milestone_pass = 0, milestone_known = 0, subbox_all = 0;
    for (int i = 0; i < trials; ++i) {
        auto res = box::run_box_game(boxes, size, a, b, d, mc::derive_trial_seed(seed, i));
        if (res.outcome == box::BoxOutcome::BoxBreakerWin) {
            ++wins;
            if (res.milestone_logged) {
                ++milestone_known;
                if (res.milestone_pass) ++milestone_pass;
            }
            if (res.subboxes_touched) ++subbox_all;
        }
    }
    auto w = mc::wilson_interval(wins, trials);
    out << "# " << kVersion << " seed=" << seed << "\n";
    out << "boxes,size,a,b,d,trials,collector_wins,win_rate,wilson_lo,wilson_hi,"
           "milestone_pass_rate\n";
    char buf[256];
    double rate = static_cast<double>(wins) / trials;
    double mrate = milestone_known ? static_cast<double>(milestone_pass) / milestone_known : 0.0;
    std::snprintf(buf, sizeof(buf), "%d,%d,%d,%d,%d,%d,%lld,%.6f,%.6f,%.6f,%.6f", boxes, size, a,
                  b, d, trials, wins, rate, w.lo, w.hi, mrate);
    out << buf << "\n";
    return 0;
}

struct PipelineFlags {
    int n = 0;
    int m = 1;
    int k = 1;
    std::string breaker = "isolation";
    std::string checkpoints;
    int r = 1;
    double c = -1.0;  // expansion factor; defaults to 2 (or 2k)
    double eps = 0.2;
    double budget_c = 0.75;
    uint64_t seed = 1;
};

int cmd_pipeline(const PipelineFlags& f, std::ostream& out) {
    if (f.n < 2) throw UsageError("--n: board size required");
    pipeline::PipelineSpec spec;
    spec.n = f.n;
    spec.m = std::max(0, f.m);
    spec.k = std::max(1, f.k);
    spec.breaker = f.breaker;
    spec.epsilon = f.eps;
    spec.budget_c = f.budget_c;
    spec.seed = f.seed;
    spec.expander_r = std::max(1, f.r);
    spec.expander_c = f.c > 0 ? f.c : (spec.k <= 1 ? 2.0 : 2.0 * spec.k);
    if (!f.checkpoints.empty())
        for (double v : parse_list(f.checkpoints, "--checkpoints"))
            spec.checkpoints.push_back(static_cast<long long>(v));
    auto report = pipeline::track_milestones(spec);
    out << "# " << kVersion << " seed=" << f.seed << "\n";
    out << "phase,achieved,round,fully_evaluated\n";
    for (const auto& ph : report.phases)
        out << ph.label << "," << (ph.achieved ? 1 : 0) << "," << ph.round << ","
            << (ph.fully_evaluated ? 1 : 0) << "\n";
    out << "boosters_claimed," << report.boosters_claimed << ","
        << (report.boosters_evaluated ? "evaluated" : "skipped") << "\n";
    out << "winner," << player_name(report.outcome.winner) << "," << report.outcome.rounds << "\n";
    return 0;
}

void add_pipeline_flags(CLI::App* app, PipelineFlags& f) {
    app->add_option("--n", f.n, "complete-board vertex count");
    app->add_option("--m", f.m, "random Maker bias");
    app->add_option("--k", f.k, "connectivity target (1 for the cycle phases)");
    app->add_option("--breaker", f.breaker, "isolation | random");
    app->add_option("--checkpoints", f.checkpoints, "comma-separated evaluation rounds");
    app->add_option("--R", f.r, "expansion set-size bound");
    app->add_option("--c", f.c, "expansion factor (default 2, or 2k)");
    app->add_option("--eps", f.eps, "epsilon margin");
    app->add_option("--budget-c", f.budget_c, "isolation round-budget constant");
    app->add_option("--seed", f.seed, "seed");
}

nlohmann::json report_to_json(const analysis::CheckReport& rep) {
    nlohmann::json j;
    j["property"] = rep.property;
    j["verdict"] = analysis::verdict_name(rep.verdict);
    if (!rep.cycle.empty()) j["cycle"] = rep.cycle;
    if (!rep.matching.empty()) j["matching"] = rep.matching;
    if (!rep.cut.empty()) j["cut"] = rep.cut;
    if (!rep.violating_set.empty()) j["violating_set"] = rep.violating_set;
    if (!rep.boosters.empty()) j["boosters"] = rep.boosters;
    if (rep.already_hamiltonian) j["already_hamiltonian"] = true;
    if (!rep.note.empty()) j["note"] = rep.note;
    j["cost"] = rep.cost;
    return j;
}

int cmd_check(const std::string& input, const std::string& property, const std::string& owner,
              int k, int size, int r, double c, std::ostream& out) {
    std::ifstream in(input);
    if (!in) throw UsageError("--input: cannot open " + input);
    GameGraph g = GameGraph::load(in);
    PlainGraph graph(g.vertex_count());
    for (long long id = 0; id < g.universe_size(); ++id) {
        Owner o = g.owner_by_id(id);
        bool take = owner == "any" ? o != Owner::Free
                    : owner == "m" ? o == Owner::Maker
                    : owner == "b" ? o == Owner::Breaker
                                   : o == Owner::Free;
        if (take) {
            auto [u, v] = g.edge_endpoints(id);
            graph.add_edge(u, v);
        }
    }
    analysis::CheckReport rep;
    if (property == "hamiltonian") {
        rep = analysis::is_hamiltonian(graph);
    } else if (property == "matching") {
        rep = analysis::has_matching_of_size(graph, size > 0 ? size : graph.n / 2);
    } else if (property == "kconn") {
        rep = analysis::k_connected(graph, k);
    } else if (property == "expander") {
        rep = analysis::is_expander(graph, std::max(1, r), c > 0 ? c : 2.0);
    } else if (property == "boosters") {
        rep = analysis::boosters(graph);
    } else {
        throw UsageError("--property: unknown property '" + property + "'");
    }
    out << report_to_json(rep).dump() << "\n";
    return 0;
}

int cmd_bounds(const std::string& dist, long long n, double p, long long big_n, long long big_k,
               long long draws, const std::string& dir, double a, std::ostream& out) {
    analysis::TailBoundQuery q;
    if (dist == "binomial") {
        q.dist = analysis::TailBoundQuery::Dist::Binomial;
        q.n = n;
        q.p = p;
    } else if (dist == "hypergeometric") {
        q.dist = analysis::TailBoundQuery::Dist::Hypergeometric;
        q.big_n = big_n;
        q.big_k = big_k;
        q.draws = draws;
    } else {
        throw UsageError("--dist: unknown distribution '" + dist + "'");
    }
    q.dir = dir == "upper" ? analysis::TailBoundQuery::Dir::Upper
                           : analysis::TailBoundQuery::Dir::Lower;
    q.a = a;
    auto res = analysis::tail_bound(q);
    nlohmann::json j;
    j["mu"] = res.mu;
    j["bound"] = res.bound;
    j["direction"] = dir;
    out << j.dump() << "\n";
    return 0;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Random-player positional game laboratory"};
    app.require_subcommand(1);

    GameFlags f;
    PipelineFlags pf;
    std::string sweep_key, sweep_values;
    int boxes = 100, box_size = 50, box_a = 1, box_b = 1, box_d = 1, box_trials = 100;
    uint64_t box_seed = 1;
    std::string check_input, check_property = "hamiltonian", check_owner = "any";
    int check_k = 2, check_size = 0, check_r = 1;
    double check_c = 2.0;
    std::string bound_dist = "binomial", bound_dir = "lower";
    long long bound_n = 10, bound_big_n = 0, bound_big_k = 0, bound_draws = 0;
    double bound_p = 0.5, bound_a = 0.5;

    std::string play_dump;
    CLI::App* play = app.add_subcommand("play", "play one game, print the transcript");
    add_game_flags(play, f);
    play->add_option("--dump", play_dump, "write the final position as an edge list");
    CLI::App* trials = app.add_subcommand("trials", "run a seeded batch, print a CSV aggregate");
    add_game_flags(trials, f);
    CLI::App* sw = app.add_subcommand("sweep", "run a parameter sweep of batches");
    add_game_flags(sw, f);
    sw->add_option("--sweep", sweep_key, "swept key: bias | m | n | epsilon | k | alpha | c");
    sw->add_option("--values", sweep_values, "comma-separated values");
    CLI::App* box = app.add_subcommand("box", "auxiliary box game batches");
    box->add_option("--boxes", boxes, "box count");
    box->add_option("--size", box_size, "elements per box");
    box->add_option("--a", box_a, "adversary bias");
    box->add_option("--bias", box_b, "collector bias");
    box->add_option("--d", box_d, "per-box quota");
    box->add_option("--trials", box_trials, "trial count");
    box->add_option("--seed", box_seed, "master seed");
    CLI::App* pipe = app.add_subcommand("pipeline", "milestone tracking for random-Maker games");
    add_pipeline_flags(pipe, pf);
    CLI::App* check = app.add_subcommand("check", "exact property check of an edge-list file");
    check->add_option("--input", check_input, "edge-list file")->required();
    check->add_option("--property", check_property,
                      "hamiltonian | matching | kconn | expander | boosters");
    check->add_option("--owner", check_owner, "edge filter: m | b | f | any");
    check->add_option("--k", check_k, "connectivity k");
    check->add_option("--size", check_size, "required matching size");
    check->add_option("--R", check_r, "expansion set-size bound");
    check->add_option("--c", check_c, "expansion factor");
    CLI::App* bounds = app.add_subcommand("bounds", "tail-bound evaluation");
    bounds->add_option("--dist", bound_dist, "binomial | hypergeometric");
    bounds->add_option("--n", bound_n, "binomial n");
    bounds->add_option("--p", bound_p, "binomial p");
    bounds->add_option("--N", bound_big_n, "population size");
    bounds->add_option("--K", bound_big_k, "success count");
    bounds->add_option("--draws", bound_draws, "draw count");
    bounds->add_option("--dir", bound_dir, "lower | upper");
    bounds->add_option("--a", bound_a, "deviation fraction");

    std::vector<std::string> argv = args;
    std::reverse(argv.begin(), argv.end());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (play->parsed()) return cmd_play(f, play_dump, out);
        if (trials->parsed()) return cmd_trials(f, out);
        if (sw->parsed()) return cmd_sweep(f, sweep_key, sweep_values, out);
        if (box->parsed())
            return cmd_box(boxes, box_size, box_a, box_b, box_d, box_trials, box_seed, out);
        if (pipe->parsed()) return cmd_pipeline(pf, out);
        if (check->parsed())
            return cmd_check(check_input, check_property, check_owner, check_k, check_size,
                             check_r, check_c, out);
        if (bounds->parsed())
            return cmd_bounds(bound_dist, bound_n, bound_p, bound_big_n, bound_big_k, bound_draws,
                              bound_dir, bound_a, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const mc::VerificationFailure& e) {
        err << "verification failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace mbsim::cli
