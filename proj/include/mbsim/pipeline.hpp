#pragma once

#include <string>
#include <vector>

#include "mbsim/analysis.hpp"
#include "mbsim/engine.hpp"

namespace mbsim::pipeline {

// Partition of the complete board's edges into per-vertex boxes via a
// near-regular rotational tournament; |A_v| is floor or ceil of (n-1)/2.
struct TournamentAssignment {
    int n = 0;
    std::vector<std::vector<std::pair<int, int>>> boxes;  // A_v per vertex
};

TournamentAssignment build_tournament(int n);

enum class DiracVerdict { Yes, Maybe };

// One-sided sufficient condition: min degree >= |V|/2 (never answers No).
DiracVerdict dirac_fast_path(const PlainGraph& g);

// Hamiltonicity certification ladder for final graphs of any size:
// obstruction certificates for No, degree certificates (Dirac / closure)
// for Yes, exact search within the cap, Unevaluated otherwise.
analysis::CheckReport certify_hamiltonian(const PlainGraph& g);

// Named constants from the bias analysis; far too conservative for desk
// scale, kept as reference defaults.
struct AnalysisConstants {
    static int box_degree(int k) { return 16 * k; }
    static double expander_delta(int k);
    static double bias_amplitude(int k);
};

struct PipelineSpec {
    int n = 32;
    int m = 4;
    int k = 1;  // 1: expander -> connected -> Hamiltonian; >=2: k-connectivity phases
    std::string breaker = "isolation";
    double epsilon = 0.2;
    double budget_c = 0.75;
    uint64_t seed = 1;
    std::vector<long long> checkpoints;  // empty: powers of two up to the game length
    int expander_r = 1;
    double expander_c = 2.0;
    int strong_r = -1;      // defaults to floor((n+k)/(4k))
    double strong_c = -1.0; // defaults to 2k
};

struct Phase {
    std::string label;
    bool achieved = false;
    long long round = -1;
    bool fully_evaluated = true;  // false if some checkpoint came back unevaluated
};

struct MilestoneReport {
    std::vector<Phase> phases;
    long long boosters_claimed = 0;
    bool boosters_evaluated = false;
    TrialOutcome outcome;
};

MilestoneReport track_milestones(const PipelineSpec& spec);

}  // namespace mbsim::pipeline
