#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mbsim/graph_core.hpp"

namespace mbsim::analysis {

struct PreconditionViolated : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Verdict { Yes, No, SampledYes, SampledNo, Unevaluated };

const char* verdict_name(Verdict v);

// Result of an exact property check. Yes/No verdicts carry a checkable
// witness where one exists: spanning cycle, matching, vertex cut,
// violating set, or booster list.
struct CheckReport {
    std::string property;
    Verdict verdict = Verdict::Unevaluated;
    std::vector<int> cycle;                        // Hamiltonicity
    std::vector<std::pair<int, int>> matching;     // matchings
    std::vector<int> cut;                          // k-connectivity (No)
    std::vector<int> violating_set;                // expander (No)
    std::vector<std::pair<int, int>> boosters;     // booster list
    bool already_hamiltonian = false;
    std::string note;
    uint64_t cost = 0;  // elapsed work units (search nodes / subsets / flows)
};

// ---- Hamiltonicity ----------------------------------------------------

struct HamiltonCaps {
    int exact_cap = 24;  // unconditional backtracking bound
    int fast_cap = 64;   // with a degree-based certificate first
};

// Exact decision with a spanning-cycle witness on Yes. Above exact_cap the
// checker still answers when a one-sided certificate applies (minimum
// degree >= n/2, or a complete degree-closure), or when a cheap
// obstruction certifies No; otherwise Unevaluated with note SizeCapExceeded.
CheckReport is_hamiltonian(const PlainGraph& g, HamiltonCaps caps = {});

// True spanning cycle of g? (independent witness validator)
bool validate_hamilton_cycle(const PlainGraph& g, const std::vector<int>& cycle);

// Bondy-Chvatal closure: returns true iff the closure is complete
// (a one-sided Hamiltonicity certificate for n >= 3).
bool closure_complete(const PlainGraph& g);

// Exact length (edge count) of a longest path. Subset DP for n <= 20,
// branch and bound above; intended for small n.
int longest_path_length(const PlainGraph& g);

// ---- Matchings and Hall ------------------------------------------------

// Does g contain a matching of required_size? Exact for bipartite graphs
// (augmenting paths); non-bipartite graphs are brute-forced up to
// |V| <= 20 and Unevaluated above.
CheckReport has_matching_of_size(const PlainGraph& g, int required_size);

inline CheckReport has_perfect_matching(const PlainGraph& g, int required_size) {
    return has_matching_of_size(g, required_size);
}

// For a bipartite graph given by parts (equal sizes): a set X inside
// part0 with |N(X)| < |X|, or nullopt iff a perfect matching exists.
std::optional<std::vector<int>> hall_violator(const PlainGraph& g,
                                              const std::vector<int>& part0,
                                              const std::vector<int>& part1);

// ---- Connectivity ------------------------------------------------------

bool is_connected(const PlainGraph& g);
std::vector<std::vector<int>> connected_components(const PlainGraph& g);

// Exact k-vertex-connectivity via unit-capacity vertex-split max-flow
// (pairwise over a k-vertex pivot set, then pivot-set-to-vertex flows).
// No comes with a vertex cut of size < k.
CheckReport k_connected(const PlainGraph& g, int k);

// ---- Expansion ----------------------------------------------------------

struct ExpanderOptions {
    uint64_t subset_budget = 10'000'000;  // exact mode enumerates all |U| <= R
    uint64_t samples = 100'000;           // sampled mode subset draws
    uint64_t sample_seed = 0x5EED5EEDULL;
};

// |N(U)| >= c|U| for all U with |U| <= R. Exact (full enumeration) within
// the subset budget, otherwise sampled: a found violation is a genuine No
// with witness; no violation found gives the one-sided SampledYes.
CheckReport is_expander(const PlainGraph& g, int r_cap, double c,
                        ExpanderOptions opts = {});

// ---- Boosters -----------------------------------------------------------

// Non-edges whose addition makes g Hamiltonian or lengthens its longest
// path. Exact; |V| <= 24. On a Hamiltonian input: empty list with
// already_hamiltonian set.
CheckReport boosters(const PlainGraph& g);

// ---- Degree peeling and pseudo-random T-sets -----------------------------

// Non-empty induced subgraph with min degree > r, by repeatedly removing
// vertices of degree <= r. Requires average degree >= 2r.
struct PeelResult {
    std::vector<int> vertices;  // surviving vertices, original ids
    PlainGraph subgraph;        // induced subgraph, reindexed by position
};
PeelResult peel_min_degree(const PlainGraph& g, double r);

// T_i = { v in U_i : e(v, U_{1-i}) < (eps/2) * n^alpha }, n = part size.
std::pair<std::vector<int>, std::vector<int>> pseudo_t_sets(
    const PlainGraph& g, const std::vector<int>& u0, const std::vector<int>& u1,
    double eps, double alpha, int part_size);

// ---- Tail bounds ----------------------------------------------------------

struct TailBoundQuery {
    enum class Dist { Binomial, Hypergeometric };
    enum class Dir { Lower, Upper };
    Dist dist = Dist::Binomial;
    Dir dir = Dir::Lower;
    // Binomial(n, p)
    long long n = 0;
    double p = 0.0;
    // Hypergeometric(N, K, draws)
    long long big_n = 0, big_k = 0, draws = 0;
    double a = 0.0;
};

struct TailBoundResult {
    double mu = 0.0;
    double bound = 0.0;
};

// Chernoff-type bounds: P(X < (1-a)mu) < exp(-a^2 mu / 2) for a > 0 and
// P(X > (1+a)mu) < exp(-a^2 mu / 3) for 0 < a < 1, with mu = np for the
// Binomial and mu = nK/N for the Hypergeometric.
TailBoundResult tail_bound(const TailBoundQuery& q);

// Exact Binomial tail as an oracle for the bounds: P(X < (1-a)mu) for
// Lower, P(X > (1+a)mu) for Upper. Summation; intended for small n.
double exact_binomial_tail(long long n, double p, double a, TailBoundQuery::Dir dir);

}  // namespace mbsim::analysis
