#pragma once

#include "zecap/channel.hpp"
#include "zecap/hypergraph.hpp"
#include "zecap/linprog.hpp"

#include <optional>
#include <string>
#include <vector>

namespace zecap {

struct IndependenceResult {
    int size = 0;
    std::vector<int> witness;
};

// exact maximum independent set by branch and bound with a greedy
// clique-cover bound; deterministic
IndependenceResult independence_number(const Graph& g);

struct PackingResult {
    Rational value{0};
    std::vector<Rational> vertex_weights;
    // covering weights per original hyperedge, read off the LP dual
    // (duplicate hyperedges carry weight on their first occurrence)
    std::vector<Rational> edge_duals;
};

struct CoveringResult {
    Rational value{0};
    std::vector<Rational> edge_weights;
};

// fractional packing number alpha*; weights capped at 1 so the value is
// finite even when a vertex lies in no hyperedge
PackingResult fractional_packing(const Hypergraph& h);

// fractional covering number omega*; throws naming an uncoverable vertex
CoveringResult fractional_covering(const Hypergraph& h);

// floor(alpha*(H(N))): the one-shot zero-error capacity with free
// non-signalling correlations
Int c0_ns(const Channel& ch);

struct NsCodeCheck {
    bool feasible = false;
    LinearProgram<Rational> lp; // the raw D/Q system that was decided
};

// direct feasibility of the twirled D/Q system for sending g messages; the
// g = 1 case is trivially feasible (one message needs no code)
NsCodeCheck ns_code_feasible(const Channel& ch, int g);

// alpha(G^(x)n)^(1/n), a lower bound on the Shannon capacity of G
double theta_lower_bound(const Graph& g, int n, long guard = 100000);

// Blahut-Arimoto Shannon capacity in bits, within tol
double shannon_capacity_ba(const Channel& ch, double tol = 1e-9, long max_iter = 1000000);

struct CapacityReport {
    Int c0{0};
    std::vector<int> c0_witness;
    Int c0_ns_value{0};
    Rational alpha_star{0};
    Rational omega_star{0};
    double c0_ns_bits = 0; // log2(alpha*)
    std::vector<std::pair<int, double>> theta_lower_bounds;
};

CapacityReport capacity_report(const Channel& ch, int theta_powers = 2);

} // namespace zecap
