#pragma once

#include "zecap/capacity.hpp"
#include "zecap/channel.hpp"
#include "zecap/correlation.hpp"
#include "zecap/guards.hpp"
#include "zecap/linprog.hpp"

#include <optional>
#include <string>
#include <vector>

namespace zecap {

// ---- one-shot cost without assistance: positive rank -------------------

struct Factorization {
    Channel left;  // [r] -> Y
    Channel right; // X -> [r]
};

struct PositiveRankBounds {
    int lower = 0; // linear rank over the rationals
    int upper = 0; // best exactly-verified nonnegative factorisation found
    std::optional<Factorization> factorization;
    bool exact() const { return lower == upper; }
};

int rational_rank(const Channel& ch);
PositiveRankBounds positive_rank_bounds(const Channel& ch);

// ---- one-shot cost with shared randomness -------------------------------

// least k such that the channel is a convex combination of deterministic
// channels using at most k distinct outputs, decided by exact LP
// feasibility per output-support subset; returns k_max + 1 when none
template <class S>
int k0_sr(const BasicChannel<S>& ch, int k_max = -1);

extern template int k0_sr<Rational>(const BasicChannel<Rational>&, int);
extern template int k0_sr<Sqrt2Ext>(const BasicChannel<Sqrt2Ext>&, int);

// ---- one-shot and asymptotic cost with non-signalling boxes -------------

struct ColumnMaxSum {
    Rational sum{0};   // sum_y max_x N(y|x)
    Int k0{0};         // its ceiling
    double bits = 0;   // log2 of the exact sum
};

ColumnMaxSum k_ns(const Channel& ch);
Int k0_ns(const Channel& ch);

// the unique twirled box performing a k-message exact simulation when the
// column-max sum equals k exactly
Correlation forced_ns_correlation(const Channel& ch, int k);

// ---- shared-randomness protocols ----------------------------------------

struct TouchingSet {
    int n = 0, m = 0, q = 0;
    std::vector<std::vector<int>> tuples; // subsets of [0..n)^q, sorted
};

// a verified m-touching set of size <= min{n^q, floor(2nq(n/m)^q)}; prefers
// the deterministic prefix product {0..n-m}^q when it is no larger than the
// sampled bound, otherwise samples and verifies (resampling on failure)
TouchingSet m_touching_set(int n, int m, int q, uint64_t seed);

// the randomised construction alone: floor(2nq(n/m)^q) uniform draws,
// deduplicated and exhaustively verified, resampled on failure
TouchingSet sampled_touching_set(int n, int m, int q, uint64_t seed);

bool is_touching(const TouchingSet& t);

// Exact simulation of ch^(x)q from q uniform random permutations of [n']:
// outputs are split into max-mass copies, the channel embeds as a
// sub-channel of the uniform-subset channel U_{n',M}, and the encoder sends
// the index into a permuted touching set.
struct SrProtocol {
    Channel base;
    int copies = 1;
    int perm_degree = 0;  // n'
    Int denominator{1};   // M: entries of base are multiples of 1/M
    std::vector<std::vector<int>> embed;  // per input: M-subset of [0..n')
    std::vector<int> copy_output;         // [0..n') -> base output index
    TouchingSet touching;

    int message_count() const { return static_cast<int>(touching.tuples.size()); }

    // first touching tuple landing in the permuted input sets
    int encode(const std::vector<std::vector<int>>& perms, const std::vector<int>& inputs) const;
    std::vector<int> decode(const std::vector<std::vector<int>>& perms, int msg) const;

    // (1/q) log2(messages), and the bound log2(n'/M) + (1/q) log2(2qn')
    double rate_bits() const;
    double rate_bound_bits() const;
};

SrProtocol build_sr_protocol(const Channel& ch, int q, uint64_t seed);

struct VerifyReport {
    bool exact = false;
    std::string note;
    struct Mismatch {
        std::string input, output;
        Rational simulated, expected;
    };
    std::vector<Mismatch> mismatches; // first few only
};

// full enumeration over the shared randomness; rational equality against
// target^(x)q, zero tolerance
VerifyReport verify_protocol_exact(const SrProtocol& p, const Channel& target);

std::string protocol_to_json(const SrProtocol& p);
SrProtocol protocol_from_json(const std::string& text);

// ---- weak simulation ------------------------------------------------------

struct WeakSimRate {
    Rational omega_star{0};
    double bits = 0;
    Channel witness; // channel with support inside the hypergraph attaining it
};

WeakSimRate weak_sim_rate(const Hypergraph& h);

// ---- precision embedding for channels given through a denominator --------

// floor-to-1/M refinement: `refined` maps X to Y plus one leftover symbol
// per input, `post` restores the exact channel (compose(post, refined) ==
// original, exactly, for every M >= 1)
struct PrecisionEmbedding {
    Channel refined;
    Channel post;
};

PrecisionEmbedding rationalize_with_precision(const Channel& ch, const Int& M);

// ---- summary ---------------------------------------------------------------

struct SimCostReport {
    int pr_lower = 0;
    int pr_upper = 0;
    bool k0_sr_computed = false; // false when the enumeration guard fired
    Int k0_sr_value{0};
    Int k0_ns_value{0};
    Rational colmax_sum{0};
    double k_ns_bits = 0;
};

SimCostReport simcost_report(const Channel& ch);

} // namespace zecap
