#pragma once

#include "zecap/channel.hpp"
#include "zecap/hypergraph.hpp"
#include "zecap/rational.hpp"
#include "zecap/sqrt2.hpp"

#include <functional>
#include <string>
#include <vector>

namespace zecap {

// Bipartite conditional distribution P(s,t|a,b): Alice takes a and produces
// s, Bob takes b and produces t. Stored exactly; validated on construction.
template <class S>
class BasicCorrelation {
public:
    BasicCorrelation(std::vector<std::string> a, std::vector<std::string> s,
                     std::vector<std::string> b, std::vector<std::string> t,
                     std::vector<std::vector<S>> table_by_ab)
        : a_(std::move(a)), s_(std::move(s)), b_(std::move(b)), t_(std::move(t)) {
        const size_t na = a_.size(), ns = s_.size(), nb = b_.size(), nt = t_.size();
        if (na == 0 || ns == 0 || nb == 0 || nt == 0)
            throw Error("correlation needs non-empty alphabets");
        if (table_by_ab.size() != na * nb)
            throw Error("correlation table has wrong (a,b) count");
        table_.reserve(na * nb * ns * nt);
        for (auto& block : table_by_ab) {
            if (block.size() != ns * nt) throw Error("correlation block has wrong size");
            for (auto& v : block) {
                if (v.sign() < 0) throw Error("correlation entry is negative");
                table_.push_back(std::move(v));
            }
        }
        for (size_t ai = 0; ai < na; ++ai)
            for (size_t bi = 0; bi < nb; ++bi) {
                S sum(0);
                for (size_t si = 0; si < ns; ++si)
                    for (size_t ti = 0; ti < nt; ++ti) sum += entry(ai, si, bi, ti);
                if (sum != S(1))
                    throw Error("correlation block (" + a_[ai] + "," + b_[bi] +
                                ") sums to " + zecap::to_string(sum) + ", not 1");
            }
    }

    const std::vector<std::string>& alice_inputs() const { return a_; }
    const std::vector<std::string>& alice_outputs() const { return s_; }
    const std::vector<std::string>& bob_inputs() const { return b_; }
    const std::vector<std::string>& bob_outputs() const { return t_; }

    const S& entry(size_t a, size_t s, size_t b, size_t t) const {
        return table_[((a * b_.size() + b) * s_.size() + s) * t_.size() + t];
    }

    friend bool operator==(const BasicCorrelation& x, const BasicCorrelation& y) {
        return x.a_ == y.a_ && x.s_ == y.s_ && x.b_ == y.b_ && x.t_ == y.t_ &&
               x.table_ == y.table_;
    }

private:
    std::vector<std::string> a_, s_, b_, t_;
    std::vector<S> table_;
};

using Correlation = BasicCorrelation<Rational>;
using AlgCorrelation = BasicCorrelation<Sqrt2Ext>;

inline AlgCorrelation to_alg(const Correlation& p) {
    const auto& A = p.alice_inputs();
    const auto& Sv = p.alice_outputs();
    const auto& B = p.bob_inputs();
    const auto& T = p.bob_outputs();
    std::vector<std::vector<Sqrt2Ext>> blocks(A.size() * B.size());
    for (size_t a = 0; a < A.size(); ++a)
        for (size_t b = 0; b < B.size(); ++b) {
            auto& blk = blocks[a * B.size() + b];
            for (size_t s = 0; s < Sv.size(); ++s)
                for (size_t t = 0; t < T.size(); ++t) blk.emplace_back(p.entry(a, s, b, t));
        }
    return AlgCorrelation(A, Sv, B, T, std::move(blocks));
}

struct NsCheck {
    bool a_to_b = false; // Bob's marginal is independent of Alice's input
    bool b_to_a = false; // Alice's marginal is independent of Bob's input
    bool both() const { return a_to_b && b_to_a; }
};

template <class S>
NsCheck is_nonsignalling(const BasicCorrelation<S>& p) {
    const size_t na = p.alice_inputs().size(), ns = p.alice_outputs().size();
    const size_t nb = p.bob_inputs().size(), nt = p.bob_outputs().size();
    NsCheck res{true, true};
    // Bob's marginal over t must not depend on a
    for (size_t b = 0; b < nb && res.a_to_b; ++b)
        for (size_t t = 0; t < nt && res.a_to_b; ++t) {
            S ref(0);
            for (size_t s = 0; s < ns; ++s) ref += p.entry(0, s, b, t);
            for (size_t a = 1; a < na; ++a) {
                S cur(0);
                for (size_t s = 0; s < ns; ++s) cur += p.entry(a, s, b, t);
                if (cur != ref) { res.a_to_b = false; break; }
            }
        }
    // Alice's marginal over s must not depend on b
    for (size_t a = 0; a < na && res.b_to_a; ++a)
        for (size_t s = 0; s < ns && res.b_to_a; ++s) {
            S ref(0);
            for (size_t t = 0; t < nt; ++t) ref += p.entry(a, s, 0, t);
            for (size_t b = 1; b < nb; ++b) {
                S cur(0);
                for (size_t t = 0; t < nt; ++t) cur += p.entry(a, s, b, t);
                if (cur != ref) { res.b_to_a = false; break; }
            }
        }
    return res;
}

// M(t|a) = sum_{s,y} P(s,t|a,y) N(y|s): Alice's box output feeds the channel,
// the channel output feeds Bob's box input. Requires non-signalling from Bob
// to Alice (operational time order) and matching alphabets.
template <class S>
BasicChannel<S> wire(const BasicCorrelation<S>& p, const BasicChannel<S>& ch) {
    if (p.alice_outputs() != ch.inputs())
        throw Error("wire: Alice's output alphabet must equal the channel inputs");
    if (p.bob_inputs() != ch.outputs())
        throw Error("wire: Bob's input alphabet must equal the channel outputs");
    if (!is_nonsignalling(p).b_to_a)
        throw Error("wire: correlation signals from Bob to Alice");
    const size_t na = p.alice_inputs().size(), nt = p.bob_outputs().size();
    const size_t nx = ch.inputs().size(), ny = ch.outputs().size();
    std::vector<std::vector<S>> rows(nt, std::vector<S>(na, S(0)));
    for (size_t t = 0; t < nt; ++t)
        for (size_t a = 0; a < na; ++a)
            for (size_t x = 0; x < nx; ++x)
                for (size_t y = 0; y < ny; ++y)
                    rows[t][a] += p.entry(a, x, y, t) * ch.entry(y, x);
    return BasicChannel<S>(p.alice_inputs(), p.bob_outputs(), std::move(rows));
}

inline AlgChannel wire(const AlgCorrelation& p, const Channel& ch) { return wire(p, to_alg(ch)); }

std::vector<std::vector<int>> all_permutations(int k);

enum class TwirlMode {
    IdentityOutput, // average over simultaneous permutations of Alice's input
                    // and Bob's output (the simulated identity channel)
    IdentityInput,  // average over simultaneous permutations of Alice's output
                    // and Bob's input (the identity channel being consumed)
};

template <class S>
BasicCorrelation<S> twirl(const BasicCorrelation<S>& p, TwirlMode mode, int size) {
    const size_t na = p.alice_inputs().size(), ns = p.alice_outputs().size();
    const size_t nb = p.bob_inputs().size(), nt = p.bob_outputs().size();
    const size_t k = static_cast<size_t>(size);
    if (mode == TwirlMode::IdentityOutput && (na != k || nt != k))
        throw Error("twirl: Alice-input/Bob-output alphabets must have the given size");
    if (mode == TwirlMode::IdentityInput && (ns != k || nb != k))
        throw Error("twirl: Alice-output/Bob-input alphabets must have the given size");
    auto perms = all_permutations(size);
    S norm = S(1) / S(static_cast<int>(perms.size()));
    std::vector<std::vector<S>> blocks(na * nb, std::vector<S>(ns * nt, S(0)));
    for (const auto& perm : perms)
        for (size_t a = 0; a < na; ++a)
            for (size_t b = 0; b < nb; ++b)
                for (size_t s = 0; s < ns; ++s)
                    for (size_t t = 0; t < nt; ++t) {
                        const S& v = mode == TwirlMode::IdentityOutput
                                         ? p.entry(perm[a], s, b, perm[t])
                                         : p.entry(a, perm[s], perm[b], t);
                        blocks[a * nb + b][s * nt + t] += norm * v;
                    }
    return BasicCorrelation<S>(p.alice_inputs(), p.alice_outputs(), p.bob_inputs(),
                               p.bob_outputs(), std::move(blocks));
}

// Wraps deterministic local pre/post processing around a box; the result is
// in the same correlation class (classes are closed under local operations).
// a_pre maps new Alice inputs to box inputs; s_post(new_a, box_s) names the
// new Alice output, and likewise on Bob's side.
template <class S>
BasicCorrelation<S> wrap_local(const BasicCorrelation<S>& box,
                               std::vector<std::string> new_a, const std::vector<int>& a_pre,
                               std::vector<std::string> new_s,
                               const std::function<int(int, int)>& s_post,
                               std::vector<std::string> new_b, const std::vector<int>& b_pre,
                               std::vector<std::string> new_t,
                               const std::function<int(int, int)>& t_post) {
    const size_t ns_box = box.alice_outputs().size(), nt_box = box.bob_outputs().size();
    const size_t na = new_a.size(), ns = new_s.size(), nb = new_b.size(), nt = new_t.size();
    std::vector<std::vector<S>> blocks(na * nb, std::vector<S>(ns * nt, S(0)));
    for (size_t a = 0; a < na; ++a)
        for (size_t b = 0; b < nb; ++b)
            for (size_t s = 0; s < ns_box; ++s)
                for (size_t t = 0; t < nt_box; ++t) {
                    const S& v = box.entry(a_pre[a], s, b_pre[b], t);
                    if (v == S(0)) continue;
                    int s2 = s_post(static_cast<int>(a), static_cast<int>(s));
                    int t2 = t_post(static_cast<int>(b), static_cast<int>(t));
                    blocks[a * nb + b][static_cast<size_t>(s2) * nt + t2] += v;
                }
    return BasicCorrelation<S>(std::move(new_a), std::move(new_s), std::move(new_b),
                               std::move(new_t), std::move(blocks));
}

// Built-in boxes.
Correlation pr_box();
AlgCorrelation p_lambda_box(const Sqrt2Ext& lambda);
Sqrt2Ext tsirelson_lambda(); // (1 + 1/sqrt2)/2
Correlation s42_box();
Correlation shared_coin_box(int k, int n_inputs = 2);
// The erasure-simulation protocol packaged as one box: wiring it to ID(2)
// reproduces the ternary erasure channel when built on the PR box, and the
// lambda-weighted channel when built on P_lambda.
Correlation pr_wiring_box();
AlgCorrelation p_lambda_wiring_box(const Sqrt2Ext& lambda);

enum class Side { A, B };

// Channel seen by the far party once one party's input/output pair is fixed.
// When the conditioning pair has probability zero for some far input the
// table is identically zero and `defined` is false.
template <class S>
struct BasicConditionalChannel {
    std::string label;
    std::vector<std::string> inputs, outputs;
    std::vector<std::vector<S>> table; // [input][output]
    bool defined = false;
};

using ConditionalChannel = BasicConditionalChannel<Rational>;

template <class S>
std::vector<BasicConditionalChannel<S>> conditional_channels(const BasicCorrelation<S>& p,
                                                             Side side) {
    const size_t na = p.alice_inputs().size(), ns = p.alice_outputs().size();
    const size_t nb = p.bob_inputs().size(), nt = p.bob_outputs().size();
    std::vector<BasicConditionalChannel<S>> out;
    if (side == Side::B) {
        // condition on Alice's (a,s); Bob sees a channel from b to t
        for (size_t a = 0; a < na; ++a)
            for (size_t s = 0; s < ns; ++s) {
                BasicConditionalChannel<S> c;
                c.label = p.alice_inputs()[a] + ":" + p.alice_outputs()[s];
                c.inputs = p.bob_inputs();
                c.outputs = p.bob_outputs();
                c.table.assign(nb, std::vector<S>(nt, S(0)));
                c.defined = true;
                for (size_t b = 0; b < nb; ++b) {
                    S norm(0);
                    for (size_t t = 0; t < nt; ++t) norm += p.entry(a, s, b, t);
                    if (norm == S(0)) { c.defined = false; break; }
                    for (size_t t = 0; t < nt; ++t) c.table[b][t] = p.entry(a, s, b, t) / norm;
                }
                if (!c.defined) c.table.assign(nb, std::vector<S>(nt, S(0)));
                out.push_back(std::move(c));
            }
    } else {
        // condition on Bob's (b,t); Alice sees a channel from a to s
        for (size_t b = 0; b < nb; ++b)
            for (size_t t = 0; t < nt; ++t) {
                BasicConditionalChannel<S> c;
                c.label = p.bob_inputs()[b] + ":" + p.bob_outputs()[t];
                c.inputs = p.alice_inputs();
                c.outputs = p.alice_outputs();
                c.table.assign(na, std::vector<S>(ns, S(0)));
                c.defined = true;
                for (size_t a = 0; a < na; ++a) {
                    S norm(0);
                    for (size_t s = 0; s < ns; ++s) norm += p.entry(a, s, b, t);
                    if (norm == S(0)) { c.defined = false; break; }
                    for (size_t s = 0; s < ns; ++s) c.table[a][s] = p.entry(a, s, b, t) / norm;
                }
                if (!c.defined) c.table.assign(na, std::vector<S>(ns, S(0)));
                out.push_back(std::move(c));
            }
    }
    return out;
}

// Two channels with a common input whose output distributions are disjoint;
// all-zero (undefined) tables are distinguishable from everything.
template <class S>
bool pairwise_distinguishable(const BasicConditionalChannel<S>& n,
                              const BasicConditionalChannel<S>& m) {
    if (n.inputs != m.inputs || n.outputs != m.outputs)
        throw Error("pairwise distinguishability needs equal alphabets");
    for (size_t x = 0; x < n.table.size(); ++x) {
        S overlap(0);
        for (size_t y = 0; y < n.table[x].size(); ++y) overlap += n.table[x][y] * m.table[x][y];
        if (overlap == S(0)) return true;
    }
    return false;
}

template <class S>
Graph distinguishability_graph(const std::vector<BasicConditionalChannel<S>>& chans) {
    std::vector<std::string> names;
    for (const auto& c : chans) names.push_back(c.label);
    Graph g(std::move(names));
    for (size_t i = 0; i < chans.size(); ++i)
        for (size_t j = i + 1; j < chans.size(); ++j)
            if (pairwise_distinguishable(chans[i], chans[j]))
                g.add_edge(static_cast<int>(i), static_cast<int>(j));
    return g;
}

// exact clique cover number (colouring of the complement); guard |V| <= 20
int clique_cover_number(const Graph& g, int guard = 20);

struct RefutationReport {
    bool refuted = false;
    int chi_bob_side = 0;   // cover number of the graph on |A||S| channels
    int chi_alice_side = 0; // cover number of the graph on |B||T| channels
    int alice_inputs = 0;
    int bob_inputs = 0;
};

// Entanglement-implementable correlations satisfy chi(Delta_B) >= |A| and
// chi(Delta_A) >= |B|; either bound failing refutes membership. A false
// result is not a membership proof.
template <class S>
RefutationReport se_membership_refuted(const BasicCorrelation<S>& p) {
    RefutationReport r;
    r.alice_inputs = static_cast<int>(p.alice_inputs().size());
    r.bob_inputs = static_cast<int>(p.bob_inputs().size());
    r.chi_bob_side = clique_cover_number(distinguishability_graph(conditional_channels(p, Side::B)));
    r.chi_alice_side =
        clique_cover_number(distinguishability_graph(conditional_channels(p, Side::A)));
    r.refuted = r.chi_bob_side < r.alice_inputs || r.chi_alice_side < r.bob_inputs;
    return r;
}

// {"A":[...],"S":[...],"B":[...],"T":[...],"table":{"a|b":[[t entries by s]]}}
// entry strings are "p/q" or "p/q+r/s*sqrt2"
Correlation correlation_from_json(const std::string& text);
AlgCorrelation alg_correlation_from_json(const std::string& text);
std::string correlation_to_json(const Correlation& p);
std::string correlation_to_json(const AlgCorrelation& p);

} // namespace zecap
