#include "zecap/correlation.hpp"

#include "zecap/guards.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>

namespace zecap {

std::vector<std::vector<int>> all_permutations(int k) {
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> out;
    do out.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

Correlation pr_box() {
    Rational half = make_rational(1, 2);
    std::vector<std::string> bits = {"0", "1"};
    std::vector<std::vector<Rational>> blocks(4, std::vector<Rational>(4, Rational(0)));
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int s = 0; s < 2; ++s)
                for (int t = 0; t < 2; ++t)
                    if ((s ^ t) == (a & b)) blocks[a * 2 + b][s * 2 + t] = half;
    return Correlation(bits, bits, bits, bits, std::move(blocks));
}

Sqrt2Ext tsirelson_lambda() {
    // (1 + 1/sqrt2)/2 = 1/2 + (1/4) sqrt2
    return {make_rational(1, 2), make_rational(1, 4)};
}

AlgCorrelation p_lambda_box(const Sqrt2Ext& lambda) {
    if (lambda.sign() < 0 || (Sqrt2Ext(1) - lambda).sign() < 0)
        throw Error("P_lambda needs 0 <= lambda <= 1");
    Sqrt2Ext on = lambda / Sqrt2Ext(2);
    Sqrt2Ext off = (Sqrt2Ext(1) - lambda) / Sqrt2Ext(2);
    std::vector<std::string> bits = {"0", "1"};
    std::vector<std::vector<Sqrt2Ext>> blocks(4, std::vector<Sqrt2Ext>(4));
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int s = 0; s < 2; ++s)
                for (int t = 0; t < 2; ++t)
                    blocks[a * 2 + b][s * 2 + t] = ((s ^ t) == (a & b)) ? on : off;
    return AlgCorrelation(bits, bits, bits, bits, std::move(blocks));
}

Correlation s42_box() {
    // Alice: bit z in, uniformly random element x' of [4] out. Bob: 2-subset
    // y' in, bit out: z if x' lies in y', otherwise the flipped bit.
    std::vector<std::string> bits = {"0", "1"};
    std::vector<std::string> ground = {"1", "2", "3", "4"};
    auto subsets = subsets_of_size(4, 2);
    std::vector<std::string> bsyms;
    for (const auto& sub : subsets) bsyms.push_back(subset_symbol(sub));
    Rational quarter = make_rational(1, 4);
    std::vector<std::vector<Rational>> blocks(2 * subsets.size(),
                                              std::vector<Rational>(4 * 2, Rational(0)));
    for (int z = 0; z < 2; ++z)
        for (size_t b = 0; b < subsets.size(); ++b)
            for (int x = 1; x <= 4; ++x) {
                bool in = std::find(subsets[b].begin(), subsets[b].end(), x) != subsets[b].end();
                int zhat = in ? z : 1 - z;
                blocks[z * subsets.size() + b][(x - 1) * 2 + zhat] = quarter;
            }
    return Correlation(bits, ground, bsyms, bits, std::move(blocks));
}

Correlation shared_coin_box(int k, int n_inputs) {
    if (k < 1 || n_inputs < 1) throw Error("shared coin box needs k >= 1, inputs >= 1");
    std::vector<std::string> vals, ins;
    for (int i = 0; i < k; ++i) vals.push_back(std::to_string(i));
    for (int i = 0; i < n_inputs; ++i) ins.push_back(std::to_string(i));
    Rational w = make_rational(1, k);
    std::vector<std::vector<Rational>> blocks(
        static_cast<size_t>(n_inputs) * n_inputs,
        std::vector<Rational>(static_cast<size_t>(k) * k, Rational(0)));
    for (auto& blk : blocks)
        for (int v = 0; v < k; ++v) blk[static_cast<size_t>(v) * k + v] = w;
    return Correlation(ins, vals, ins, vals, std::move(blocks));
}

namespace {

// local processing of the erasure-simulation protocol: Alice maps her
// ternary message to a box input and a transmitted bit, Bob decorates the
// received bit with his box output
template <class S>
BasicCorrelation<S> wiring_box(const BasicCorrelation<S>& box) {
    std::vector<std::string> xs = {"1", "2", "3"};
    std::vector<std::string> bits = {"0", "1"};
    std::vector<std::string> outs = {"1", "2", "3", "e"};
    std::vector<int> a_pre = {0, 1, 0};
    std::vector<int> b_pre = {0, 1};
    auto s_post = [](int x, int s) { return x == 2 ? 0 : s; };
    // received bit zhat and box output t name the channel output:
    // (1,1)->"1", (1,0)->"2", (0,1)->"3", (0,0)->"e"
    auto t_post = [](int zhat, int t) {
        if (zhat == 1) return t == 1 ? 0 : 1;
        return t == 1 ? 2 : 3;
    };
    return wrap_local(box, xs, a_pre, bits, s_post, bits, b_pre, outs, t_post);
}

} // namespace

Correlation pr_wiring_box() { return wiring_box(pr_box()); }

AlgCorrelation p_lambda_wiring_box(const Sqrt2Ext& lambda) {
    return wiring_box(p_lambda_box(lambda));
}

namespace {

// exact chromatic number by branch and bound
class Colourer {
public:
    explicit Colourer(const Graph& g) : g_(g), n_(g.size()), colour_(n_, -1) {
        order_.resize(n_);
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(),
                         [&](int u, int v) { return g_.degree(u) > g_.degree(v); });
    }

    bool colourable(int k) {
        k_ = k;
        return place(0, 0);
    }

private:
    bool place(int idx, int used) {
        if (idx == n_) return true;
        int v = order_[idx];
        // trying more than one previously unused colour is redundant
        int limit = std::min(k_, used + 1);
        for (int c = 0; c < limit; ++c) {
            bool ok = true;
            for (int i = 0; i < idx; ++i)
                if (colour_[order_[i]] == c && g_.has_edge(order_[i], v)) { ok = false; break; }
            if (!ok) continue;
            colour_[v] = c;
            if (place(idx + 1, std::max(used, c + 1))) return true;
            colour_[v] = -1;
        }
        return false;
    }

    const Graph& g_;
    int n_ = 0, k_ = 0;
    std::vector<int> colour_;
    std::vector<int> order_;
};

// greedy clique as a chromatic lower bound
int greedy_clique(const Graph& g) {
    int best = 0;
    for (int v = 0; v < g.size(); ++v) {
        std::vector<int> clique = {v};
        for (int u = 0; u < g.size(); ++u) {
            if (u == v) continue;
            bool all = true;
            for (int w : clique)
                if (!g.has_edge(u, w)) { all = false; break; }
            if (all) clique.push_back(u);
        }
        best = std::max(best, static_cast<int>(clique.size()));
    }
    return best;
}

} // namespace

int clique_cover_number(const Graph& g, int guard) {
    if (g.size() > guard * guard_factor())
        throw Error("clique cover guard exceeded (" + std::to_string(g.size()) + " vertices)");
    if (g.size() == 0) return 0;
    Graph comp = g.complement();
    Colourer col(comp);
    for (int k = std::max(1, greedy_clique(comp)); k <= comp.size(); ++k)
        if (col.colourable(k)) return k;
    return comp.size();
}

namespace {

using nlohmann::ordered_json;

template <class S>
ordered_json correlation_json(const BasicCorrelation<S>& p) {
    ordered_json j;
    j["A"] = p.alice_inputs();
    j["S"] = p.alice_outputs();
    j["B"] = p.bob_inputs();
    j["T"] = p.bob_outputs();
    ordered_json table = ordered_json::object();
    for (size_t a = 0; a < p.alice_inputs().size(); ++a)
        for (size_t b = 0; b < p.bob_inputs().size(); ++b) {
            ordered_json rows = ordered_json::array();
            for (size_t s = 0; s < p.alice_outputs().size(); ++s) {
                ordered_json row = ordered_json::array();
                for (size_t t = 0; t < p.bob_outputs().size(); ++t)
                    row.push_back(to_string(p.entry(a, s, b, t)));
                rows.push_back(std::move(row));
            }
            table[p.alice_inputs()[a] + "|" + p.bob_inputs()[b]] = std::move(rows);
        }
    j["table"] = std::move(table);
    return j;
}

} // namespace

namespace {

template <class S>
BasicCorrelation<S> parse_correlation_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Error(std::string("correlation JSON parse error: ") + e.what());
    }
    for (const char* key : {"A", "S", "B", "T", "table"})
        if (!j.contains(key)) throw Error("correlation JSON needs A, S, B, T and table");
    auto A = j["A"].get<std::vector<std::string>>();
    auto Sv = j["S"].get<std::vector<std::string>>();
    auto B = j["B"].get<std::vector<std::string>>();
    auto T = j["T"].get<std::vector<std::string>>();
    std::vector<std::vector<S>> blocks(A.size() * B.size());
    for (size_t a = 0; a < A.size(); ++a)
        for (size_t b = 0; b < B.size(); ++b) {
            std::string key = A[a] + "|" + B[b];
            if (!j["table"].contains(key))
                throw Error("correlation JSON misses block '" + key + "'");
            const auto& rows = j["table"][key];
            if (rows.size() != Sv.size())
                throw Error("correlation block '" + key + "' has wrong row count");
            auto& blk = blocks[a * B.size() + b];
            for (const auto& row : rows) {
                if (row.size() != T.size())
                    throw Error("correlation block '" + key + "' has ragged rows");
                for (const auto& cell : row)
                    blk.push_back(parse_scalar<S>(cell.get<std::string>()));
            }
        }
    return BasicCorrelation<S>(std::move(A), std::move(Sv), std::move(B), std::move(T),
                               std::move(blocks));
}

} // namespace

Correlation correlation_from_json(const std::string& text) {
    return parse_correlation_json<Rational>(text);
}

AlgCorrelation alg_correlation_from_json(const std::string& text) {
    return parse_correlation_json<Sqrt2Ext>(text);
}

std::string correlation_to_json(const Correlation& p) { return correlation_json(p).dump(2); }
std::string correlation_to_json(const AlgCorrelation& p) { return correlation_json(p).dump(2); }

} // namespace zecap
