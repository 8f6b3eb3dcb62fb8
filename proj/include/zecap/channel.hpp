#pragma once

#include "zecap/hypergraph.hpp"
#include "zecap/rational.hpp"
#include "zecap/sqrt2.hpp"

#include <string>
#include <vector>

namespace zecap {

// Conditional probability matrix N(y|x) with named alphabets; entries are
// exact and column-stochastic by construction. S is Rational for everything
// except the channels wired from Tsirelson-point boxes, which live in
// Q(sqrt2).
template <class S>
class BasicChannel {
public:
    BasicChannel(std::vector<std::string> inputs, std::vector<std::string> outputs,
                 std::vector<std::vector<S>> rows_by_output)
        : inputs_(std::move(inputs)), outputs_(std::move(outputs)) {
        const size_t nx = inputs_.size(), ny = outputs_.size();
        if (nx == 0 || ny == 0) throw Error("channel needs non-empty alphabets");
        if (rows_by_output.size() != ny) throw Error("channel matrix has wrong row count");
        mat_.reserve(nx * ny);
        for (auto& row : rows_by_output) {
            if (row.size() != nx) throw Error("channel matrix has ragged rows");
            for (auto& v : row) {
                if (v.sign() < 0) throw Error("channel entry is negative");
                mat_.push_back(std::move(v));
            }
        }
        for (size_t x = 0; x < nx; ++x) {
            S sum(0);
            for (size_t y = 0; y < ny; ++y) sum += entry(y, x);
            if (sum != S(1))
                throw Error("channel column '" + inputs_[x] + "' sums to " +
                            zecap::to_string(sum) + ", not 1");
        }
    }

    int num_inputs() const { return static_cast<int>(inputs_.size()); }
    int num_outputs() const { return static_cast<int>(outputs_.size()); }
    const std::vector<std::string>& inputs() const { return inputs_; }
    const std::vector<std::string>& outputs() const { return outputs_; }

    const S& entry(size_t y, size_t x) const { return mat_[y * inputs_.size() + x]; }

    int input_index(const std::string& sym) const { return find(inputs_, sym, "input"); }
    int output_index(const std::string& sym) const { return find(outputs_, sym, "output"); }

    std::vector<S> column(int x) const {
        std::vector<S> col(outputs_.size());
        for (size_t y = 0; y < outputs_.size(); ++y) col[y] = entry(y, x);
        return col;
    }

    // inputs confusable: some output is reachable from both (x = x' counts)
    bool confusable(int x1, int x2) const {
        for (size_t y = 0; y < outputs_.size(); ++y)
            if (entry(y, x1).sign() > 0 && entry(y, x2).sign() > 0) return true;
        return false;
    }

    friend bool operator==(const BasicChannel& a, const BasicChannel& b) {
        return a.inputs_ == b.inputs_ && a.outputs_ == b.outputs_ && a.mat_ == b.mat_;
    }

private:
    static int find(const std::vector<std::string>& v, const std::string& sym, const char* kind) {
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i] == sym) return static_cast<int>(i);
        throw Error(std::string("unknown ") + kind + " symbol '" + sym + "'");
    }

    std::vector<std::string> inputs_, outputs_;
    std::vector<S> mat_;
};

using Channel = BasicChannel<Rational>;
using AlgChannel = BasicChannel<Sqrt2Ext>;

inline AlgChannel to_alg(const Channel& ch) {
    std::vector<std::vector<Sqrt2Ext>> rows(ch.num_outputs());
    for (int y = 0; y < ch.num_outputs(); ++y)
        for (int x = 0; x < ch.num_inputs(); ++x) rows[y].emplace_back(ch.entry(y, x));
    return AlgChannel(ch.inputs(), ch.outputs(), std::move(rows));
}

enum class Family { S, U, NOT, T, C5, ID, KS };

struct ChannelFamilySpec {
    Family family = Family::ID;
    int n = 0;
    int m = 0;
    int k = 0;
    Rational p{0};
};

Family parse_family(const std::string& name);
std::string family_name(Family f);

// S, U, NOT, T, C5 and ID; the KS channel is built by the quantum module
Channel build_family(const ChannelFamilySpec& spec);

Channel s_channel(int n, int m);
Channel u_channel(int n, int m);
Channel not_channel(int n);
Channel erasure3_channel(const Rational& p);
Channel pentagon_channel();
Channel identity_channel(int k);
Channel identity_on(std::vector<std::string> symbols);
// the k-message identity between differently labelled alphabets
Channel relabel_identity(std::vector<std::string> inputs, std::vector<std::string> outputs);

template <class S>
Hypergraph hypergraph(const BasicChannel<S>& ch) {
    Hypergraph h;
    h.vertices = ch.inputs();
    for (int y = 0; y < ch.num_outputs(); ++y) {
        std::vector<int> e;
        for (int x = 0; x < ch.num_inputs(); ++x)
            if (ch.entry(y, x).sign() > 0) e.push_back(x);
        h.add_edge(std::move(e));
    }
    return h;
}

template <class S>
Graph confusability_graph(const BasicChannel<S>& ch) {
    Graph g(ch.inputs());
    for (int x1 = 0; x1 < ch.num_inputs(); ++x1)
        for (int x2 = x1 + 1; x2 < ch.num_inputs(); ++x2)
            if (ch.confusable(x1, x2)) g.add_edge(x1, x2);
    return g;
}

template <class S>
BasicChannel<S> tensor(const BasicChannel<S>& a, const BasicChannel<S>& b) {
    std::vector<std::string> in, out;
    for (const auto& x1 : a.inputs())
        for (const auto& x2 : b.inputs()) in.push_back(product_symbol(x1, x2));
    for (const auto& y1 : a.outputs())
        for (const auto& y2 : b.outputs()) out.push_back(product_symbol(y1, y2));
    std::vector<std::vector<S>> rows(out.size(), std::vector<S>(in.size()));
    for (int y1 = 0; y1 < a.num_outputs(); ++y1)
        for (int y2 = 0; y2 < b.num_outputs(); ++y2)
            for (int x1 = 0; x1 < a.num_inputs(); ++x1)
                for (int x2 = 0; x2 < b.num_inputs(); ++x2)
                    rows[y1 * b.num_outputs() + y2][x1 * b.num_inputs() + x2] =
                        a.entry(y1, x1) * b.entry(y2, x2);
    return BasicChannel<S>(std::move(in), std::move(out), std::move(rows));
}

template <class S>
BasicChannel<S> tensor_power(const BasicChannel<S>& ch, int q) {
    if (q < 1) throw Error("tensor power needs q >= 1");
    BasicChannel<S> out = ch;
    for (int i = 1; i < q; ++i) out = tensor(out, ch);
    return out;
}

// post o pre as stochastic matrices; alphabets must chain
template <class S>
BasicChannel<S> compose(const BasicChannel<S>& post, const BasicChannel<S>& pre) {
    if (post.inputs() != pre.outputs())
        throw Error("compose: inner alphabets do not match");
    std::vector<std::vector<S>> rows(post.num_outputs(), std::vector<S>(pre.num_inputs(), S(0)));
    for (int r = 0; r < post.num_outputs(); ++r)
        for (int x = 0; x < pre.num_inputs(); ++x)
            for (int k = 0; k < pre.num_outputs(); ++k)
                rows[r][x] += post.entry(r, k) * pre.entry(k, x);
    return BasicChannel<S>(pre.inputs(), post.outputs(), std::move(rows));
}

template <class S>
BasicChannel<S> compose(const BasicChannel<S>& post, const BasicChannel<S>& mid,
                        const BasicChannel<S>& pre) {
    return compose(post, compose(mid, pre));
}

// {"inputs": [...], "outputs": [...], "matrix": [[rows by output]]}
Channel channel_from_json(const std::string& text);
std::string channel_to_json(const Channel& ch);
std::string channel_to_json(const AlgChannel& ch);
Channel load_channel(const std::string& path);

// aligned human-readable table
template <class S>
std::string format_channel(const BasicChannel<S>& ch);

// subset helpers shared by the S/U families and the touching-set search:
// all m-subsets of {1..n} in lexicographic order
std::vector<std::vector<int>> subsets_of_size(int n, int m);
std::string subset_symbol(const std::vector<int>& subset);

} // namespace zecap
