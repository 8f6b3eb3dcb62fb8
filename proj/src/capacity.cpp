#include "zecap/capacity.hpp"

#include "zecap/guards.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace zecap {

namespace {

// dynamic bitset over 64-bit blocks, sized for one graph
struct VertexSet {
    std::vector<uint64_t> w;

    explicit VertexSet(int blocks = 0) : w(blocks, 0) {}

    void set(int v) { w[v / 64] |= uint64_t(1) << (v % 64); }
    void reset(int v) { w[v / 64] &= ~(uint64_t(1) << (v % 64)); }
    bool test(int v) const { return w[v / 64] >> (v % 64) & 1; }
    bool empty() const {
        for (uint64_t b : w)
            if (b) return false;
        return true;
    }
    int count() const {
        int c = 0;
        for (uint64_t b : w) c += __builtin_popcountll(b);
        return c;
    }
    void subtract_row(const uint64_t* row) {
        for (size_t i = 0; i < w.size(); ++i) w[i] &= ~row[i];
    }
    int first() const {
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i]) return static_cast<int>(i * 64 + __builtin_ctzll(w[i]));
        return -1;
    }
};

class MisSolver {
public:
    explicit MisSolver(const Graph& g) : g_(g) {
        order_.resize(g.size());
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(),
                         [&](int u, int v) { return g_.degree(u) > g_.degree(v); });
    }

    IndependenceResult run() {
        VertexSet all(g_.blocks());
        for (int v = 0; v < g_.size(); ++v) all.set(v);
        std::vector<int> cur;
        expand(all, cur);
        std::sort(best_set_.begin(), best_set_.end());
        return {best_, best_set_};
    }

private:
    // greedy clique cover of p: an upper bound on the independence number
    int clique_cover_bound(const VertexSet& p) const {
        VertexSet rest = p;
        int cliques = 0;
        while (!rest.empty()) {
            ++cliques;
            int v = rest.first();
            rest.reset(v);
            // grow a clique through rest in index order
            std::vector<int> clique = {v};
            for (size_t i = 0; i < rest.w.size(); ++i) {
                uint64_t bits = rest.w[i];
                while (bits) {
                    int u = static_cast<int>(i * 64 + __builtin_ctzll(bits));
                    bits &= bits - 1;
                    bool adj_all = true;
                    for (int c : clique)
                        if (!g_.has_edge(u, c)) { adj_all = false; break; }
                    if (adj_all) {
                        clique.push_back(u);
                        rest.reset(u);
                    }
                }
            }
        }
        return cliques;
    }

    void expand(const VertexSet& p, std::vector<int>& cur) {
        if (static_cast<int>(cur.size()) > best_) {
            best_ = static_cast<int>(cur.size());
            best_set_ = cur;
        }
        if (p.empty()) return;
        if (static_cast<int>(cur.size()) + clique_cover_bound(p) <= best_) return;
        // branch on the highest-degree remaining vertex
        int v = -1;
        for (int u : order_)
            if (p.test(u)) { v = u; break; }
        // include v
        VertexSet without_nv = p;
        without_nv.reset(v);
        without_nv.subtract_row(g_.row(v));
        cur.push_back(v);
        expand(without_nv, cur);
        cur.pop_back();
        // exclude v
        VertexSet without_v = p;
        without_v.reset(v);
        if (!without_v.empty()) expand(without_v, cur);
    }

    const Graph& g_;
    std::vector<int> order_;
    int best_ = 0;
    std::vector<int> best_set_;
};

} // namespace

IndependenceResult independence_number(const Graph& g) {
    if (g.size() == 0) return {0, {}};
    MisSolver solver(g);
    return solver.run();
}

PackingResult fractional_packing(const Hypergraph& h) {
    LinearProgram<Rational> lp;
    for (const auto& v : h.vertices) lp.add_var("v(" + v + ")", Rational(1));
    auto uniq = h.unique_edges();
    for (const auto& e : uniq) {
        std::vector<std::pair<int, Rational>> terms;
        for (int v : e) terms.push_back({v, Rational(1)});
        lp.add_row(terms, Rel::Le, Rational(1));
    }
    // weight caps keep isolated vertices finite; redundant otherwise
    for (int v = 0; v < h.size(); ++v) lp.add_row({{v, Rational(1)}}, Rel::Le, Rational(1));
    auto res = solve(lp);
    if (res.status != LpStatus::Optimal || !res.verify(lp))
        throw Error("fractional packing LP failed to certify");
    PackingResult out;
    out.value = res.value;
    out.vertex_weights = res.primal;
    out.edge_duals.assign(h.edges.size(), Rational(0));
    // map dual weights of the deduplicated rows back to first occurrences
    for (size_t i = 0; i < h.edges.size(); ++i) {
        auto key = h.edges[i];
        auto it = std::find(uniq.begin(), uniq.end(), key);
        size_t row = static_cast<size_t>(it - uniq.begin());
        if (std::find(h.edges.begin(), h.edges.begin() + static_cast<long>(i), key) ==
            h.edges.begin() + static_cast<long>(i))
            out.edge_duals[i] = res.dual[row];
    }
    return out;
}

CoveringResult fractional_covering(const Hypergraph& h) {
    for (int v = 0; v < h.size(); ++v) {
        bool covered = false;
        for (const auto& e : h.edges)
            if (std::find(e.begin(), e.end(), v) != e.end()) { covered = true; break; }
        if (!covered)
            throw Error("fractional covering is infeasible: vertex '" + h.vertices[v] +
                        "' lies in no hyperedge");
    }
    auto uniq = h.unique_edges();
    LinearProgram<Rational> lp;
    lp.sense = Sense::Min;
    for (size_t e = 0; e < uniq.size(); ++e) lp.add_var("w" + std::to_string(e), Rational(1));
    for (int v = 0; v < h.size(); ++v) {
        std::vector<std::pair<int, Rational>> terms;
        for (size_t e = 0; e < uniq.size(); ++e)
            if (std::find(uniq[e].begin(), uniq[e].end(), v) != uniq[e].end())
                terms.push_back({static_cast<int>(e), Rational(1)});
        lp.add_row(terms, Rel::Ge, Rational(1));
    }
    for (size_t e = 0; e < uniq.size(); ++e)
        lp.add_row({{static_cast<int>(e), Rational(1)}}, Rel::Le, Rational(1));
    auto res = solve(lp);
    if (res.status != LpStatus::Optimal || !res.verify(lp))
        throw Error("fractional covering LP failed to certify");
    CoveringResult out;
    out.value = res.value;
    out.edge_weights.assign(h.edges.size(), Rational(0));
    std::vector<bool> used(uniq.size(), false);
    for (size_t i = 0; i < h.edges.size(); ++i) {
        auto it = std::find(uniq.begin(), uniq.end(), h.edges[i]);
        size_t col = static_cast<size_t>(it - uniq.begin());
        if (!used[col]) {
            out.edge_weights[i] = res.primal[col];
            used[col] = true;
        }
    }
    return out;
}

Int c0_ns(const Channel& ch) {
    return floor_rational(fractional_packing(hypergraph(ch)).value);
}

NsCodeCheck ns_code_feasible(const Channel& ch, int g) {
    if (g < 1) throw Error("ns_code_feasible needs g >= 1");
    NsCodeCheck out;
    if (g == 1) {
        // one message is always transmissible; the D/Q elimination below
        // only models g >= 2 (there is no off-diagonal block at g = 1)
        out.feasible = true;
        return out;
    }
    const int nx = ch.num_inputs(), ny = ch.num_outputs();
    LinearProgram<Rational>& lp = out.lp;
    // Q(x,y) >= 0 with Q forced to zero on the support of N (the exact
    // zero-pattern form of sum_{x,y} Q(x,y) N(y|x) = 0)
    std::vector<std::vector<int>> qvar(nx, std::vector<int>(ny, -1));
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y)
            if (ch.entry(y, x) == 0)
                qvar[x][y] = lp.add_var("Q(" + ch.inputs()[x] + "," + ch.outputs()[y] + ")");
    std::vector<int> uvar(nx);
    for (int x = 0; x < nx; ++x) uvar[x] = lp.add_var("u(" + ch.inputs()[x] + ")");
    // u_x >= (g-1) Q(x,y)
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y)
            if (qvar[x][y] >= 0)
                lp.add_row({{qvar[x][y], Rational(g - 1)}, {uvar[x], Rational(-1)}}, Rel::Le,
                           Rational(0));
    // sum_x Q(x,y) = 1/g for every output y
    for (int y = 0; y < ny; ++y) {
        std::vector<std::pair<int, Rational>> terms;
        for (int x = 0; x < nx; ++x)
            if (qvar[x][y] >= 0) terms.push_back({qvar[x][y], Rational(1)});
        lp.add_row(terms, Rel::Eq, make_rational(1, g));
    }
    // sum_x u_x = 1
    {
        std::vector<std::pair<int, Rational>> terms;
        for (int x = 0; x < nx; ++x) terms.push_back({uvar[x], Rational(1)});
        lp.add_row(terms, Rel::Eq, Rational(1));
    }
    auto fr = feasible(lp);
    if (!fr.verify(lp)) throw Error("ns code LP certificate failed to verify");
    out.feasible = fr.is_feasible;
    return out;
}

double theta_lower_bound(const Graph& g, int n, long guard) {
    if (n < 1) throw Error("theta_lower_bound needs n >= 1");
    double size = std::pow(static_cast<double>(g.size()), n);
    if (size > static_cast<double>(guard) * guard_factor())
        throw Error("theta_lower_bound guard exceeded: |V|^n = " + std::to_string(size));
    Graph power = strong_power(g, n);
    int alpha = independence_number(power).size;
    return std::pow(static_cast<double>(alpha), 1.0 / n);
}

double shannon_capacity_ba(const Channel& ch, double tol, long max_iter) {
    if (tol <= 0) throw Error("shannon_capacity_ba needs tol > 0");
    const int nx = ch.num_inputs(), ny = ch.num_outputs();
    std::vector<std::vector<double>> n(ny, std::vector<double>(nx));
    for (int y = 0; y < ny; ++y)
        for (int x = 0; x < nx; ++x) n[y][x] = to_double(ch.entry(y, x));
    std::vector<double> p(nx, 1.0 / nx), q(ny), w(nx);
    const double ln2 = std::log(2.0);
    for (long it = 0; it < max_iter; ++it) {
        for (int y = 0; y < ny; ++y) {
            q[y] = 0;
            for (int x = 0; x < nx; ++x) q[y] += p[x] * n[y][x];
        }
        double upper = -1e300;
        for (int x = 0; x < nx; ++x) {
            double d = 0;
            for (int y = 0; y < ny; ++y)
                if (n[y][x] > 0) d += n[y][x] * std::log(n[y][x] / q[y]);
            w[x] = d;
            upper = std::max(upper, d);
        }
        double z = 0;
        for (int x = 0; x < nx; ++x) z += p[x] * std::exp(w[x]);
        double lower = std::log(z);
        if (upper - lower < tol * ln2) return (upper + lower) / (2 * ln2);
        for (int x = 0; x < nx; ++x) p[x] *= std::exp(w[x]) / z;
    }
    throw Error("Blahut-Arimoto did not converge");
}

CapacityReport capacity_report(const Channel& ch, int theta_powers) {
    CapacityReport rep;
    Graph g = confusability_graph(ch);
    auto mis = independence_number(g);
    rep.c0 = mis.size;
    rep.c0_witness = mis.witness;
    Hypergraph h = hypergraph(ch);
    rep.alpha_star = fractional_packing(h).value;
    rep.omega_star = fractional_covering(h).value;
    rep.c0_ns_value = floor_rational(rep.alpha_star);
    rep.c0_ns_bits = std::log2(to_double(rep.alpha_star));
    for (int power = 1; power <= theta_powers; ++power) {
        // keep the report interactive; theta_lower_bound itself goes higher
        double size = std::pow(static_cast<double>(g.size()), power);
        if (size > 128) break;
        rep.theta_lower_bounds.push_back({power, theta_lower_bound(g, power)});
    }
    return rep;
}

} // namespace zecap
