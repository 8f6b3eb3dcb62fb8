#include "zecap/hypergraph.hpp"

#include <algorithm>
#include <map>

namespace zecap {

Graph::Graph(std::vector<std::string> vertices) : verts_(std::move(vertices)) {
    blocks_ = (size() + 63) / 64;
    adj_.assign(static_cast<size_t>(size()) * blocks_, 0);
}

void Graph::add_edge(int u, int v) {
    if (u == v) throw Error("self-loop on vertex " + verts_[u]);
    if (u < 0 || v < 0 || u >= size() || v >= size()) throw Error("edge endpoint out of range");
    adj_[static_cast<size_t>(u) * blocks_ + v / 64] |= uint64_t(1) << (v % 64);
    adj_[static_cast<size_t>(v) * blocks_ + u / 64] |= uint64_t(1) << (u % 64);
}

bool Graph::has_edge(int u, int v) const {
    return adj_[static_cast<size_t>(u) * blocks_ + v / 64] >> (v % 64) & 1;
}

int Graph::degree(int v) const {
    int d = 0;
    for (int b = 0; b < blocks_; ++b)
        d += __builtin_popcountll(adj_[static_cast<size_t>(v) * blocks_ + b]);
    return d;
}

long Graph::edge_count() const {
    long total = 0;
    for (int v = 0; v < size(); ++v) total += degree(v);
    return total / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < size(); ++u)
        for (int v = u + 1; v < size(); ++v)
            if (has_edge(u, v)) out.push_back({u, v});
    return out;
}

Graph Graph::complement() const {
    Graph g(verts_);
    for (int u = 0; u < size(); ++u)
        for (int v = u + 1; v < size(); ++v)
            if (!has_edge(u, v)) g.add_edge(u, v);
    return g;
}

Graph Graph::complete(int n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back(std::to_string(i));
    Graph g(names);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph Graph::empty(int n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back(std::to_string(i));
    return Graph(names);
}

Graph Graph::cycle(int n) {
    Graph g = empty(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

void Hypergraph::add_edge(std::vector<int> edge) {
    std::sort(edge.begin(), edge.end());
    edge.erase(std::unique(edge.begin(), edge.end()), edge.end());
    for (int v : edge)
        if (v < 0 || v >= size()) throw Error("hyperedge vertex out of range");
    edges.push_back(std::move(edge));
}

bool Hypergraph::covers_all_vertices() const {
    std::vector<bool> hit(vertices.size(), false);
    for (const auto& e : edges)
        for (int v : e) hit[v] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

std::vector<std::vector<int>> Hypergraph::unique_edges() const {
    auto out = edges;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Graph Hypergraph::two_section() const {
    Graph g(vertices);
    for (const auto& e : edges)
        for (size_t i = 0; i < e.size(); ++i)
            for (size_t j = i + 1; j < e.size(); ++j)
                if (!g.has_edge(e[i], e[j])) g.add_edge(e[i], e[j]);
    return g;
}

bool operator==(const Hypergraph& a, const Hypergraph& b) {
    if (a.vertices != b.vertices) return false;
    auto ea = a.edges, eb = b.edges;
    std::sort(ea.begin(), ea.end());
    std::sort(eb.begin(), eb.end());
    return ea == eb;
}

std::string product_symbol(const std::string& a, const std::string& b) {
    return a + "·" + b;
}

namespace {

std::vector<std::string> product_vertices(const std::vector<std::string>& a,
                                          const std::vector<std::string>& b) {
    std::vector<std::string> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b) out.push_back(product_symbol(x, y));
    return out;
}

} // namespace

Graph strong_product(const Graph& g1, const Graph& g2) {
    Graph g(product_vertices(g1.vertices(), g2.vertices()));
    const int n2 = g2.size();
    for (int u1 = 0; u1 < g1.size(); ++u1)
        for (int u2 = 0; u2 < n2; ++u2)
            for (int v1 = u1; v1 < g1.size(); ++v1)
                for (int v2 = 0; v2 < n2; ++v2) {
                    int u = u1 * n2 + u2, v = v1 * n2 + v2;
                    if (v <= u) continue;
                    bool c1 = u1 == v1 || g1.has_edge(u1, v1);
                    bool c2 = u2 == v2 || g2.has_edge(u2, v2);
                    if (c1 && c2) g.add_edge(u, v);
                }
    return g;
}

Graph strong_power(const Graph& g, int n) {
    if (n < 1) throw Error("strong power needs n >= 1");
    Graph out = g;
    for (int i = 1; i < n; ++i) out = strong_product(out, g);
    return out;
}

Hypergraph hyper_product(const Hypergraph& h1, const Hypergraph& h2) {
    Hypergraph h;
    h.vertices = product_vertices(h1.vertices, h2.vertices);
    const int n2 = h2.size();
    for (const auto& e : h1.edges)
        for (const auto& f : h2.edges) {
            std::vector<int> prod;
            prod.reserve(e.size() * f.size());
            for (int x : e)
                for (int y : f) prod.push_back(x * n2 + y);
            h.add_edge(std::move(prod));
        }
    return h;
}

namespace {

void bron_kerbosch(const Graph& g, std::vector<int>& r, std::vector<int> p, std::vector<int> x,
                   std::vector<std::vector<int>>& out) {
    if (p.empty() && x.empty()) {
        out.push_back(r);
        return;
    }
    // pivot: vertex of P u X with most neighbours in P, lowest index on ties
    int pivot = -1, best = -1;
    auto count_in_p = [&](int u) {
        int c = 0;
        for (int v : p)
            if (g.has_edge(u, v)) ++c;
        return c;
    };
    for (int u : p) {
        int c = count_in_p(u);
        if (c > best) { best = c; pivot = u; }
    }
    for (int u : x) {
        int c = count_in_p(u);
        if (c > best) { best = c; pivot = u; }
    }
    std::vector<int> candidates;
    for (int v : p)
        if (pivot < 0 || !g.has_edge(pivot, v)) candidates.push_back(v);
    for (int v : candidates) {
        std::vector<int> np, nx;
        for (int w : p)
            if (g.has_edge(v, w)) np.push_back(w);
        for (int w : x)
            if (g.has_edge(v, w)) nx.push_back(w);
        r.push_back(v);
        bron_kerbosch(g, r, std::move(np), std::move(nx), out);
        r.pop_back();
        p.erase(std::find(p.begin(), p.end(), v));
        x.insert(std::lower_bound(x.begin(), x.end(), v), v);
    }
}

} // namespace

std::vector<std::vector<int>> maximal_cliques(const Graph& g) {
    std::vector<int> r, p(g.size()), x;
    for (int i = 0; i < g.size(); ++i) p[i] = i;
    std::vector<std::vector<int>> out;
    bron_kerbosch(g, r, std::move(p), std::move(x), out);
    for (auto& c : out) std::sort(c.begin(), c.end());
    std::sort(out.begin(), out.end());
    return out;
}

Hypergraph clique_hypergraph(const Graph& g) {
    Hypergraph h;
    h.vertices = g.vertices();
    for (auto& c : maximal_cliques(g)) h.add_edge(std::move(c));
    return h;
}

} // namespace zecap
