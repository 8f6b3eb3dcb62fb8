#pragma once

#include "zecap/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace zecap {

// Undirected simple graph over named vertices; adjacency kept as bit rows
// for the branch-and-bound searches.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::vector<std::string> vertices);

    int size() const { return static_cast<int>(verts_.size()); }
    const std::vector<std::string>& vertices() const { return verts_; }
    const std::string& vertex(int v) const { return verts_[v]; }

    void add_edge(int u, int v);
    bool has_edge(int u, int v) const;
    int degree(int v) const;
    long edge_count() const;
    std::vector<std::pair<int, int>> edges() const;

    int blocks() const { return blocks_; }
    const uint64_t* row(int v) const { return &adj_[static_cast<size_t>(v) * blocks_]; }

    Graph complement() const;

    static Graph complete(int n);
    static Graph empty(int n);
    static Graph cycle(int n);

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.verts_ == b.verts_ && a.adj_ == b.adj_;
    }

private:
    std::vector<std::string> verts_;
    int blocks_ = 0;
    std::vector<uint64_t> adj_;
};

// Hypergraph over named vertices; hyperedges are sorted vertex-index lists
// and duplicates are retained (one hyperedge per channel output).
struct Hypergraph {
    std::vector<std::string> vertices;
    std::vector<std::vector<int>> edges;

    int size() const { return static_cast<int>(vertices.size()); }
    void add_edge(std::vector<int> edge);
    bool covers_all_vertices() const;
    std::vector<std::vector<int>> unique_edges() const;

    // graph with an edge wherever two vertices share a hyperedge
    Graph two_section() const;

    // equality as multisets of hyperedges over equal vertex lists
    friend bool operator==(const Hypergraph& a, const Hypergraph& b);
};

std::string product_symbol(const std::string& a, const std::string& b);

Graph strong_product(const Graph& g1, const Graph& g2);
Graph strong_power(const Graph& g, int n);
Hypergraph hyper_product(const Hypergraph& h1, const Hypergraph& h2);

// all maximal cliques, each sorted, in a deterministic order
std::vector<std::vector<int>> maximal_cliques(const Graph& g);
Hypergraph clique_hypergraph(const Graph& g);

} // namespace zecap
