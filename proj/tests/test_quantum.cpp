#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "zecap/quantum.hpp"

#include <cmath>
#include <random>

using namespace zecap;

namespace {

// independent oracle: no independent 6-subset exists in a graph when every
// 6-subset of vertices contains an edge
bool no_independent_set_of_size(const Graph& g, int k) {
    int n = g.size();
    std::vector<int> pick(k);
    std::function<bool(int, int)> rec = [&](int idx, int from) {
        if (idx == k) return true; // found an independent k-set
        for (int v = from; v < n; ++v) {
            bool ok = true;
            for (int i = 0; i < idx && ok; ++i) ok = !g.has_edge(pick[i], v);
            if (!ok) continue;
            pick[idx] = v;
            if (rec(idx + 1, v + 1)) return true;
        }
        return false;
    };
    return !rec(0, 0);
}

} // namespace

TEST_CASE("exact Gaussian-rational arithmetic and parsing") {
    GaussianRational i{Rational(0), Rational(1)};
    CHECK((i * i) == GaussianRational(-1));
    CHECK(parse_gaussian("1/2+1/3i") == GaussianRational{parse_rational("1/2"), parse_rational("1/3")});
    CHECK(parse_gaussian("-i") == GaussianRational{Rational(0), Rational(-1)});
    CHECK(parse_gaussian("3") == GaussianRational(3));
    CHECK(to_string(GaussianRational{parse_rational("1/2"), parse_rational("-1/3")}) == "1/2-1/3i");
}

TEST_CASE("exact inner products decide orthogonality") {
    ExactVector u({1, 1, 0, 0});
    ExactVector v({1, -1, 0, 0});
    ExactVector w({1, 0, 0, 1});
    CHECK(inner(u, v).is_zero());
    CHECK_FALSE(inner(u, w).is_zero());
    CHECK(u.norm2 == 2);
    StateVector uf = u.to_float();
    CHECK(uf.norm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("basis sets validate orthogonality") {
    CHECK_THROWS_AS(BasisSet(2, {{ExactVector({1, 0}), ExactVector({1, 1})}}), Error);
    CHECK_NOTHROW(BasisSet(2, {{ExactVector({1, 0}), ExactVector({0, 1})}}));
}

TEST_CASE("the Peres six-basis set is a KS basis set") {
    BasisSet peres = peres_six_bases();
    CHECK(peres.dimension() == 4);
    CHECK(peres.count() == 6);
    auto check = is_ks_set(peres);
    CHECK(check.is_ks);
}

TEST_CASE("a single basis is never a KS set") {
    BasisSet one(2, {{ExactVector({1, 0}), ExactVector({0, 1})}});
    auto check = is_ks_set(one);
    CHECK_FALSE(check.is_ks);
    REQUIRE(check.witness.size() == 1);
}

TEST_CASE("two mutually unbiased qubit bases are not a KS set") {
    // computational and diagonal bases: any cross pair is non-orthogonal
    BasisSet mub(2, {{ExactVector({1, 0}), ExactVector({0, 1})},
                     {ExactVector({1, 1}), ExactVector({1, -1})}});
    auto check = is_ks_set(mub);
    CHECK_FALSE(check.is_ks);
}

TEST_CASE("KS channel construction from the Peres set") {
    auto ks = ks_channel(peres_six_bases());
    CHECK(ks.channel.num_inputs() == 24);
    CHECK(ks.graph.size() == 24);
    // hyperedges of the channel are exactly the maximal cliques
    Hypergraph h = hypergraph(ks.channel);
    CHECK(h == clique_hypergraph(ks.graph));
    // the six bases partition the vertices into cliques of size 4
    CHECK(ks.partition.size() == 6);
    for (const auto& k : ks.partition) CHECK(k.size() == 4);

    auto mis = independence_number(ks.graph);
    CHECK(mis.size == 5);
    CHECK(no_independent_set_of_size(ks.graph, 6)); // oracle for alpha <= 5

    CHECK_THROWS_AS(ks_channel(BasisSet(2, {{ExactVector({1, 0}), ExactVector({0, 1})}})), Error);
}

TEST_CASE("lovasz theta on reference graphs") {
    SUBCASE("pentagon: sqrt 5") {
        auto th = lovasz_theta(Graph::cycle(5), 1e-6);
        CHECK(th.converged);
        CHECK(th.value == doctest::Approx(std::sqrt(5.0)).epsilon(1e-4));
    }
    SUBCASE("complete and empty graphs, within 1e-6") {
        CHECK(std::abs(lovasz_theta(Graph::complete(4), 1e-7).value - 1.0) <= 1e-6);
        CHECK(std::abs(lovasz_theta(Graph::empty(5), 1e-7).value - 5.0) <= 1e-6);
        CHECK(std::abs(lovasz_theta(Graph::complete(1), 1e-7).value - 1.0) <= 1e-6);
        CHECK(std::abs(lovasz_theta(Graph::empty(7), 1e-7).value - 7.0) <= 1e-6);
    }
    SUBCASE("witness feasibility") {
        Graph c5 = Graph::cycle(5);
        auto th = lovasz_theta(c5, 1e-6);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(th.witness);
        CHECK(eig.eigenvalues().minCoeff() >= -1e-6);
        CHECK(th.witness.trace() == doctest::Approx(1.0).epsilon(1e-5));
        for (auto [u, v] : c5.edges()) CHECK(std::abs(th.witness(u, v)) <= 1e-5);
        CHECK(th.witness.sum() == doctest::Approx(th.value));
    }
    SUBCASE("deterministic across runs") {
        auto a = lovasz_theta(Graph::cycle(7), 1e-6);
        auto b = lovasz_theta(Graph::cycle(7), 1e-6);
        CHECK(a.value == b.value);
        CHECK(a.iterations == b.iterations);
    }
    SUBCASE("guards") {
        CHECK_THROWS_AS(lovasz_theta(Graph::empty(70), 1e-6), Error);
        CHECK_THROWS_AS(lovasz_theta(Graph::cycle(5), 1e-9), Error);
    }
}

TEST_CASE("theta sandwiches alpha on random graphs") {
    std::mt19937_64 rng(35791);
    std::uniform_real_distribution<double> p_d(0.2, 0.8);
    std::uniform_int_distribution<int> n_d(2, 10);
    for (int t = 0; t < 12; ++t) {
        int n = n_d(rng);
        Graph g = Graph::empty(n);
        std::uniform_real_distribution<double> coin(0, 1);
        double p = p_d(rng);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (coin(rng) < p) g.add_edge(u, v);
        auto th = lovasz_theta(g, 1e-6);
        CHECK(independence_number(g).size <= th.value + 1e-4);
    }
}

TEST_CASE("theta of the KS graph is the number of bases") {
    auto ks = ks_channel(peres_six_bases());
    auto th = lovasz_theta(ks.graph, 1e-6);
    CHECK(th.value == doctest::Approx(6.0).epsilon(1e-3));
    // the partition bound: theta(G_Z) <= theta of 6 disjoint 4-cliques = 6
    Graph disjoint = Graph::empty(24);
    for (const auto& k : ks.partition)
        for (size_t i = 0; i < k.size(); ++i)
            for (size_t j = i + 1; j < k.size(); ++j) disjoint.add_edge(k[i], k[j]);
    auto th_relaxed = lovasz_theta(disjoint, 1e-6);
    CHECK(th.value <= th_relaxed.value + 1e-3);
    CHECK(th_relaxed.value == doctest::Approx(6.0).epsilon(1e-4));
}

TEST_CASE("partition protocol decodes with vanishing error") {
    auto ks = ks_channel(peres_six_bases());
    double err = simulate_partition_protocol(ks.rep, ks.partition, ks.channel);
    CHECK(err <= 1e-10);
}

TEST_CASE("partition protocol on the trivial noiseless case") {
    // empty graph on 3 vertices in dimension 1: three cliques of size 1
    Graph g = Graph::empty(3);
    OrthRep rep{g, {StateVector::Ones(1), StateVector::Ones(1), StateVector::Ones(1)}};
    std::vector<std::vector<int>> partition = {{0}, {1}, {2}};
    double err = simulate_partition_protocol(rep, partition, identity_channel(3));
    CHECK(err == doctest::Approx(0.0));
}

TEST_CASE("partition protocol rejects non-orthogonal representations") {
    auto ks = ks_channel(peres_six_bases());
    OrthRep broken = ks.rep;
    broken.vectors[1] = broken.vectors[0]; // two adjacent copies of the same vector
    CHECK_THROWS_WITH_AS(simulate_partition_protocol(broken, ks.partition, ks.channel),
                         doctest::Contains("not orthogonal"), Error);
}

TEST_CASE("SE code verification") {
    auto ks = ks_channel(peres_six_bases());
    auto betas = partition_code_betas(ks.rep, ks.partition);
    SUBCASE("the partition code certifies six messages") {
        auto chk = verify_se_code(betas, ks.channel, 1e-9);
        CHECK(chk.ok);
    }
    SUBCASE("a single message always verifies") {
        std::vector<std::vector<ComplexMatrix>> one = {betas[0]};
        CHECK(verify_se_code(one, ks.channel, 1e-9).ok);
    }
    SUBCASE("overlapping supports on a confusable pair fail") {
        auto bad = betas;
        bad[1] = bad[0]; // same operators for two messages
        auto chk = verify_se_code(bad, ks.channel, 1e-9);
        CHECK_FALSE(chk.ok);
    }
    SUBCASE("unequal partial sums fail") {
        auto bad = betas;
        bad[2][ks.partition[2][0]] *= 2.0;
        auto chk = verify_se_code(bad, ks.channel, 1e-9);
        CHECK_FALSE(chk.ok);
        CHECK(chk.reason.find("partial sums") != std::string::npos);
    }
}

TEST_CASE("SE capacity bounds") {
    CHECK(se_capacity_bounds(s_channel(4, 2)).lower == 1);
    CHECK(se_capacity_bounds(s_channel(4, 2)).upper == 1);
    auto c5 = se_capacity_bounds(pentagon_channel());
    CHECK(c5.lower == 2);
    CHECK(c5.upper == 2);
    auto ks = ks_channel(peres_six_bases());
    auto betas = partition_code_betas(ks.rep, ks.partition);
    REQUIRE(verify_se_code(betas, ks.channel).ok);
    auto bounds = se_capacity_bounds(ks.channel, 6);
    CHECK(bounds.lower == 6);
    CHECK(bounds.upper == 6);
    CHECK(bounds.near_integer);
}

TEST_CASE("floor of theta never undercuts floor of the packing number") {
    // the theta bound improves on fractional packing of the clique hypergraph
    for (const Channel& ch : {pentagon_channel(), s_channel(4, 2), not_channel(4)}) {
        Graph g = confusability_graph(ch);
        auto th = lovasz_theta(g, 1e-6);
        Rational alpha_chi = fractional_packing(clique_hypergraph(g)).value;
        CHECK(static_cast<long>(std::floor(th.value + 1e-4)) <= floor_rational(alpha_chi));
    }
    std::mt19937_64 rng(64128);
    std::uniform_real_distribution<double> p_d(0.2, 0.8), coin(0, 1);
    std::uniform_int_distribution<int> n_d(2, 9);
    for (int t = 0; t < 10; ++t) {
        int n = n_d(rng);
        Graph g = Graph::empty(n);
        double p = p_d(rng);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (coin(rng) < p) g.add_edge(u, v);
        auto th = lovasz_theta(g, 1e-6);
        Rational alpha_chi = fractional_packing(clique_hypergraph(g)).value;
        CHECK(static_cast<long>(std::floor(th.value + 1e-4)) <= floor_rational(alpha_chi));
    }
}

TEST_CASE("basis set JSON round-trips") {
    BasisSet peres = peres_six_bases();
    BasisSet back = basis_set_from_json(basis_set_to_json(peres));
    CHECK(back.dimension() == 4);
    CHECK(back.count() == 6);
    for (int m = 0; m < 6; ++m)
        for (int j = 0; j < 4; ++j) {
            CHECK(back.vec(m, j).coords == peres.vec(m, j).coords);
        }
    CHECK_THROWS_AS(basis_set_from_json("{}"), Error);
    // complex entries survive the round trip
    BasisSet complex_basis(2, {{ExactVector({GaussianRational{Rational(1), Rational(0)},
                                             GaussianRational{Rational(0), Rational(1)}}),
                                ExactVector({GaussianRational{Rational(1), Rational(0)},
                                             GaussianRational{Rational(0), Rational(-1)}})}});
    BasisSet back2 = basis_set_from_json(basis_set_to_json(complex_basis));
    CHECK(back2.vec(0, 0).coords == complex_basis.vec(0, 0).coords);
}
