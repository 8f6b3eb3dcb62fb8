// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Everything asserted here is exact unless a tolerance is
// stated on the line itself.
#include "zecap/report.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

using namespace zecap;

namespace {

Rational q(const char* s) { return parse_rational(s); }

struct Checker {
    std::vector<std::string> failures;

    void check(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    template <class A, class B>
    void check_eq(const A& a, const B& b, const std::string& what) {
        if (!(a == b)) {
            std::ostringstream os;
            os << what << " (got " << a << ", want " << b << ")";
            failures.push_back(os.str());
        }
    }
};

int g_failures = 0;

void criterion(int num, const std::string& label, const std::function<void(Checker&)>& body) {
    Checker c;
    auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.failures.empty()) {
        std::printf("PASS  criterion %d  %-58s (%.2fs)\n", num, label.c_str(), secs);
    } else {
        ++g_failures;
        std::printf("FAIL  criterion %d  %-58s (%.2fs)\n", num, label.c_str(), secs);
        for (const auto& f : c.failures) std::printf("      - %s\n", f.c_str());
    }
}

Rational colmax_sum(const Channel& ch) {
    Rational sum(0);
    for (int y = 0; y < ch.num_outputs(); ++y) {
        Rational mx(0);
        for (int x = 0; x < ch.num_inputs(); ++x) mx = std::max(mx, ch.entry(y, x));
        sum += mx;
    }
    return sum;
}

Channel random_channel(std::mt19937_64& rng, int max_in = 4, int max_out = 4, int max_den = 6) {
    std::uniform_int_distribution<int> in_d(1, max_in), out_d(2, max_out), den_d(1, max_den);
    int nx = in_d(rng), ny = out_d(rng);
    std::vector<std::string> ins, outs;
    for (int x = 0; x < nx; ++x) ins.push_back("x" + std::to_string(x));
    for (int y = 0; y < ny; ++y) outs.push_back("y" + std::to_string(y));
    std::vector<std::vector<Rational>> rows(ny, std::vector<Rational>(nx, Rational(0)));
    for (int x = 0; x < nx; ++x) {
        int den = den_d(rng);
        std::uniform_int_distribution<int> y_d(0, ny - 1);
        int spread = 1 + y_d(rng) % ny;
        std::vector<int> support;
        for (int s = 0; s < spread; ++s) support.push_back(y_d(rng));
        std::uniform_int_distribution<int> pick(0, static_cast<int>(support.size()) - 1);
        std::vector<int> mass(ny, 0);
        for (int u = 0; u < den; ++u) mass[support[pick(rng)]] += 1;
        for (int y = 0; y < ny; ++y)
            if (mass[y] > 0) rows[y][x] = make_rational(mass[y], den);
    }
    return Channel(std::move(ins), std::move(outs), std::move(rows));
}

Correlation random_sr_box(std::mt19937_64& rng, int na, int ns, int nb, int nt, int pieces = 4) {
    std::vector<std::string> A, S, B, T;
    for (int i = 0; i < na; ++i) A.push_back("a" + std::to_string(i));
    for (int i = 0; i < ns; ++i) S.push_back("s" + std::to_string(i));
    for (int i = 0; i < nb; ++i) B.push_back("b" + std::to_string(i));
    for (int i = 0; i < nt; ++i) T.push_back("t" + std::to_string(i));
    std::vector<std::vector<Rational>> table(
        static_cast<size_t>(na) * nb,
        std::vector<Rational>(static_cast<size_t>(ns) * nt, Rational(0)));
    std::uniform_int_distribution<int> s_d(0, ns - 1), t_d(0, nt - 1);
    Rational w = make_rational(1, pieces);
    for (int piece = 0; piece < pieces; ++piece) {
        std::vector<int> fa(na), fb(nb);
        for (int a = 0; a < na; ++a) fa[a] = s_d(rng);
        for (int b = 0; b < nb; ++b) fb[b] = t_d(rng);
        for (int a = 0; a < na; ++a)
            for (int b = 0; b < nb; ++b)
                table[static_cast<size_t>(a) * nb + b][static_cast<size_t>(fa[a]) * nt + fb[b]] +=
                    w;
    }
    return Correlation(A, S, B, T, table);
}

} // namespace

int main() {
    criterion(1, "pentagon: alpha, alpha*, theta", [](Checker& c) {
        Graph c5 = confusability_graph(pentagon_channel());
        c.check_eq(independence_number(c5).size, 2, "alpha(C5) = 2");
        auto t0 = std::chrono::steady_clock::now();
        c.check_eq(independence_number(strong_product(c5, c5)).size, 5, "alpha(C5^2) = 5");
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        c.check(secs < 1.0, "alpha(C5^2) under one second");
        c.check(fractional_packing(hypergraph(pentagon_channel())).value == q("5/2"),
                "alpha*(H(C5)) = 5/2 exactly");
        double theta = lovasz_theta(c5, 1e-6).value;
        c.check(std::abs(theta - 2.23607) <= 1e-4, "theta(C5) = 2.23607 +- 1e-4");
    });

    criterion(2, "S(4,2): complete graph, NS bit, wiring", [](Checker& c) {
        Channel ch = s_channel(4, 2);
        c.check(confusability_graph(ch) == Graph::complete(4), "G(S42) = K4");
        c.check_eq(independence_number(confusability_graph(ch)).size, 1, "c0 = 1");
        Rational alpha = fractional_packing(hypergraph(ch)).value;
        c.check(alpha == 2, "alpha* = 2 exactly");
        c.check(floor_rational(alpha) == 2, "c0_NS = floor(alpha*) = 2");
        c.check(ns_code_feasible(ch, 2).feasible, "direct D/Q system feasible at g = 2");
        c.check(!ns_code_feasible(ch, 3).feasible, "direct D/Q system infeasible at g = 3");
        Channel wired = wire(s42_box(), ch);
        Channel id2(wired.inputs(), wired.outputs(), {{Rational(1), Rational(0)},
                                                      {Rational(0), Rational(1)}});
        c.check(wired == id2, "wire(s42 box, S42) is the 2-message identity, exactly");
        ReportOptions opts;
        opts.family = ChannelFamilySpec{Family::S, 4, 2, 0, Rational(0)};
        std::string report = format_report(full_report(ch, opts));
        c.check(report.find("sometimes quoted as 1") != std::string::npos,
                "report documents the messages-vs-bits discrepancy");
    });

    criterion(3, "universal grid: k0_NS = ceil(n/m), k0_SR = n-m+1", [](Checker& c) {
        for (int n = 3; n <= 6; ++n)
            for (int m = 2; m < n; ++m) {
                Channel u = u_channel(n, m);
                std::string tag = "U(" + std::to_string(n) + "," + std::to_string(m) + ")";
                c.check(k0_ns(u) == Int((n + m - 1) / m), tag + ": k0_NS = ceil(n/m)");
                c.check_eq(k0_sr(u), n - m + 1, tag + ": k0_SR = n-m+1");
            }
        auto r = k_ns(u_channel(7, 5));
        c.check(r.sum == q("7/5"), "U(7,5): column-max sum = 7/5 exactly");
        c.check(std::abs(r.bits - std::log2(7.0 / 5.0)) < 1e-15,
                "U(7,5): asymptotic rate log2(7/5)");
    });

    criterion(4, "erasure channel: forced box, distinguishability, costs", [](Checker& c) {
        Channel t = erasure3_channel(q("1/2"));
        c.check(k0_ns(t) == 2, "k0_NS = 2");
        Correlation forced = forced_ns_correlation(t, 2);
        // D block equals (1/4) [[1,0,0],[0,1,0],[0,0,1],[1,1,1]]
        bool d_ok = true;
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 4; ++y) {
                Rational want = (y == x || y == 3) ? q("1/4") : Rational(0);
                d_ok = d_ok && forced.entry(x, 0, 0, y) == want;
            }
        c.check(d_ok, "forced D block matches the displayed matrix exactly");
        // the 8 conditionals indexed by Bob's (input, output) pairs are all
        // pairwise distinguishable, so one clique covers their graph
        auto conds = conditional_channels(forced, Side::A);
        c.check_eq(static_cast<int>(conds.size()), 8, "8 conditionals on Bob's pairs");
        bool all_pw = true;
        for (size_t i = 0; i < conds.size(); ++i)
            for (size_t j = i + 1; j < conds.size(); ++j)
                all_pw = all_pw && pairwise_distinguishable(conds[i], conds[j]);
        c.check(all_pw, "all 8 conditionals pairwise distinguishable");
        int chi = clique_cover_number(distinguishability_graph(conds));
        c.check_eq(chi, 1, "clique cover number 1");
        c.check(chi < 3, "1 < 3 (|X| = 3)");
        auto refute = se_membership_refuted(forced);
        c.check(refute.refuted, "entanglement membership refuted");
        auto pr = positive_rank_bounds(t);
        c.check(pr.lower == 3 && pr.upper == 3, "positive-rank bounds (3,3): k0 = 3");
        c.check_eq(k0_sr(t), 3, "k0_SR = 3 by LP");
    });

    criterion(5, "Tsirelson-point channel: exact entries, not a 2-output mixture", [](Checker& c) {
        AlgCorrelation box = p_lambda_wiring_box(tsirelson_lambda());
        AlgChannel n = wire(box, to_alg(relabel_identity(box.alice_outputs(), box.bob_inputs())));
        Sqrt2Ext alpha{q("1/4"), q("1/8")}; // (2 + sqrt2)/8
        c.check(n.entry(0, 0) == alpha, "alpha entry exact in Q(sqrt2)");
        c.check(std::abs(to_double(alpha) - (1 + 1 / std::sqrt(2.0)) / 4) <= 1e-12,
                "float view within 1e-12");
        Sqrt2Ext beta = Sqrt2Ext(q("1/2")) - alpha;
        c.check(n.entry(1, 1) == alpha && n.entry(2, 0) == beta, "remaining entries exact");
        c.check_eq(k0_sr(n, 2), 3, "LP: not a mixture of two-output 0/1 channels");
        c.check_eq(k0_sr(n), 3, "k0_SR = 3 (feasible at three outputs)");
    });

    criterion(6, "Kochen-Specker channel: alpha < 6 = SE capacity", [](Checker& c) {
        BasisSet peres = peres_six_bases();
        c.check(is_ks_set(peres).is_ks, "Peres six-basis set passes the 4096-transversal check");
        auto ks = ks_channel(peres);
        auto mis = independence_number(ks.graph);
        c.check(mis.size <= 5, "alpha(G_Z) <= 5 on 24 vertices");
        auto th = lovasz_theta(ks.graph, 1e-6);
        c.check(std::abs(th.value - 6.0) <= 1e-3, "theta(G_Z) = 6 +- 1e-3");
        double err = simulate_partition_protocol(ks.rep, ks.partition, ks.channel);
        c.check(err <= 1e-10, "partition protocol decode error <= 1e-10 for all 6 messages");
        auto betas = partition_code_betas(ks.rep, ks.partition);
        c.check(verify_se_code(betas, ks.channel, 1e-9).ok, "induced beta set verifies");
        c.check(mis.size < 6, "c0 < 6");
        auto bounds = se_capacity_bounds(ks.channel, 6);
        c.check(bounds.lower == 6 && bounds.upper == 6, "c0_SE = 6");
    });

    criterion(7, "protocol exactness and message-count bounds", [](Checker& c) {
        Channel u32 = u_channel(3, 2);
        for (int copies : {1, 2}) {
            SrProtocol p = build_sr_protocol(u32, copies, 20240817);
            c.check(verify_protocol_exact(p, u32).exact,
                    "U(3,2) q=" + std::to_string(copies) + " verifies exactly");
            double bound = std::min(std::pow(3.0, copies),
                                    std::floor(2.0 * copies * 3 * std::pow(1.5, copies)));
            c.check(p.message_count() <= bound,
                    "U(3,2) q=" + std::to_string(copies) + " within the touching bound");
        }
        Channel n({"1", "2"}, {"1", "2"}, {{q("4/5"), q("2/5")}, {q("1/5"), q("3/5")}});
        SrProtocol p = build_sr_protocol(n, 1, 20240817);
        c.check_eq(p.perm_degree, 7, "the 2x2 channel embeds in U(7,5)");
        c.check(verify_protocol_exact(p, n).exact,
                "5040-permutation enumeration reproduces the channel exactly");
        c.check(p.message_count() <= std::min(7.0, std::floor(2.0 * 1 * 7 * (7.0 / 5.0))),
                "message count within the touching bound");
    });

    criterion(8, "property suites, 100 randomised trials each", [](Checker& c) {
        { // alpha* multiplicativity and duality, exact
            std::mt19937_64 rng(101);
            for (int t = 0; t < 100; ++t) {
                Hypergraph h1 = hypergraph(random_channel(rng, 3, 3));
                Hypergraph h2 = hypergraph(random_channel(rng, 3, 3));
                Rational a1 = fractional_packing(h1).value;
                Rational a2 = fractional_packing(h2).value;
                if (fractional_packing(hyper_product(h1, h2)).value != a1 * a2) {
                    c.check(false, "alpha* multiplicativity failed at trial " + std::to_string(t));
                    break;
                }
                if (fractional_covering(h1).value != a1) {
                    c.check(false, "alpha* = omega* failed at trial " + std::to_string(t));
                    break;
                }
            }
        }
        { // column-max norm multiplicativity, exact
            std::mt19937_64 rng(202);
            for (int t = 0; t < 100; ++t) {
                Channel a = random_channel(rng, 3, 3), b = random_channel(rng, 3, 3);
                if (colmax_sum(tensor(a, b)) != colmax_sum(a) * colmax_sum(b)) {
                    c.check(false, "norm multiplicativity failed at trial " + std::to_string(t));
                    break;
                }
            }
        }
        { // Shannon capacity below the NS simulation rate
            std::mt19937_64 rng(303);
            for (int t = 0; t < 100; ++t) {
                Channel ch = random_channel(rng);
                double cap = shannon_capacity_ba(ch, 1e-8);
                if (cap > std::log2(to_double(colmax_sum(ch))) + 1e-6) {
                    c.check(false, "C_BA exceeded log2(sum max) at trial " + std::to_string(t));
                    break;
                }
            }
        }
        { // wire o twirl = wire for boxes consuming an identity resource
            std::mt19937_64 rng(404);
            for (int t = 0; t < 100; ++t) {
                Correlation box = random_sr_box(rng, 3, 2, 2, 3);
                Channel id_res = relabel_identity(box.alice_outputs(), box.bob_inputs());
                Correlation tw = twirl(box, TwirlMode::IdentityInput, 2);
                if (wire(tw, id_res) != wire(box, id_res)) {
                    c.check(false, "wire o twirl differed at trial " + std::to_string(t));
                    break;
                }
            }
        }
        { // chain orderings on every generated channel
            std::mt19937_64 rng(505);
            for (int t = 0; t < 100; ++t) {
                Channel ch = random_channel(rng);
                Int c0 = independence_number(confusability_graph(ch)).size;
                Rational alpha = fractional_packing(hypergraph(ch)).value;
                if (!(c0 <= floor_rational(alpha))) {
                    c.check(false, "c0 <= c0_NS failed at trial " + std::to_string(t));
                    break;
                }
                auto pr = positive_rank_bounds(ch);
                int sr = k0_sr(ch, pr.upper);
                if (!(k0_ns(ch) <= sr && sr <= pr.upper)) {
                    c.check(false, "k0_NS <= k0_SR <= k0 failed at trial " + std::to_string(t));
                    break;
                }
            }
        }
    });

    if (g_failures == 0)
        std::printf("acceptance: all criteria passed\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return g_failures;
}
