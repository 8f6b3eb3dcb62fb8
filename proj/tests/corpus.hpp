// Shared randomised corpus generators for the property suites. Channels are
// exact (integer mass split over a common denominator), biased toward zero
// entries so hypergraphs stay interesting.
#pragma once

#include "zecap/channel.hpp"
#include "zecap/correlation.hpp"

#include <random>

namespace zecap::testing {

inline Channel random_channel(std::mt19937_64& rng, int max_in = 4, int max_out = 4,
                              int max_den = 6) {
    std::uniform_int_distribution<int> in_d(1, max_in), out_d(2, max_out), den_d(1, max_den);
    int nx = in_d(rng), ny = out_d(rng);
    std::vector<std::string> ins, outs;
    for (int x = 0; x < nx; ++x) ins.push_back("x" + std::to_string(x));
    for (int y = 0; y < ny; ++y) outs.push_back("y" + std::to_string(y));
    std::vector<std::vector<Rational>> rows(ny, std::vector<Rational>(nx, Rational(0)));
    for (int x = 0; x < nx; ++x) {
        int den = den_d(rng);
        // drop `den` units of mass on a random small support
        std::uniform_int_distribution<int> y_d(0, ny - 1);
        int spread = 1 + y_d(rng) % ny;
        std::vector<int> mass(ny, 0);
        std::vector<int> support;
        for (int s = 0; s < spread; ++s) support.push_back(y_d(rng));
        std::uniform_int_distribution<int> pick(0, static_cast<int>(support.size()) - 1);
        for (int u = 0; u < den; ++u) mass[support[pick(rng)]] += 1;
        for (int y = 0; y < ny; ++y)
            if (mass[y] > 0) rows[y][x] = make_rational(mass[y], den);
    }
    return Channel(std::move(ins), std::move(outs), std::move(rows));
}

// random local-deterministic mixture: always a valid SR (hence NS) box
inline Correlation random_sr_box(std::mt19937_64& rng, int na, int ns, int nb, int nt,
                                 int pieces = 4) {
    std::vector<std::string> A, S, B, T;
    for (int i = 0; i < na; ++i) A.push_back("a" + std::to_string(i));
    for (int i = 0; i < ns; ++i) S.push_back("s" + std::to_string(i));
    for (int i = 0; i < nb; ++i) B.push_back("b" + std::to_string(i));
    for (int i = 0; i < nt; ++i) T.push_back("t" + std::to_string(i));
    std::vector<std::vector<Rational>> table(
        static_cast<size_t>(na) * nb, std::vector<Rational>(static_cast<size_t>(ns) * nt, Rational(0)));
    std::uniform_int_distribution<int> s_d(0, ns - 1), t_d(0, nt - 1);
    Rational w = make_rational(1, pieces);
    for (int piece = 0; piece < pieces; ++piece) {
        std::vector<int> fa(na), fb(nb);
        for (int a = 0; a < na; ++a) fa[a] = s_d(rng);
        for (int b = 0; b < nb; ++b) fb[b] = t_d(rng);
        for (int a = 0; a < na; ++a)
            for (int b = 0; b < nb; ++b)
                table[static_cast<size_t>(a) * nb + b]
                     [static_cast<size_t>(fa[a]) * nt + fb[b]] += w;
    }
    return Correlation(A, S, B, T, table);
}

} // namespace zecap::testing
