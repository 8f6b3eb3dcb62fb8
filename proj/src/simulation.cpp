#include "zecap/simulation.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace zecap {

double guard_factor() {
    if (const char* env = std::getenv("ZECAP_GUARD_OVERRIDE")) {
        double f = std::atof(env);
        if (f >= 1.0) return f;
    }
    return 1.0;
}

// ---- positive rank ---------------------------------------------------------

int rational_rank(const Channel& ch) {
    const int ny = ch.num_outputs(), nx = ch.num_inputs();
    std::vector<std::vector<Rational>> a(ny, std::vector<Rational>(nx));
    for (int y = 0; y < ny; ++y)
        for (int x = 0; x < nx; ++x) a[y][x] = ch.entry(y, x);
    int rank = 0;
    for (int col = 0; col < nx && rank < ny; ++col) {
        int pivot = -1;
        for (int r = rank; r < ny; ++r)
            if (a[r][col] != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(a[rank], a[pivot]);
        for (int r = 0; r < ny; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            Rational f = a[r][col] / a[rank][col];
            for (int c = col; c < nx; ++c) a[r][c] -= f * a[rank][c];
        }
        ++rank;
    }
    return rank;
}

namespace {

std::vector<std::string> index_alphabet(int k, const char* prefix = "") {
    std::vector<std::string> out;
    for (int i = 1; i <= k; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

// factor through the distinct columns: the right factor is the
// deterministic column-class map
Factorization column_factorization(const Channel& ch) {
    std::vector<std::vector<Rational>> classes;
    std::vector<int> cls(ch.num_inputs());
    for (int x = 0; x < ch.num_inputs(); ++x) {
        auto col = ch.column(x);
        auto it = std::find(classes.begin(), classes.end(), col);
        if (it == classes.end()) {
            classes.push_back(col);
            cls[x] = static_cast<int>(classes.size()) - 1;
        } else {
            cls[x] = static_cast<int>(it - classes.begin());
        }
    }
    const int r = static_cast<int>(classes.size());
    std::vector<std::vector<Rational>> left(ch.num_outputs(), std::vector<Rational>(r));
    for (int y = 0; y < ch.num_outputs(); ++y)
        for (int j = 0; j < r; ++j) left[y][j] = classes[j][y];
    std::vector<std::vector<Rational>> right(r, std::vector<Rational>(ch.num_inputs(), Rational(0)));
    for (int x = 0; x < ch.num_inputs(); ++x) right[cls[x]][x] = 1;
    auto mid = index_alphabet(r, "m");
    return {Channel(mid, ch.outputs(), std::move(left)),
            Channel(ch.inputs(), mid, std::move(right))};
}

// multiplicative-update NMF, then continued-fraction rounding and an exact
// product check; returns a verified factorisation or nothing
std::optional<Factorization> nmf_attempt(const Channel& ch, int r, uint64_t seed) {
    const int ny = ch.num_outputs(), nx = ch.num_inputs();
    std::vector<std::vector<double>> v(ny, std::vector<double>(nx));
    for (int y = 0; y < ny; ++y)
        for (int x = 0; x < nx; ++x) v[y][x] = to_double(ch.entry(y, x));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> init(0.2, 1.0);
    std::vector<std::vector<double>> w(ny, std::vector<double>(r)), h(r, std::vector<double>(nx));
    for (auto& row : w)
        for (auto& x : row) x = init(rng);
    for (auto& row : h)
        for (auto& x : row) x = init(rng);
    const double eps = 1e-12;
    for (int it = 0; it < 600; ++it) {
        for (int i = 0; i < r; ++i)
            for (int x = 0; x < nx; ++x) {
                double num = 0, den = 0;
                for (int y = 0; y < ny; ++y) {
                    double wh = 0;
                    for (int j = 0; j < r; ++j) wh += w[y][j] * h[j][x];
                    num += w[y][i] * v[y][x];
                    den += w[y][i] * wh;
                }
                h[i][x] *= num / (den + eps);
            }
        for (int y = 0; y < ny; ++y)
            for (int i = 0; i < r; ++i) {
                double num = 0, den = 0;
                for (int x = 0; x < nx; ++x) {
                    double wh = 0;
                    for (int j = 0; j < r; ++j) wh += w[y][j] * h[j][x];
                    num += v[y][x] * h[i][x];
                    den += wh * h[i][x];
                }
                w[y][i] *= num / (den + eps);
            }
    }
    // push column scales of W into H, then round both to small rationals
    for (int i = 0; i < r; ++i) {
        double s = 0;
        for (int y = 0; y < ny; ++y) s += w[y][i];
        if (s < eps) return std::nullopt;
        for (int y = 0; y < ny; ++y) w[y][i] /= s;
        for (int x = 0; x < nx; ++x) h[i][x] *= s;
    }
    Int max_den = 3600;
    std::vector<std::vector<Rational>> wq(ny, std::vector<Rational>(r));
    std::vector<std::vector<Rational>> hq(r, std::vector<Rational>(nx));
    for (int y = 0; y < ny; ++y)
        for (int i = 0; i < r; ++i) wq[y][i] = rationalize(w[y][i], max_den);
    for (int i = 0; i < r; ++i)
        for (int x = 0; x < nx; ++x) hq[i][x] = rationalize(h[i][x], max_den);
    // exact stochastic repair on the largest entry of each column
    auto repair = [](std::vector<std::vector<Rational>>& mat) {
        const int rows = static_cast<int>(mat.size());
        const int cols = static_cast<int>(mat[0].size());
        for (int c = 0; c < cols; ++c) {
            Rational sum(0);
            int arg = 0;
            for (int rr = 0; rr < rows; ++rr) {
                sum += mat[rr][c];
                if (mat[rr][c] > mat[arg][c]) arg = rr;
            }
            mat[arg][c] += 1 - sum;
            if (mat[arg][c].sign() < 0) return false;
        }
        return true;
    };
    if (!repair(wq) || !repair(hq)) return std::nullopt;
    for (int y = 0; y < ny; ++y)
        for (int x = 0; x < nx; ++x) {
            Rational sum(0);
            for (int i = 0; i < r; ++i) sum += wq[y][i] * hq[i][x];
            if (sum != ch.entry(y, x)) return std::nullopt;
        }
    auto mid = index_alphabet(r, "m");
    try {
        return Factorization{Channel(mid, ch.outputs(), std::move(wq)),
                             Channel(ch.inputs(), mid, std::move(hq))};
    } catch (const Error&) {
        return std::nullopt;
    }
}

} // namespace

PositiveRankBounds positive_rank_bounds(const Channel& ch) {
    PositiveRankBounds out;
    out.lower = rational_rank(ch);
    Factorization cols = column_factorization(ch);
    if (cols.right.num_outputs() <= ch.num_outputs()) {
        out.upper = cols.right.num_outputs();
        out.factorization = std::move(cols);
    } else {
        // fall back to the point distributions on Y
        out.upper = ch.num_outputs();
        out.factorization = Factorization{identity_on(ch.outputs()), ch};
    }
    // the rounding search only pays off at desk scale; larger gaps stay as
    // honest bounds
    if (ch.num_inputs() * ch.num_outputs() <= 100) {
        for (int r = out.lower; r < out.upper; ++r) {
            bool found = false;
            for (uint64_t seed = 1; seed <= 6 && !found; ++seed) {
                auto fac = nmf_attempt(ch, r, seed * 7919);
                if (fac) {
                    out.upper = r;
                    out.factorization = std::move(*fac);
                    found = true;
                }
            }
            if (found) break;
        }
    }
    return out;
}

// ---- k0 with shared randomness ---------------------------------------------

template <class S>
int k0_sr(const BasicChannel<S>& ch, int k_max) {
    const int nx = ch.num_inputs(), ny = ch.num_outputs();
    if (k_max < 0) k_max = ny;
    std::vector<std::vector<int>> support(nx);
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y)
            if (ch.entry(y, x).sign() > 0) support[x].push_back(y);

    for (int k = 1; k <= std::min(k_max, ny); ++k) {
        double combos = to_double(Rational(binomial(ny, k)));
        if (combos * nx * k > 2e6 * guard_factor())
            throw Error("k0_sr guard exceeded enumerating output subsets");
        // candidate output sets: k-subsets meeting every column support
        std::vector<std::vector<int>> zs;
        for (auto sub : subsets_of_size(ny, k)) {
            for (int& v : sub) --v;
            bool hits_all = true;
            for (int x = 0; x < nx && hits_all; ++x) {
                bool hit = false;
                for (int y : sub)
                    if (std::binary_search(support[x].begin(), support[x].end(), y)) {
                        hit = true;
                        break;
                    }
                hits_all = hit;
            }
            if (hits_all) zs.push_back(std::move(sub));
        }
        if (zs.empty()) continue;

        // N = sum_Z A_Z with A_Z supported on rows Z and constant column
        // sums lambda_Z: exactly membership of N in the convex hull of
        // deterministic channels with at most k distinct outputs
        LinearProgram<S> lp;
        std::vector<int> lambda(zs.size());
        std::map<std::tuple<size_t, int, int>, int> avar;
        for (size_t z = 0; z < zs.size(); ++z) {
            lambda[z] = lp.add_var("l" + std::to_string(z));
            for (int y : zs[z])
                for (int x = 0; x < nx; ++x)
                    if (ch.entry(y, x).sign() > 0) avar[{z, y, x}] = lp.add_var("a");
        }
        for (size_t z = 0; z < zs.size(); ++z)
            for (int x = 0; x < nx; ++x) {
                std::vector<std::pair<int, S>> terms{{lambda[z], S(-1)}};
                for (int y : zs[z])
                    if (auto it = avar.find({z, y, x}); it != avar.end())
                        terms.push_back({it->second, S(1)});
                lp.add_row(terms, Rel::Eq, S(0));
            }
        for (int x = 0; x < nx; ++x)
            for (int y : support[x]) {
                std::vector<std::pair<int, S>> terms;
                for (size_t z = 0; z < zs.size(); ++z)
                    if (auto it = avar.find({z, y, x}); it != avar.end())
                        terms.push_back({it->second, S(1)});
                lp.add_row(terms, Rel::Eq, ch.entry(y, x));
            }
        {
            std::vector<std::pair<int, S>> terms;
            for (size_t z = 0; z < zs.size(); ++z) terms.push_back({lambda[z], S(1)});
            lp.add_row(terms, Rel::Eq, S(1));
        }
        if (feasible(lp).is_feasible) return k;
    }
    return k_max + 1;
}

template int k0_sr<Rational>(const BasicChannel<Rational>&, int);
template int k0_sr<Sqrt2Ext>(const BasicChannel<Sqrt2Ext>&, int);

// ---- k0 with non-signalling boxes -------------------------------------------

ColumnMaxSum k_ns(const Channel& ch) {
    ColumnMaxSum out;
    for (int y = 0; y < ch.num_outputs(); ++y) {
        Rational mx(0);
        for (int x = 0; x < ch.num_inputs(); ++x) mx = std::max(mx, ch.entry(y, x));
        out.sum += mx;
    }
    out.k0 = ceil_rational(out.sum);
    out.bits = std::log2(to_double(out.sum));
    return out;
}

Int k0_ns(const Channel& ch) { return k_ns(ch).k0; }

Correlation forced_ns_correlation(const Channel& ch, int k) {
    ColumnMaxSum s = k_ns(ch);
    if (s.sum != k)
        throw Error("forced correlation needs sum_y max_x N(y|x) = k exactly (got " +
                    to_string(s.sum) + ")");
    const int nx = ch.num_inputs(), ny = ch.num_outputs();
    std::vector<Rational> u(ny);
    for (int y = 0; y < ny; ++y) {
        Rational mx(0);
        for (int x = 0; x < nx; ++x) mx = std::max(mx, ch.entry(y, x));
        u[y] = mx / k;
    }
    std::vector<std::string> msgs;
    for (int i = 0; i < k; ++i) msgs.push_back(std::to_string(i));
    // Alice: channel input in, message out; Bob: message in, channel output
    // out. Diagonal blocks D(y,x) = N(y|x)/k, off-diagonal Q = u_y - D.
    std::vector<std::vector<Rational>> blocks(
        static_cast<size_t>(nx) * k,
        std::vector<Rational>(static_cast<size_t>(k) * ny, Rational(0)));
    for (int x = 0; x < nx; ++x)
        for (int zhat = 0; zhat < k; ++zhat) {
            auto& blk = blocks[static_cast<size_t>(x) * k + zhat];
            for (int z = 0; z < k; ++z)
                for (int y = 0; y < ny; ++y) {
                    Rational d = ch.entry(y, x) / k;
                    blk[static_cast<size_t>(z) * ny + y] = (z == zhat) ? d : u[y] - d;
                }
        }
    return Correlation(ch.inputs(), msgs, msgs, ch.outputs(), std::move(blocks));
}

// ---- touching sets -----------------------------------------------------------

bool is_touching(const TouchingSet& t) {
    double combos = std::pow(to_double(Rational(binomial(t.n, t.m))), t.q);
    if (combos > 1e6 * guard_factor())
        throw Error("touching-set verification guard exceeded");
    auto subsets = subsets_of_size(t.n, t.m);
    std::vector<uint64_t> masks;
    for (const auto& s : subsets) {
        uint64_t m = 0;
        for (int v : s) m |= uint64_t(1) << (v - 1);
        masks.push_back(m);
    }
    std::vector<size_t> pick(t.q, 0);
    for (;;) {
        bool hit = false;
        for (const auto& tuple : t.tuples) {
            bool all = true;
            for (int j = 0; j < t.q && all; ++j) all = masks[pick[j]] >> tuple[j] & 1;
            if (all) { hit = true; break; }
        }
        if (!hit) return false;
        int j = t.q - 1;
        while (j >= 0 && ++pick[j] == masks.size()) pick[j--] = 0;
        if (j < 0) break;
    }
    return true;
}

namespace {

std::vector<std::vector<int>> tuple_grid(int base, int q) {
    std::vector<std::vector<int>> tuples;
    std::vector<int> cur(q, 0);
    for (;;) {
        tuples.push_back(cur);
        int j = q - 1;
        while (j >= 0 && ++cur[j] == base) cur[j--] = 0;
        if (j < 0) break;
    }
    return tuples;
}

} // namespace

TouchingSet sampled_touching_set(int n, int m, int q, uint64_t seed) {
    if (!(1 <= m && m <= n) || q < 1)
        throw Error("sampled_touching_set needs 1 <= m <= n, q >= 1");
    TouchingSet t{n, m, q, {}};
    Rational bound =
        Rational(2 * n * q) * pow_rational(make_rational(n, m), static_cast<unsigned>(q));
    Int r_int = floor_rational(bound);
    if (r_int > Int(static_cast<long>(2e6 * guard_factor())))
        throw Error("sampled_touching_set guard exceeded (sample too large)");
    long r = r_int.convert_to<long>();
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::mt19937_64 rng(seed + static_cast<uint64_t>(attempt));
        std::uniform_int_distribution<int> pick(0, n - 1);
        std::set<std::vector<int>> tuples;
        for (long i = 0; i < r; ++i) {
            std::vector<int> cur(q);
            for (int j = 0; j < q; ++j) cur[j] = pick(rng);
            tuples.insert(std::move(cur));
        }
        t.tuples.assign(tuples.begin(), tuples.end());
        if (is_touching(t)) return t;
    }
    // failures are exponentially rare; the full grid always touches
    t.tuples = tuple_grid(n, q);
    return t;
}

TouchingSet m_touching_set(int n, int m, int q, uint64_t seed) {
    if (!(1 <= m && m <= n) || q < 1) throw Error("m_touching_set needs 1 <= m <= n, q >= 1");
    if (n > 62) throw Error("m_touching_set supports n <= 62");

    Rational full = pow_rational(Rational(n), static_cast<unsigned>(q));
    Rational sampled_bound =
        Rational(2 * n * q) * pow_rational(make_rational(n, m), static_cast<unsigned>(q));
    Rational prefix = pow_rational(Rational(n - m + 1), static_cast<unsigned>(q));

    if (sampled_bound < prefix && sampled_bound < full) return sampled_touching_set(n, m, q, seed);

    // {0..n-m}^q touches every product of m-subsets by pigeonhole
    if (to_double(prefix) > 2e6 * guard_factor())
        throw Error("m_touching_set guard exceeded (prefix grid too large)");
    TouchingSet t{n, m, q, tuple_grid(n - m + 1, q)};
    if (!is_touching(t)) throw Error("internal: prefix touching set failed verification");
    return t;
}

// ---- protocols ----------------------------------------------------------------

int SrProtocol::encode(const std::vector<std::vector<int>>& perms,
                       const std::vector<int>& inputs) const {
    for (size_t idx = 0; idx < touching.tuples.size(); ++idx) {
        const auto& z = touching.tuples[idx];
        bool all = true;
        for (int j = 0; j < copies && all; ++j) {
            int permuted = perms[j][z[j]];
            const auto& sx = embed[inputs[j]];
            all = std::binary_search(sx.begin(), sx.end(), permuted);
        }
        if (all) return static_cast<int>(idx);
    }
    throw Error("internal: touching set missed an input block");
}

std::vector<int> SrProtocol::decode(const std::vector<std::vector<int>>& perms, int msg) const {
    const auto& z = touching.tuples[msg];
    std::vector<int> out(copies);
    for (int j = 0; j < copies; ++j) out[j] = copy_output[perms[j][z[j]]];
    return out;
}

double SrProtocol::rate_bits() const {
    return std::log2(static_cast<double>(message_count())) / copies;
}

double SrProtocol::rate_bound_bits() const {
    double n = perm_degree, mm = to_double(Rational(denominator));
    return std::log2(n / mm) + std::log2(2.0 * copies * n) / copies;
}

SrProtocol build_sr_protocol(const Channel& ch, int q, uint64_t seed) {
    if (q < 1) throw Error("build_sr_protocol needs q >= 1");
    Int m(1);
    for (int y = 0; y < ch.num_outputs(); ++y)
        for (int x = 0; x < ch.num_inputs(); ++x) m = lcm(m, denominator(ch.entry(y, x)));
    // integer mass at precision 1/M
    auto mass = [&](int y, int x) {
        Rational scaled = ch.entry(y, x) * Rational(m);
        return numerator(scaled).convert_to<long>();
    };
    // output y splits into t_y = max_x M N(y|x) copies; input x occupies the
    // first M N(y|x) of them, giving an M-subset of the copy alphabet
    std::vector<long> ty(ch.num_outputs());
    long total = 0;
    for (int y = 0; y < ch.num_outputs(); ++y) {
        long mx = 0;
        for (int x = 0; x < ch.num_inputs(); ++x) mx = std::max(mx, mass(y, x));
        ty[y] = mx;
        total += mx;
    }
    if (total > static_cast<long>(5040 * guard_factor()))
        throw Error("build_sr_protocol guard exceeded (permutation degree " +
                    std::to_string(total) + ")");
    SrProtocol p{ch, q, static_cast<int>(total), m, {}, {}, {}};
    std::vector<int> row_begin(ch.num_outputs());
    for (int y = 0; y < ch.num_outputs(); ++y) {
        row_begin[y] = static_cast<int>(p.copy_output.size());
        for (long j = 0; j < ty[y]; ++j) p.copy_output.push_back(y);
    }
    p.embed.assign(ch.num_inputs(), {});
    for (int x = 0; x < ch.num_inputs(); ++x)
        for (int y = 0; y < ch.num_outputs(); ++y)
            for (long j = 0; j < mass(y, x); ++j)
                p.embed[x].push_back(row_begin[y] + static_cast<int>(j));
    p.touching = m_touching_set(p.perm_degree, m.convert_to<int>(), q, seed);
    return p;
}

VerifyReport verify_protocol_exact(const SrProtocol& p, const Channel& target) {
    VerifyReport rep;
    if (target.inputs() != p.base.inputs() || target.outputs() != p.base.outputs()) {
        rep.exact = false;
        rep.note = "alphabet mismatch between protocol base and target";
        return rep;
    }
    const int nx = p.base.num_inputs(), ny = p.base.num_outputs();
    const int q = p.copies;
    double perm_count = to_double(Rational(factorial(p.perm_degree)));
    double pairs = std::pow(perm_count, q) * std::pow(static_cast<double>(nx), q);
    if (pairs > 1e7 * guard_factor())
        throw Error("verify_protocol_exact guard exceeded (randomness x input pairs)");

    auto perms = all_permutations(p.perm_degree);
    Int total = 1;
    for (int j = 0; j < q; ++j) total *= factorial(p.perm_degree);

    long ninputs = 1, noutputs = 1;
    for (int j = 0; j < q; ++j) {
        ninputs *= nx;
        noutputs *= ny;
    }
    std::vector<std::vector<long>> counts(ninputs, std::vector<long>(noutputs, 0));

    std::vector<int> pidx(q, 0);
    std::vector<std::vector<int>> cur(q);
    for (;;) {
        for (int j = 0; j < q; ++j) cur[j] = perms[pidx[j]];
        std::vector<int> inputs(q, 0);
        for (long xi = 0; xi < ninputs; ++xi) {
            int msg = p.encode(cur, inputs);
            std::vector<int> outs = p.decode(cur, msg);
            long yi = 0;
            for (int j = 0; j < q; ++j) yi = yi * ny + outs[j];
            counts[xi][yi] += 1;
            int j = q - 1;
            while (j >= 0 && ++inputs[j] == nx) inputs[j--] = 0;
        }
        int j = q - 1;
        while (j >= 0 && ++pidx[j] == static_cast<int>(perms.size())) pidx[j--] = 0;
        if (j < 0) break;
    }

    auto tuple_symbol = [&](const std::vector<std::string>& alphabet, long code, long radix) {
        std::vector<int> digits(q);
        for (int j = q - 1; j >= 0; --j) {
            digits[j] = static_cast<int>(code % radix);
            code /= radix;
        }
        std::string s = alphabet[digits[0]];
        for (int j = 1; j < q; ++j) s = product_symbol(s, alphabet[digits[j]]);
        return s;
    };

    rep.exact = true;
    for (long xi = 0; xi < ninputs; ++xi)
        for (long yi = 0; yi < noutputs; ++yi) {
            Rational expect(1);
            long xc = xi, yc = yi;
            std::vector<int> xd(q), yd(q);
            for (int j = q - 1; j >= 0; --j) {
                xd[j] = static_cast<int>(xc % nx);
                yd[j] = static_cast<int>(yc % ny);
                xc /= nx;
                yc /= ny;
            }
            for (int j = 0; j < q; ++j) expect *= target.entry(yd[j], xd[j]);
            Rational sim = make_rational(counts[xi][yi], total);
            if (sim != expect) {
                rep.exact = false;
                if (rep.mismatches.size() < 10)
                    rep.mismatches.push_back({tuple_symbol(target.inputs(), xi, nx),
                                              tuple_symbol(target.outputs(), yi, ny), sim,
                                              expect});
            }
        }
    if (!rep.exact && rep.note.empty()) rep.note = "simulated distribution differs from target";
    return rep;
}

std::string protocol_to_json(const SrProtocol& p) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["copies"] = p.copies;
    j["perm_degree"] = p.perm_degree;
    j["denominator"] = p.denominator.str();
    j["message_count"] = p.message_count();
    j["base"] = ordered_json::parse(channel_to_json(p.base));
    j["embed"] = p.embed;
    j["copy_output"] = p.copy_output;
    j["touching"] = p.touching.tuples;
    // explicit randomness/encoder/decoder tables when small enough for
    // independent re-checks
    double rows = std::pow(to_double(Rational(factorial(p.perm_degree))), p.copies);
    if (rows <= 5000) {
        auto perms = all_permutations(p.perm_degree);
        ordered_json rand_tab = ordered_json::array();
        ordered_json enc_tab = ordered_json::array();
        ordered_json dec_tab = ordered_json::array();
        Int total = 1;
        for (int c = 0; c < p.copies; ++c) total *= factorial(p.perm_degree);
        std::string prob = make_rational(1, total).str();
        const int nx = p.base.num_inputs();
        long ninputs = 1;
        for (int c = 0; c < p.copies; ++c) ninputs *= nx;
        std::vector<int> pidx(p.copies, 0);
        std::vector<std::vector<int>> cur(p.copies);
        for (;;) {
            for (int c = 0; c < p.copies; ++c) cur[c] = perms[pidx[c]];
            ordered_json r;
            r["perms"] = cur;
            r["prob"] = prob;
            rand_tab.push_back(std::move(r));
            ordered_json enc_row = ordered_json::array();
            ordered_json dec_row = ordered_json::array();
            std::vector<int> inputs(p.copies, 0);
            for (long xi = 0; xi < ninputs; ++xi) {
                enc_row.push_back(p.encode(cur, inputs));
                int c = p.copies - 1;
                while (c >= 0 && ++inputs[c] == nx) inputs[c--] = 0;
            }
            for (int msg = 0; msg < p.message_count(); ++msg)
                dec_row.push_back(p.decode(cur, msg));
            enc_tab.push_back(std::move(enc_row));
            dec_tab.push_back(std::move(dec_row));
            int c = p.copies - 1;
            while (c >= 0 && ++pidx[c] == static_cast<int>(perms.size())) pidx[c--] = 0;
            if (c < 0) break;
        }
        j["randomness"] = std::move(rand_tab);
        j["encoder"] = std::move(enc_tab);
        j["decoder"] = std::move(dec_tab);
    } else {
        j["tables_omitted"] = "randomness space too large to materialise";
    }
    return j.dump(2);
}

SrProtocol protocol_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Error(std::string("protocol JSON parse error: ") + e.what());
    }
    try {
        SrProtocol p{channel_from_json(j.at("base").dump()),
                     j.at("copies").get<int>(),
                     j.at("perm_degree").get<int>(),
                     Int(j.at("denominator").get<std::string>()),
                     j.at("embed").get<std::vector<std::vector<int>>>(),
                     j.at("copy_output").get<std::vector<int>>(),
                     {}};
        p.touching.n = p.perm_degree;
        p.touching.m = p.denominator.convert_to<int>();
        p.touching.q = p.copies;
        p.touching.tuples = j.at("touching").get<std::vector<std::vector<int>>>();
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("protocol JSON is incomplete: ") + e.what());
    }
}

// ---- weak simulation -----------------------------------------------------------

WeakSimRate weak_sim_rate(const Hypergraph& h) {
    for (int v = 0; v < h.size(); ++v) {
        bool covered = false;
        for (const auto& e : h.edges)
            if (std::find(e.begin(), e.end(), v) != e.end()) { covered = true; break; }
        if (!covered)
            throw Error("weak simulation rate is infeasible: vertex '" + h.vertices[v] +
                        "' lies in no hyperedge");
    }
    // joint LP over covering weights w_y and a channel supported on the
    // hyperedges: min sum_y w_y with w_y >= N(y|x) >= 0 and unit columns
    const int ne = static_cast<int>(h.edges.size());
    LinearProgram<Rational> lp;
    lp.sense = Sense::Min;
    std::vector<int> wv(ne);
    for (int e = 0; e < ne; ++e) wv[e] = lp.add_var("w" + std::to_string(e), Rational(1));
    std::map<std::pair<int, int>, int> nv;
    for (int e = 0; e < ne; ++e)
        for (int v : h.edges[e]) nv[{e, v}] = lp.add_var("n");
    for (auto& [key, var] : nv)
        lp.add_row({{var, Rational(1)}, {wv[key.first], Rational(-1)}}, Rel::Le, Rational(0));
    for (int v = 0; v < h.size(); ++v) {
        std::vector<std::pair<int, Rational>> terms;
        for (int e = 0; e < ne; ++e)
            if (auto it = nv.find({e, v}); it != nv.end())
                terms.push_back({it->second, Rational(1)});
        lp.add_row(terms, Rel::Eq, Rational(1));
    }
    auto res = solve(lp);
    if (res.status != LpStatus::Optimal || !res.verify(lp))
        throw Error("weak simulation LP failed to certify");
    WeakSimRate out{res.value, std::log2(to_double(res.value)),
                    identity_channel(1)};
    std::vector<std::string> outs;
    for (int e = 0; e < ne; ++e) outs.push_back("e" + std::to_string(e + 1));
    std::vector<std::vector<Rational>> rows(ne, std::vector<Rational>(h.size(), Rational(0)));
    for (auto& [key, var] : nv) rows[key.first][key.second] = res.primal[var];
    out.witness = Channel(h.vertices, std::move(outs), std::move(rows));
    return out;
}

// ---- precision embedding ---------------------------------------------------------

PrecisionEmbedding rationalize_with_precision(const Channel& ch, const Int& M) {
    if (M < 1) throw Error("precision M must be >= 1");
    const int nx = ch.num_inputs(), ny = ch.num_outputs();
    std::vector<std::string> wide = ch.outputs();
    for (int x = 0; x < nx; ++x) wide.push_back(ch.inputs()[x] + "'");
    std::vector<std::vector<Rational>> refined(wide.size(), std::vector<Rational>(nx, Rational(0)));
    for (int x = 0; x < nx; ++x) {
        Rational leftover(1);
        for (int y = 0; y < ny; ++y) {
            Rational t = make_rational(floor_rational(ch.entry(y, x) * M), M);
            refined[y][x] = t;
            leftover -= t;
        }
        refined[ny + x][x] = leftover;
    }
    Channel fine(ch.inputs(), wide, refined);
    // post-processor: outputs pass through; the leftover symbol of input x
    // redistributes the floored remainder of its column
    std::vector<std::vector<Rational>> post(ny, std::vector<Rational>(wide.size(), Rational(0)));
    for (int y = 0; y < ny; ++y) post[y][y] = 1;
    for (int x = 0; x < nx; ++x) {
        Rational mass = fine.entry(ny + x, x);
        if (mass == 0) {
            post[0][ny + x] = 1;
            continue;
        }
        for (int y = 0; y < ny; ++y)
            post[y][ny + x] = (ch.entry(y, x) - fine.entry(y, x)) / mass;
    }
    return {fine, Channel(wide, ch.outputs(), post)};
}

// ---- summary -----------------------------------------------------------------------

SimCostReport simcost_report(const Channel& ch) {
    SimCostReport rep;
    auto pr = positive_rank_bounds(ch);
    rep.pr_lower = pr.lower;
    rep.pr_upper = pr.upper;
    try {
        rep.k0_sr_value = k0_sr(ch, pr.upper);
        rep.k0_sr_computed = true;
    } catch (const Error&) {
        // subset enumeration guard: leave k0_sr unreported
        rep.k0_sr_computed = false;
    }
    auto ns = k_ns(ch);
    rep.k0_ns_value = ns.k0;
    rep.colmax_sum = ns.sum;
    rep.k_ns_bits = ns.bits;
    return rep;
}

} // namespace zecap
