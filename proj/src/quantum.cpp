#include "zecap/quantum.hpp"

#include "zecap/guards.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>

namespace zecap {

std::string to_string(const GaussianRational& v) {
    if (v.im == 0) return to_string(v.re);
    std::string im = to_string(v.im) + "i";
    if (v.re == 0) return im;
    return to_string(v.re) + (v.im.sign() > 0 ? "+" : "") + im;
}

GaussianRational parse_gaussian(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw Error("empty complex entry");
    if (s.back() != 'i') return GaussianRational(parse_rational(s));
    s.pop_back();
    if (s.empty() || s == "+") return {Rational(0), Rational(1)};
    if (s == "-") return {Rational(0), Rational(-1)};
    // split real and imaginary parts at the last top-level sign
    for (size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '/' && s[i - 1] != '+' && s[i - 1] != '-') {
            Rational re = parse_rational(s.substr(0, i));
            std::string imtxt = s.substr(i + 1);
            Rational im = imtxt.empty() ? Rational(1) : parse_rational(imtxt);
            if (s[i] == '-') im = -im;
            return {re, im};
        }
    }
    return {Rational(0), parse_rational(s)};
}

ExactVector::ExactVector(std::vector<GaussianRational> c) : coords(std::move(c)) {
    for (const auto& v : coords) norm2 += v.re * v.re + v.im * v.im;
    if (norm2 == 0) throw Error("zero vector in basis");
}

StateVector ExactVector::to_float() const {
    StateVector out(dim());
    double scale = 1.0 / std::sqrt(to_double(norm2));
    for (int i = 0; i < dim(); ++i)
        out[i] = std::complex<double>(to_double(coords[i].re), to_double(coords[i].im)) * scale;
    return out;
}

GaussianRational inner(const ExactVector& u, const ExactVector& v) {
    if (u.dim() != v.dim()) throw Error("inner product of mismatched dimensions");
    GaussianRational sum;
    for (int i = 0; i < u.dim(); ++i) sum = sum + u.coords[i].conj() * v.coords[i];
    return sum;
}

BasisSet::BasisSet(int dimension, std::vector<std::vector<ExactVector>> bases)
    : dim_(dimension), bases_(std::move(bases)) {
    if (dim_ < 1 || bases_.empty()) throw Error("basis set needs d >= 1 and q >= 1");
    for (const auto& basis : bases_) {
        if (static_cast<int>(basis.size()) != dim_) throw Error("each basis must have d vectors");
        for (const auto& v : basis)
            if (v.dim() != dim_) throw Error("basis vector has wrong dimension");
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t j = i + 1; j < basis.size(); ++j)
                if (!inner(basis[i], basis[j]).is_zero())
                    throw Error("basis vectors are not orthogonal");
    }
}

BasisSet peres_six_bases() {
    auto v = [](int a, int b, int c, int d) {
        return ExactVector(
            {GaussianRational(a), GaussianRational(b), GaussianRational(c), GaussianRational(d)});
    };
    std::vector<std::vector<ExactVector>> bases = {
        {v(1, 0, 0, 0), v(0, 1, 0, 0), v(0, 0, 1, 0), v(0, 0, 0, 1)},
        {v(1, 1, 1, 1), v(1, 1, -1, -1), v(1, -1, 1, -1), v(1, -1, -1, 1)},
        {v(1, 1, 1, -1), v(1, 1, -1, 1), v(1, -1, 1, 1), v(1, -1, -1, -1)},
        {v(1, 1, 0, 0), v(1, -1, 0, 0), v(0, 0, 1, 1), v(0, 0, 1, -1)},
        {v(1, 0, 1, 0), v(1, 0, -1, 0), v(0, 1, 0, 1), v(0, 1, 0, -1)},
        {v(1, 0, 0, 1), v(1, 0, 0, -1), v(0, 1, 1, 0), v(0, 1, -1, 0)},
    };
    return BasisSet(4, std::move(bases));
}

KsCheck is_ks_set(const BasisSet& bs) {
    const int q = bs.count(), d = bs.dimension();
    double total = std::pow(static_cast<double>(d), q);
    if (total > 1e7 * guard_factor()) throw Error("is_ks_set guard exceeded (d^q transversals)");
    const int n = q * d;
    std::vector<std::vector<bool>> orth(n, std::vector<bool>(n, false));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            orth[a][b] = inner(bs.vec(a / d, a % d), bs.vec(b / d, b % d)).is_zero();
    // search for one vector per basis with no orthogonal pair
    std::vector<int> pick(q, -1);
    std::function<bool(int)> dfs = [&](int basis) {
        if (basis == q) return true;
        for (int j = 0; j < d; ++j) {
            bool ok = true;
            for (int prev = 0; prev < basis && ok; ++prev)
                ok = !orth[prev * d + pick[prev]][basis * d + j];
            if (!ok) continue;
            pick[basis] = j;
            if (dfs(basis + 1)) return true;
            pick[basis] = -1;
        }
        return false;
    };
    KsCheck out;
    if (dfs(0)) {
        out.is_ks = false;
        out.witness = pick;
    } else {
        out.is_ks = true;
    }
    return out;
}

KsChannelResult ks_channel(const BasisSet& bs) {
    auto check = is_ks_set(bs);
    if (!check.is_ks) throw Error("ks_channel needs a KS basis set");
    const int q = bs.count(), d = bs.dimension();
    std::vector<std::string> names;
    for (int m = 1; m <= q; ++m)
        for (int j = 1; j <= d; ++j) names.push_back(std::to_string(m) + ":" + std::to_string(j));
    Graph g(names);
    for (int a = 0; a < q * d; ++a)
        for (int b = a + 1; b < q * d; ++b)
            if (inner(bs.vec(a / d, a % d), bs.vec(b / d, b % d)).is_zero()) g.add_edge(a, b);

    // worst-case channel for this confusability graph: uniform over the
    // maximal cliques through each input
    auto cliques = maximal_cliques(g);
    std::vector<int> degree(q * d, 0);
    for (const auto& c : cliques)
        for (int v : c) ++degree[v];
    std::vector<std::string> outs;
    for (size_t i = 1; i <= cliques.size(); ++i) outs.push_back("K" + std::to_string(i));
    std::vector<std::vector<Rational>> rows(cliques.size(),
                                            std::vector<Rational>(q * d, Rational(0)));
    for (size_t e = 0; e < cliques.size(); ++e)
        for (int v : cliques[e]) rows[e][v] = make_rational(1, degree[v]);
    Channel ch(names, outs, std::move(rows));

    OrthRep rep{g, {}};
    for (int m = 0; m < q; ++m)
        for (int j = 0; j < d; ++j) rep.vectors.push_back(bs.vec(m, j).to_float());
    std::vector<std::vector<int>> partition(q);
    for (int m = 0; m < q; ++m)
        for (int j = 0; j < d; ++j) partition[m].push_back(m * d + j);
    return {std::move(ch), std::move(g), std::move(rep), std::move(partition)};
}

ThetaResult lovasz_theta(const Graph& g, double tol, long max_iter) {
    const int n = g.size();
    if (n < 1 || n > 64) throw Error("lovasz_theta supports 1 <= |V| <= 64");
    if (tol < 1e-7) throw Error("lovasz_theta tolerance must be >= 1e-7");
    auto edges = g.edges();

    using Mat = Eigen::MatrixXd;
    auto project_affine = [&](Mat m) {
        for (auto [u, v] : edges) {
            m(u, v) = 0;
            m(v, u) = 0;
        }
        double shift = (m.trace() - 1.0) / n;
        for (int i = 0; i < n; ++i) m(i, i) -= shift;
        return m;
    };
    auto project_psd = [](const Mat& m) {
        Eigen::SelfAdjointEigenSolver<Mat> eig(m);
        Eigen::VectorXd lam = eig.eigenvalues().cwiseMax(0.0);
        return Mat(eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().transpose());
    };

    Mat Y = Mat::Identity(n, n) / n;
    Mat B = Y, U = Mat::Zero(n, n);
    const Mat J = Mat::Ones(n, n);
    double rho = 1.0;
    const double relax = 1.6;
    ThetaResult res;
    for (long it = 0; it < max_iter; ++it) {
        B = project_affine(Y - U + J / rho);
        Mat bhat = relax * B + (1 - relax) * Y;
        Mat ynew = project_psd(bhat + U);
        U += bhat - ynew;
        double pri = (B - ynew).norm();
        double dua = rho * (ynew - Y).norm();
        Y = ynew;
        res.iterations = it + 1;
        double scale = std::max(1.0, std::max(B.norm(), Y.norm()));
        if (pri <= tol * scale && dua <= tol * std::max(1.0, rho * U.norm())) {
            res.converged = true;
            res.primal_residual = pri;
            res.dual_residual = dua;
            break;
        }
        if (it % 100 == 99) {
            if (pri > 10 * dua) {
                rho *= 2;
                U /= 2;
            } else if (dua > 10 * pri) {
                rho /= 2;
                U *= 2;
            }
        }
    }
    if (!res.converged) throw Error("lovasz_theta did not converge within the iteration cap");
    res.witness = Y;
    res.value = Y.sum();
    return res;
}

double simulate_partition_protocol(const OrthRep& rep,
                                   const std::vector<std::vector<int>>& partition,
                                   const Channel& ch) {
    const int n = rep.graph.size();
    if (static_cast<int>(rep.vectors.size()) != n)
        throw Error("orthonormal representation is incomplete");
    if (ch.num_inputs() != n) throw Error("channel inputs must match the representation");
    const int d = rep.vectors.empty() ? 0 : static_cast<int>(rep.vectors[0].size());
    std::vector<bool> seen(n, false);
    for (const auto& k : partition) {
        if (static_cast<int>(k.size()) != d) throw Error("partition cliques must have size d");
        for (size_t i = 0; i < k.size(); ++i)
            for (size_t j = i + 1; j < k.size(); ++j)
                if (!rep.graph.has_edge(k[i], k[j]))
                    throw Error("partition block is not a clique: " + rep.graph.vertex(k[i]) +
                                ", " + rep.graph.vertex(k[j]));
        for (int v : k) {
            if (seen[v]) throw Error("partition blocks overlap");
            seen[v] = true;
        }
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
        throw Error("partition does not cover all vertices");
    for (auto [u, v] : rep.graph.edges()) {
        std::complex<double> ip = rep.vectors[u].dot(rep.vectors[v]);
        if (std::abs(ip) > 1e-10)
            throw Error("representation vectors on edge (" + rep.graph.vertex(u) + ", " +
                        rep.graph.vertex(v) + ") are not orthogonal");
    }
    Hypergraph h = hypergraph(ch);
    for (const auto& e : h.edges)
        for (size_t i = 0; i < e.size(); ++i)
            for (size_t j = i + 1; j < e.size(); ++j)
                if (!rep.graph.has_edge(e[i], e[j]))
                    throw Error("channel hyperedge is not a clique: " + rep.graph.vertex(e[i]) +
                                ", " + rep.graph.vertex(e[j]));

    // rank-d maximally entangled state as an explicit d^2 vector
    StateVector phi = StateVector::Zero(d * d);
    for (int j = 0; j < d; ++j) phi[j * d + j] = 1.0 / std::sqrt(static_cast<double>(d));

    double worst = 0;
    for (const auto& clique : partition) {
        for (int x : clique) {
            // Alice projects her half onto the conjugated vector; Bob's
            // unnormalised residual is <u|_A phi
            StateVector u = rep.vectors[x].conjugate();
            StateVector bob = StateVector::Zero(d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) bob[j] += std::conj(u[i]) * phi[i * d + j];
            double p_outcome = bob.squaredNorm();
            if (std::abs(p_outcome - 1.0 / d) > 1e-9)
                throw Error("unexpected measurement statistics in the partition protocol");
            bob /= std::sqrt(p_outcome);
            for (int y = 0; y < ch.num_outputs(); ++y) {
                if (ch.entry(y, x) == 0) continue;
                // Bob measures the clique projectors of e_y; decoding fails
                // when the outcome is not x
                double p_correct = std::norm(rep.vectors[x].dot(bob));
                worst = std::max(worst, 1.0 - p_correct);
            }
        }
    }
    return worst;
}

std::vector<std::vector<ComplexMatrix>> partition_code_betas(
    const OrthRep& rep, const std::vector<std::vector<int>>& partition) {
    const int n = rep.graph.size();
    const int d = rep.vectors.empty() ? 0 : static_cast<int>(rep.vectors[0].size());
    std::vector<std::vector<ComplexMatrix>> betas(
        partition.size(), std::vector<ComplexMatrix>(n, ComplexMatrix::Zero(d, d)));
    for (size_t z = 0; z < partition.size(); ++z)
        for (int x : partition[z])
            betas[z][x] = rep.vectors[x] * rep.vectors[x].adjoint() / static_cast<double>(d);
    return betas;
}

SeCodeCheck verify_se_code(const std::vector<std::vector<ComplexMatrix>>& betas,
                           const Channel& ch, double tol) {
    if (betas.empty()) return {false, "no messages"};
    const size_t c = betas.size();
    const int nx = ch.num_inputs();
    for (const auto& row : betas)
        if (static_cast<int>(row.size()) != nx)
            return {false, "betas must be indexed by (message, channel input)"};
    for (const auto& row : betas)
        for (const auto& b : row) {
            if ((ComplexMatrix(b - b.adjoint())).norm() > tol)
                return {false, "a beta is not Hermitian"};
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(b);
            if (eig.eigenvalues().minCoeff() < -tol)
                return {false, "a beta has a negative eigenvalue"};
        }
    ComplexMatrix rho = ComplexMatrix::Zero(betas[0][0].rows(), betas[0][0].cols());
    for (int x = 0; x < nx; ++x) rho += betas[0][x];
    for (size_t z = 1; z < c; ++z) {
        ComplexMatrix sum = ComplexMatrix::Zero(rho.rows(), rho.cols());
        for (int x = 0; x < nx; ++x) sum += betas[z][x];
        if ((sum - rho).norm() > tol)
            return {false,
                    "partial sums differ between messages " + std::to_string(z + 1) + " and 1"};
    }
    // overlaps must vanish on confusable pairs, equal inputs included
    for (size_t z = 0; z < c; ++z)
        for (size_t zp = 0; zp < c; ++zp) {
            if (z == zp) continue;
            for (int x = 0; x < nx; ++x)
                for (int xp = 0; xp < nx; ++xp) {
                    if (!ch.confusable(x, xp)) continue;
                    std::complex<double> ov = (betas[z][x] * betas[zp][xp]).trace();
                    if (std::abs(ov) > tol)
                        return {false, "overlap on confusable inputs " + ch.inputs()[x] + ", " +
                                           ch.inputs()[xp]};
                }
        }
    return {true, ""};
}

SeBounds se_capacity_bounds(const Channel& ch, long certified_code_size, double tol) {
    SeBounds out;
    Graph g = confusability_graph(ch);
    out.lower = std::max<long>(independence_number(g).size, certified_code_size);
    // the SDP residual tolerance is not a value tolerance: solve two orders
    // tighter so the 10*tol floor margin absorbs the value error
    ThetaResult th = lovasz_theta(g, std::max(1e-7, tol / 100));
    out.theta = th.value;
    out.near_integer = std::abs(th.value - std::round(th.value)) < 10 * tol;
    out.upper = static_cast<long>(std::floor(th.value + 10 * tol));
    return out;
}

std::string basis_set_to_json(const BasisSet& bs) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["dimension"] = bs.dimension();
    ordered_json bases = ordered_json::array();
    for (const auto& basis : bs.bases()) {
        ordered_json b = ordered_json::array();
        for (const auto& vec : basis) {
            ordered_json v = ordered_json::array();
            for (const auto& c : vec.coords) v.push_back(to_string(c));
            b.push_back(std::move(v));
        }
        bases.push_back(std::move(b));
    }
    j["bases"] = std::move(bases);
    return j.dump(2);
}

BasisSet basis_set_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Error(std::string("basis set JSON parse error: ") + e.what());
    }
    if (!j.contains("dimension") || !j.contains("bases"))
        throw Error("basis set JSON needs dimension and bases");
    int d = j["dimension"].get<int>();
    std::vector<std::vector<ExactVector>> bases;
    for (const auto& basis : j["bases"]) {
        std::vector<ExactVector> vecs;
        for (const auto& vec : basis) {
            std::vector<GaussianRational> coords;
            for (const auto& cell : vec) coords.push_back(parse_gaussian(cell.get<std::string>()));
            vecs.push_back(ExactVector(std::move(coords)));
        }
        bases.push_back(std::move(vecs));
    }
    return BasisSet(d, std::move(bases));
}

} // namespace zecap
