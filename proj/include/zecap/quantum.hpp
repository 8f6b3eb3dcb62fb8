#pragma once

#include "zecap/capacity.hpp"
#include "zecap/channel.hpp"
#include "zecap/hypergraph.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace zecap {

using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

// Complex number with exact rational real and imaginary parts; enough for
// orthogonality tests on Kochen-Specker vectors, whose raw entries come
// from {0, +-1, +-i} before normalisation.
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(int v) : re(v) {} // NOLINT(google-explicit-constructor)
    GaussianRational(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}

    GaussianRational conj() const { return {re, -im}; }
    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    bool is_zero() const { return re == 0 && im == 0; }
};

std::string to_string(const GaussianRational& v);
GaussianRational parse_gaussian(std::string_view text);

// Unnormalised exact coordinates plus the squared norm; the float view
// divides by sqrt(norm2), keeping normalisation symbolic.
struct ExactVector {
    std::vector<GaussianRational> coords;
    Rational norm2{0};

    explicit ExactVector(std::vector<GaussianRational> c);
    int dim() const { return static_cast<int>(coords.size()); }
    StateVector to_float() const;
};

// exact Hermitian inner product <u, v>; orthogonality is an exact zero test
GaussianRational inner(const ExactVector& u, const ExactVector& v);

// q complete orthonormal bases of C^d in exact form
class BasisSet {
public:
    BasisSet(int dimension, std::vector<std::vector<ExactVector>> bases);

    int dimension() const { return dim_; }
    int count() const { return static_cast<int>(bases_.size()); }
    const std::vector<std::vector<ExactVector>>& bases() const { return bases_; }
    const ExactVector& vec(int basis, int j) const { return bases_[basis][j]; }

private:
    int dim_;
    std::vector<std::vector<ExactVector>> bases_;
};

BasisSet basis_set_from_json(const std::string& text);
std::string basis_set_to_json(const BasisSet& bs);

// the six-basis set in dimension 4 assembled from the 24 Peres rays
BasisSet peres_six_bases();

struct KsCheck {
    bool is_ks = false;
    // when not KS: one vector per basis, pairwise non-orthogonal
    std::vector<int> witness;
};

// brute force over all d^q transversals (guard 1e7)
KsCheck is_ks_set(const BasisSet& bs);

// orthonormal representation: vertex -> unit vector, adjacent vertices
// orthogonal
struct OrthRep {
    Graph graph;
    std::vector<StateVector> vectors;
};

struct KsChannelResult {
    Channel channel;       // uniform over the maximal cliques through each input
    Graph graph;           // orthogonality graph on the q*d vectors
    OrthRep rep;
    std::vector<std::vector<int>> partition; // the q bases as cliques
};

KsChannelResult ks_channel(const BasisSet& bs);

struct ThetaResult {
    double value = 0;
    Eigen::MatrixXd witness;
    long iterations = 0;
    bool converged = false;
    double primal_residual = 0;
    double dual_residual = 0;
};

// Lovasz theta by ADMM on max{ sum_ij B_ij : B psd, tr B = 1, B_ij = 0 on
// edges }; deterministic (B starts at I/n), witness PSD by construction
ThetaResult lovasz_theta(const Graph& g, double tol = 1e-6, long max_iter = 200000);

// max misdecoding probability of the clique-partition protocol: Alice
// measures her half of a rank-d maximally entangled state in a conjugated
// partition basis, the channel reveals a clique, Bob measures it
double simulate_partition_protocol(const OrthRep& rep,
                                   const std::vector<std::vector<int>>& partition,
                                   const Channel& ch);

// betas induced by the partition protocol: (1/d) |G(x)><G(x)| inside the
// clique of z, zero elsewhere
std::vector<std::vector<ComplexMatrix>> partition_code_betas(
    const OrthRep& rep, const std::vector<std::vector<int>>& partition);

struct SeCodeCheck {
    bool ok = false;
    std::string reason;
};

// certifies a size-c zero-error code under shared entanglement: equal
// partial sums across messages and vanishing overlaps on confusable input
// pairs (including equal inputs)
SeCodeCheck verify_se_code(const std::vector<std::vector<ComplexMatrix>>& betas,
                           const Channel& ch, double tol = 1e-9);

struct SeBounds {
    long lower = 0;
    long upper = 0;
    double theta = 0;
    bool near_integer = false;
};

// lower: independence number, improved by a verified code size when given;
// upper: floor of theta with a 10*tol robustness margin
SeBounds se_capacity_bounds(const Channel& ch, long certified_code_size = 0, double tol = 1e-4);

} // namespace zecap
