#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "extlab/linear_map.hpp"

namespace extlab {

// Discrete L2 inner product sum_i w_i f_i conj(g_i).
cdouble quadrature_inner(const Grid& g, const Eigen::VectorXcd& f, const Eigen::VectorXcd& h);
double quadrature_norm(const Grid& g, const Eigen::VectorXcd& f);

// sum_i w_i f(x_i); the quadrature functional itself.
cdouble quadrature(const Grid& g, const GridFunction& f);

// Hilbert adjoint in the map's own inner product. Grid basis:
// A^dag = W^-1 A^H W; orthonormal coefficient basis: plain conjugate
// transpose. Satisfies <A f, g>_W = <f, A^dag g>_W exactly.
LinearMap weighted_adjoint(const LinearMap& a);

// Operator 2-norm of A A^dag - A^dag A measured in the map's inner product.
// Computed from the weight-similarity transform A~ = W^(1/2) A W^(-1/2),
// whose commutator A~ A~^H - A~^H A~ is Hermitian; the norm is its largest
// absolute eigenvalue, i.e. the largest singular value.
double commutator_norm(const LinearMap& a);

// Largest singular value (full SVD).
double operator_norm(const LinearMap& a);

// Number of singular values above rel_tol * s_max.
int numerical_rank(const Eigen::MatrixXcd& m, double rel_tol = 1e-8);

struct EigenPair {
    cdouble value;
    Eigen::VectorXcd vector;
    double residual;  // |A v - lambda v| / |v| in the map's norm
};

struct EigenDecomposition {
    std::vector<EigenPair> pairs;  // sorted by ascending |lambda|
    double trace_defect;           // |sum lambda - tr A| / (1 + |tr A|)
    double residual_tol = 1e-8;

    // Index of the first pair whose residual exceeds the tolerance.
    std::optional<int> first_bad() const;
};

// Full non-Hermitian eigendecomposition. Throws NumericError when the QR
// iteration fails to converge, naming the offending index.
EigenDecomposition eigenpairs(const LinearMap& a, double residual_tol = 1e-8);

}  // namespace extlab
