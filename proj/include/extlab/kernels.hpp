#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

#include "extlab/grid.hpp"

namespace extlab::kernels {

using cdouble = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/*
 * Dense complex kernels on the hot paths: matrix products for commutators,
 * Nystrom assembly, and the diagonal weight similarity. Each has an
 * OpenMP-parallel entry point and a serial reference used by the tests and
 * the benchmark. The parallel loops are split so that every output element
 * is written by exactly one thread with a fixed reduction order, which
 * keeps results bit-identical to the serial path.
 */

void matmul_serial(const Matrix& a, const Matrix& b, Matrix& c);
void matmul(const Matrix& a, const Matrix& b, Matrix& c);
Matrix matmul(const Matrix& a, const Matrix& b);

using Kernel1D = std::function<cdouble(double, double)>;

// Nystrom matrix of an integral kernel on a 1-D grid: A(i,j) = w_j k(x_i, x_j).
void nystrom_assemble_serial(const Grid& g, const Kernel1D& k, Matrix& a);
void nystrom_assemble(const Grid& g, const Kernel1D& k, Matrix& a);

// b = diag(s) a diag(t), elementwise b(i,j) = s_i a(i,j) t_j.
void scale_rows_cols_serial(const Eigen::VectorXd& s, const Matrix& a, const Eigen::VectorXd& t,
                            Matrix& b);
void scale_rows_cols(const Eigen::VectorXd& s, const Matrix& a, const Eigen::VectorXd& t, Matrix& b);

}  // namespace extlab::kernels
