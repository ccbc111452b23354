#include "extlab/kernels.hpp"

#include "extlab/errors.hpp"

namespace extlab::kernels {

namespace {

// Column-major saxpy ordering: for fixed output column j, accumulate
// c(:,j) += a(:,k) b(k,j). The k loop is sequential, so the floating-point
// order per element does not depend on the thread count.
inline void matmul_columns(const Matrix& a, const Matrix& b, Matrix& c, Eigen::Index j) {
    const Eigen::Index m = a.rows();
    const Eigen::Index kk = a.cols();
    cdouble* cj = c.col(j).data();
    for (Eigen::Index i = 0; i < m; ++i) cj[i] = cdouble(0.0);
    for (Eigen::Index k = 0; k < kk; ++k) {
        const cdouble bkj = b(k, j);
        if (bkj == cdouble(0.0)) continue;
        const cdouble* ak = a.col(k).data();
        for (Eigen::Index i = 0; i < m; ++i) cj[i] += ak[i] * bkj;
    }
}

}  // namespace

void matmul_serial(const Matrix& a, const Matrix& b, Matrix& c) {
    if (a.cols() != b.rows()) throw DimensionError("matmul: inner dimensions differ");
    c.resize(a.rows(), b.cols());
    for (Eigen::Index j = 0; j < b.cols(); ++j) matmul_columns(a, b, c, j);
}

void matmul(const Matrix& a, const Matrix& b, Matrix& c) {
    if (a.cols() != b.rows()) throw DimensionError("matmul: inner dimensions differ");
    c.resize(a.rows(), b.cols());
    const Eigen::Index n = b.cols();
#pragma omp parallel for schedule(static)
    for (Eigen::Index j = 0; j < n; ++j) matmul_columns(a, b, c, j);
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    Matrix c;
    matmul(a, b, c);
    return c;
}

void nystrom_assemble_serial(const Grid& g, const Kernel1D& k, Matrix& a) {
    const int n = g.size();
    a.resize(n, n);
    for (int j = 0; j < n; ++j) {
        const double wj = g.weight(j);
        const double xj = g.node(j);
        for (int i = 0; i < n; ++i) a(i, j) = wj * k(g.node(i), xj);
    }
}

void nystrom_assemble(const Grid& g, const Kernel1D& k, Matrix& a) {
    const int n = g.size();
    a.resize(n, n);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < n; ++j) {
        const double wj = g.weight(j);
        const double xj = g.node(j);
        for (int i = 0; i < n; ++i) a(i, j) = wj * k(g.node(i), xj);
    }
}

void scale_rows_cols_serial(const Eigen::VectorXd& s, const Matrix& a, const Eigen::VectorXd& t,
                            Matrix& b) {
    if (s.size() != a.rows() || t.size() != a.cols())
        throw DimensionError("scale_rows_cols: scale vector sizes differ from matrix");
    b.resize(a.rows(), a.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i) b(i, j) = s(i) * a(i, j) * t(j);
}

void scale_rows_cols(const Eigen::VectorXd& s, const Matrix& a, const Eigen::VectorXd& t, Matrix& b) {
    if (s.size() != a.rows() || t.size() != a.cols())
        throw DimensionError("scale_rows_cols: scale vector sizes differ from matrix");
    b.resize(a.rows(), a.cols());
    const Eigen::Index n = a.cols();
#pragma omp parallel for schedule(static)
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i) b(i, j) = s(i) * a(i, j) * t(j);
}

}  // namespace extlab::kernels
