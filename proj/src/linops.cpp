#include "extlab/linops.hpp"

#include <algorithm>
#include <cmath>

#include "extlab/kernels.hpp"

namespace extlab {

GridFunction sample_on_grid(const Grid& g, const ExpSum& f) {
    GridFunction out;
    out.values.resize(g.size());
    for (int i = 0; i < g.size(); ++i) out.values(i) = f.eval(g.node(i));
    out.form1 = f;
    return out;
}

cdouble quadrature_inner(const Grid& g, const Eigen::VectorXcd& f, const Eigen::VectorXcd& h) {
    if (f.size() != g.size() || h.size() != g.size())
        throw DimensionError("quadrature_inner: vector size differs from grid size");
    cdouble s = 0.0;
    for (int i = 0; i < g.size(); ++i) s += g.weight(i) * f(i) * std::conj(h(i));
    return s;
}

double quadrature_norm(const Grid& g, const Eigen::VectorXcd& f) {
    if (f.size() != g.size())
        throw DimensionError("quadrature_norm: vector size differs from grid size");
    double s = 0.0;
    for (int i = 0; i < g.size(); ++i) s += g.weight(i) * std::norm(f(i));
    return std::sqrt(s);
}

cdouble quadrature(const Grid& g, const GridFunction& f) {
    if (f.size() != g.size()) throw DimensionError("quadrature: sample count differs from grid size");
    cdouble s = 0.0;
    for (int i = 0; i < g.size(); ++i) s += g.weight(i) * f.values(i);
    return s;
}

LinearMap weighted_adjoint(const LinearMap& a) {
    if (!a.square()) throw DimensionError("weighted_adjoint: map is not square");
    LinearMap out;
    out.basis = a.basis;
    out.weights = a.weights;
    if (a.basis == Basis::FourierCoefficients) {
        out.matrix = a.matrix.adjoint();
        return out;
    }
    const Eigen::VectorXd& w = a.weights;
    Eigen::VectorXd winv = w.cwiseInverse();
    kernels::scale_rows_cols(winv, a.matrix.adjoint(), w, out.matrix);
    return out;
}

namespace {

// W^(1/2) A W^(-1/2); identity transform in an orthonormal basis.
Eigen::MatrixXcd weight_similarity(const LinearMap& a) {
    if (a.basis == Basis::FourierCoefficients) return a.matrix;
    Eigen::VectorXd ws = a.weights.cwiseSqrt();
    Eigen::VectorXd wsinv = ws.cwiseInverse();
    Eigen::MatrixXcd out;
    kernels::scale_rows_cols(ws, a.matrix, wsinv, out);
    return out;
}

}  // namespace

double commutator_norm(const LinearMap& a) {
    if (!a.square()) throw DimensionError("commutator_norm: map is not square");
    Eigen::MatrixXcd t = weight_similarity(a);
    Eigen::MatrixXcd th = t.adjoint();
    Eigen::MatrixXcd c = kernels::matmul(t, th) - kernels::matmul(th, t);
    c = 0.5 * (c + c.adjoint().eval());  // exact Hermitian up to rounding
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(c, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericError("commutator_norm: eigensolver failed");
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

double operator_norm(const LinearMap& a) {
    Eigen::MatrixXcd t = weight_similarity(a);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(t);
    return svd.singularValues()(0);
}

int numerical_rank(const Eigen::MatrixXcd& m, double rel_tol) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * s(0)) ++r;
    return r;
}

EigenDecomposition eigenpairs(const LinearMap& a, double residual_tol) {
    if (!a.square()) throw DimensionError("eigenpairs: map is not square");
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a.matrix, /*computeEigenvectors=*/true);
    if (es.info() != Eigen::Success)
        throw NumericError("eigenpairs: QR iteration failed to converge");

    const int n = a.rows();
    const bool weighted = a.basis == Basis::GridSamples;
    auto vec_norm = [&](const Eigen::VectorXcd& v) {
        if (!weighted) return v.norm();
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += a.weights(i) * std::norm(v(i));
        return std::sqrt(s);
    };

    EigenDecomposition out;
    out.pairs.resize(n);
    for (int i = 0; i < n; ++i) {
        EigenPair& p = out.pairs[i];
        p.value = es.eigenvalues()(i);
        p.vector = es.eigenvectors().col(i);
        Eigen::VectorXcd r = a.matrix * p.vector - p.value * p.vector;
        p.residual = vec_norm(r) / vec_norm(p.vector);
    }
    std::sort(out.pairs.begin(), out.pairs.end(), [](const EigenPair& x, const EigenPair& y) {
        double ax = std::abs(x.value), ay = std::abs(y.value);
        if (ax != ay) return ax < ay;
        if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
        return x.value.imag() < y.value.imag();
    });

    cdouble sum = 0.0;
    for (const EigenPair& p : out.pairs) sum += p.value;
    cdouble tr = a.matrix.trace();
    out.trace_defect = std::abs(sum - tr) / (1.0 + std::abs(tr));
    out.residual_tol = residual_tol;
    return out;
}

std::optional<int> EigenDecomposition::first_bad() const {
    for (size_t i = 0; i < pairs.size(); ++i)
        if (pairs[i].residual > residual_tol) return static_cast<int>(i);
    return std::nullopt;
}

}  // namespace extlab
