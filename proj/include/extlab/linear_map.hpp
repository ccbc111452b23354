#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <type_traits>
#include <utility>

#include "extlab/errors.hpp"
#include "extlab/exp_sum.hpp"
#include "extlab/grid.hpp"

namespace extlab {

enum class Basis {
    GridSamples,          // vector entries are values at grid nodes, weighted inner product
    FourierCoefficients,  // entries are coefficients in an orthonormal basis
};

// Dense complex matrix together with the basis it acts in. In the
// grid-samples basis the weight vector of the quadrature rule defines the
// inner product; in an orthonormal coefficient basis the weights are all 1.
struct LinearMap {
    Eigen::MatrixXcd matrix;
    Basis basis = Basis::GridSamples;
    Eigen::VectorXd weights;  // size = matrix.rows() for GridSamples, empty otherwise

    int rows() const { return static_cast<int>(matrix.rows()); }
    int cols() const { return static_cast<int>(matrix.cols()); }
    bool square() const { return matrix.rows() == matrix.cols(); }

    static LinearMap on_grid(Eigen::MatrixXcd m, const Grid& g) {
        LinearMap map;
        map.matrix = std::move(m);
        map.basis = Basis::GridSamples;
        map.weights = Eigen::Map<const Eigen::VectorXd>(g.weights().data(), g.size());
        if (map.matrix.rows() != g.size())
            throw DimensionError("LinearMap: matrix rows differ from grid size");
        return map;
    }

    static LinearMap on_coefficients(Eigen::MatrixXcd m) {
        LinearMap map;
        map.matrix = std::move(m);
        map.basis = Basis::FourierCoefficients;
        return map;
    }
};

// Sampled function together with an optional exact exponential-sum form.
// `values` are node samples in the grid basis and basis coefficients in the
// Fourier basis.
struct GridFunction {
    Eigen::VectorXcd values;
    std::optional<ExpSum> form1;   // 1-D closed form
    std::optional<ExpSum2> form2;  // 2-D closed form

    bool has_form() const { return form1.has_value() || form2.has_value(); }
    int size() const { return static_cast<int>(values.size()); }
};

// Samples a 1-D closed form on a grid; the stored samples agree with the
// form at the nodes by construction.
GridFunction sample_on_grid(const Grid& g, const ExpSum& f);

// Samples an arbitrary evaluator without attaching a closed form.
template <typename F>
    requires(!std::is_same_v<std::remove_cvref_t<F>, ExpSum>)
GridFunction sample_on_grid(const Grid& g, F&& f) {
    GridFunction out;
    out.values.resize(g.size());
    for (int i = 0; i < g.size(); ++i) out.values(i) = f(g.node(i));
    return out;
}

}  // namespace extlab
