#pragma once

#include <vector>

#include "extlab/errors.hpp"

namespace extlab {

// Uniform quadrature grid on [0,1] (or [0,1]^2 as a tensor product) with
// composite-trapezoid weights. The weight vector defines the discrete L2
// inner product used everywhere else.
class Grid {
public:
    static Grid interval(int n);  // n nodes, x_i = i/(n-1)
    static Grid square(int n);    // n nodes per axis, row-major (ix, iy)

    int dimension() const { return dim_; }
    int nodes_per_axis() const { return n_; }
    int size() const { return static_cast<int>(weights_.size()); }
    double spacing() const { return 1.0 / (n_ - 1); }

    // 1-D coordinates (dimension 1 only).
    const std::vector<double>& nodes() const { return axis_; }
    double node(int i) const { return axis_[i]; }

    // Flattened coordinates of point i; for dimension 1 the y slot is unused.
    double x_of(int i) const { return dim_ == 1 ? axis_[i] : axis_[i / n_]; }
    double y_of(int i) const { return dim_ == 1 ? 0.0 : axis_[i % n_]; }

    const std::vector<double>& weights() const { return weights_; }
    double weight(int i) const { return weights_[i]; }

    bool operator==(const Grid& other) const {
        return dim_ == other.dim_ && n_ == other.n_;
    }

private:
    Grid(int dim, int n);

    int dim_ = 1;
    int n_ = 0;
    std::vector<double> axis_;     // per-axis coordinates
    std::vector<double> weights_;  // flattened (tensor-product in 2-D)
};

}  // namespace extlab
