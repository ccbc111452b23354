#include "extlab/grid.hpp"

namespace extlab {

Grid::Grid(int dim, int n) : dim_(dim), n_(n) {
    if (n < 8) throw DimensionError("grid requires at least 8 nodes per axis");
    axis_.resize(n);
    const double h = 1.0 / (n - 1);
    for (int i = 0; i < n; ++i) axis_[i] = i * h;
    axis_.front() = 0.0;
    axis_.back() = 1.0;

    std::vector<double> w1(n, h);
    w1.front() = 0.5 * h;
    w1.back() = 0.5 * h;

    if (dim == 1) {
        weights_ = w1;
    } else {
        weights_.resize(static_cast<size_t>(n) * n);
        for (int ix = 0; ix < n; ++ix)
            for (int iy = 0; iy < n; ++iy) weights_[static_cast<size_t>(ix) * n + iy] = w1[ix] * w1[iy];
    }
}

Grid Grid::interval(int n) { return Grid(1, n); }
Grid Grid::square(int n) { return Grid(2, n); }

}  // namespace extlab
