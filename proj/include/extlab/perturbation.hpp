#pragma once

#include <Eigen/Dense>
#include <vector>

#include "extlab/linear_map.hpp"

namespace extlab {

// Finite-rank perturbation K of the fixed inverse,
//
//   K f = sum_ij C_ij r_i <f, w_j>,
//
// with closed-form range functions r_i in Ker L-hat and weight functions
// w_j in Ker M-hat. The kernel constraints make K admissible: R(K) lies in
// Ker L-hat by construction, and R(L_0) in Ker K because <L_0 u, w> =
// <u, M-hat w> = 0.
struct FiniteRankPerturbation {
    std::vector<GridFunction> range_functions;
    std::vector<GridFunction> weight_functions;
    Eigen::MatrixXcd coefficients;  // rows index range functions, cols weights

    int rank() const { return static_cast<int>(range_functions.size()); }

    bool zero() const {
        return coefficients.size() == 0 || coefficients.cwiseAbs().maxCoeff() == 0.0;
    }

    FiniteRankPerturbation scaled(cdouble c) const {
        FiniteRankPerturbation out = *this;
        out.coefficients = c * coefficients;
        return out;
    }
};

}  // namespace extlab
