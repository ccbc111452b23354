#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "extlab/linear_map.hpp"
#include "extlab/perturbation.hpp"

namespace extlab {

/*
 * A concrete example hands the abstract machinery everything it needs about
 * one minimal/maximal operator pair: the fixed inverse L_S^-1 and its
 * adjoint, the differential actions L-hat and M-hat, the kernels of the
 * maximal operators, the boundary operator T_{L_S}, and a supply of test
 * functions from D(L_S).
 *
 * Functions carrying a closed form are operated on exactly; the sample
 * (or coefficient) path is the discretized route.
 */
class ExampleProvider {
public:
    virtual ~ExampleProvider() = default;

    virtual std::string name() const = 0;
    virtual Basis basis() const = 0;
    virtual int space_size() const = 0;

    virtual const LinearMap& base_inverse() const = 0;          // L_S^-1
    virtual const LinearMap& base_inverse_adjoint() const = 0;  // (L_S^*)^-1

    virtual GridFunction apply_lhat(const GridFunction& u) const = 0;
    virtual GridFunction apply_mhat(const GridFunction& u) const = 0;

    virtual const std::vector<GridFunction>& ker_lhat_basis() const = 0;
    virtual const std::vector<GridFunction>& ker_mhat_basis() const = 0;

    // Norm of the boundary-functional vector T_{L_S} u.
    virtual double boundary_norm(const GridFunction& u) const = 0;

    // At least `count` functions in D(L_S) with independent boundary data,
    // all with closed forms.
    virtual std::vector<GridFunction> domain_test_basis(int count) const = 0;

    // Gamma projections evaluated through the closed boundary formulas.
    virtual GridFunction gamma_closed(const GridFunction& u) const = 0;
    virtual GridFunction gamma_star_closed(const GridFunction& u) const = 0;

    // L2 pairing; exact when both operands carry closed forms.
    virtual cdouble inner(const GridFunction& f, const GridFunction& g) const = 0;
    virtual double norm(const GridFunction& f) const = 0;

    // Random evaluation points for symbolic zero checks, x (and y) in [0,1].
    virtual int coordinate_dimension() const = 0;

    // Providers whose assembled inverse has exploitable structure may return
    // the commutator norm without forming the dense matrix. The dense route
    // must agree wherever both are feasible; tests enforce that.
    virtual std::optional<double> structured_commutator_norm(const FiniteRankPerturbation&) const {
        return std::nullopt;
    }
};

}  // namespace extlab
