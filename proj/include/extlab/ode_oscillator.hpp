#pragma once

#include <memory>

#include "extlab/extension.hpp"
#include "extlab/provider.hpp"

namespace extlab::ode {

/*
 * The interval example: L-hat y = y'' + y' on (0,1), M-hat y = y'' - y'.
 * The fixed extension L_N has domain y(0)+y(1) = 0, y'(0)+y'(1) = 0; its
 * inverse is the explicit kernel below. The admissible rank-2 perturbations
 * are parameterized by four complex numbers:
 *
 *   K f = int f (conj(a11) + conj(a12) e^t) dt
 *         + e^{-x} int f (conj(a21) + conj(a22) e^t) dt.
 */

struct OdeParams {
    cdouble a11{0.0}, a12{0.0}, a21{0.0}, a22{0.0};
};

// Green-type kernel of L_N^-1:
//   k(x,t) = [t < x](1 - e^{t-x}) - 1/2 + e^{1-x} e^{t-1} / (1+e).
cdouble ln_inverse_kernel(double x, double t);

class OdeProvider final : public ExampleProvider {
public:
    explicit OdeProvider(const Grid& g);

    std::string name() const override { return "ode"; }
    Basis basis() const override { return Basis::GridSamples; }
    int space_size() const override { return grid_.size(); }
    int coordinate_dimension() const override { return 1; }

    const LinearMap& base_inverse() const override { return inverse_; }
    const LinearMap& base_inverse_adjoint() const override { return inverse_adjoint_; }

    GridFunction apply_lhat(const GridFunction& u) const override;  // y'' + y'
    GridFunction apply_mhat(const GridFunction& u) const override;  // y'' - y'

    const std::vector<GridFunction>& ker_lhat_basis() const override { return ker_l_; }
    const std::vector<GridFunction>& ker_mhat_basis() const override { return ker_m_; }

    double boundary_norm(const GridFunction& u) const override;
    std::vector<GridFunction> domain_test_basis(int count) const override;

    GridFunction gamma_closed(const GridFunction& u) const override;
    GridFunction gamma_star_closed(const GridFunction& u) const override;

    cdouble inner(const GridFunction& f, const GridFunction& g) const override;
    double norm(const GridFunction& f) const override;

    const Grid& grid() const { return grid_; }

    // Boundary data (y(0), y(1), y'(0), y'(1)); closed form when available,
    // otherwise one-sided five-point order-4 stencils.
    Eigen::Vector4cd boundary_data(const GridFunction& u) const;

private:
    Grid grid_;
    LinearMap inverse_;
    LinearMap inverse_adjoint_;
    std::vector<GridFunction> ker_l_;
    std::vector<GridFunction> ker_m_;
};

std::shared_ptr<const OdeProvider> build_provider(const Grid& g);
std::shared_ptr<const OdeProvider> build_provider(int n);

// Rank-2 perturbation on the fixed bases {1, e^{-x}} / {1, e^t} with
// coefficient matrix conj(a_ij); reproduces the printed K and K* exactly.
FiniteRankPerturbation build_K(const OdeParams& a, const ExampleProvider& p);

// The four algebraic equations whose solutions give D(L) = D(L*),
// evaluated verbatim.
Eigen::Vector4cd system_residual(const OdeParams& a);

using BoundaryConditionMatrix = Eigen::Matrix<cdouble, 2, 4>;

// Expands Gamma_{L_N}(I - K L-hat) y = 0 into two linear conditions on
// (y(0), y(1), y'(0), y'(1)).
BoundaryConditionMatrix boundary_matrix(const OdeParams& a);

enum class Family { I, II, III, Other };
const char* family_name(Family f);

struct FamilyInfo {
    Family family = Family::Other;
    cdouble multiplier{0.0};  // family II: y(0) = multiplier * y(1)
};

FamilyInfo classify_family(const BoundaryConditionMatrix& b, double tol = 1e-9);

struct NewtonOutcome {
    bool converged = false;
    OdeParams params;
    double residual = 0.0;
    int iterations = 0;
};

NewtonOutcome newton_solve(const OdeParams& seed, int max_iter = 200, double tol = 1e-11);

// Converged, deduplicated solutions of the algebraic system.
std::vector<OdeParams> solve_system(const std::vector<OdeParams>& seeds);

// Parameters (a11, 0, 0, a22) whose boundary matrix matches family II with
// multiplier (a_real - i)/(a_real + i).
OdeParams match_family_II(double a_real);

struct SpectrumEntry {
    cdouble lambda;
    double residual;  // eigen-residual of the underlying inverse eigenpair
};

// Smallest-|lambda| eigenvalues of L as reciprocals of the eigenvalues of
// the assembled inverse.
std::vector<SpectrumEntry> spectrum(const OdeParams& a, const Grid& g, int count);

// Characteristic determinant: lambda is an eigenvalue of L iff the boundary
// matrix annihilates a combination of the solution basis of mu^2 + mu = lambda.
cdouble characteristic_det(const OdeParams& a, cdouble lambda);

// Newton polish of a determinant root from a starting guess.
struct RootResult {
    bool converged = false;
    cdouble root{0.0};
};
RootResult polish_characteristic_root(const OdeParams& a, cdouble guess, int max_iter = 80);

}  // namespace extlab::ode
