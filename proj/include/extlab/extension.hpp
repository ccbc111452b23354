#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "extlab/linops.hpp"
#include "extlab/perturbation.hpp"
#include "extlab/provider.hpp"

namespace extlab {

/*
 * The abstract machinery: inverses of all boundary correct extensions are
 * L^-1 = L_S^-1 + K, the domain is cut out by Gamma_{L_S}(I - K L-hat), and
 * the two criteria (domain equality and the adjoint-swap condition on K)
 * are evaluated as numerical residuals over a finite test basis of D(L_S).
 */

struct AdmissibilityResult {
    bool ok = true;
    int failing_index = -1;  // index into range then weight functions
    double worst = 0.0;
};

// Symbolic check at 32 random points: L-hat r_i = 0 and M-hat w_j = 0.
AdmissibilityResult check_admissibility(const ExampleProvider& p, const FiniteRankPerturbation& k,
                                        double tol = 1e-12);

// K f and K* g using closed-form pairings when available.
GridFunction apply_perturbation(const ExampleProvider& p, const FiniteRankPerturbation& k,
                                const GridFunction& f);
GridFunction apply_perturbation_adjoint(const ExampleProvider& p, const FiniteRankPerturbation& k,
                                        const GridFunction& g);

// Dense matrix of K in the provider basis.
Eigen::MatrixXcd perturbation_matrix(const ExampleProvider& p, const FiniteRankPerturbation& k);

// Matrix of L^-1 = L_S^-1 + K. Throws AdmissibilityError on an inadmissible K.
LinearMap assemble_inverse(const ExampleProvider& p, const FiniteRankPerturbation& k);
LinearMap assemble_inverse(const ExampleProvider& p, const FiniteRankPerturbation& k, const Grid& g);

// Discrete route for Gamma_{L_S} u = u - L_S^-1 (L-hat u). The exact route
// is the provider's gamma_closed.
GridFunction gamma_apply(const ExampleProvider& p, const GridFunction& u);

// || (I - K L-hat)(I + K L-hat) - I || over the domain test basis. Vanishes
// identically because (K L-hat)^2 = 0.
double involution_residual(const ExampleProvider& p, const FiniteRankPerturbation& k,
                           int test_count = 10);

// Boundary form of the domain-equality criterion:
// max over test v in D(L_S) of || T_{L_S}(K* M-hat - K L-hat + K* M-hat K L-hat) v ||.
// Zero iff D(L) = D(L*).
double domain_equality_residual(const ExampleProvider& p, const FiniteRankPerturbation& k,
                                int test_count = 10);

// Hilbert-Schmidt norm of L-hat K* - (M-hat K)*, computed from closed forms
// only; grid-independent. Zero iff the adjoint-swap condition holds.
double condition33_residual(const FiniteRankPerturbation& k, const ExampleProvider& p);

// Spot check of D(L) subset D(L*): u = L^-1 f, returns
// || Gamma_{L_S^*} (I - K* M-hat) u || along the discrete route.
double adjoint_domain_residual(const ExampleProvider& p, const FiniteRankPerturbation& k,
                               const GridFunction& f);

struct CriterionReport {
    bool admissibility_ok = false;
    double involution = 0.0;
    double domain_equality_residual = 0.0;
    double condition33_residual = 0.0;
    std::vector<std::pair<int, double>> commutator_norms;  // (grid size, norm)
    std::string classification;                            // normal-candidate | not-normal
    std::vector<cdouble> spectrum;
    double negative_control_norm = -1.0;  // commutator norm of the perturbed parameters
    std::string notes;
};

struct DecayWindow {
    double ratio_lo = 3.0;  // successive-norm ratios for one refinement step
    double ratio_hi = 5.0;  // ratio_hi <= 0 means "only require decrease"
};

struct ReportThresholds {
    double analytic = 1e-12;
    double domain_equality = 1e-9;
    double involution = 1e-10;
    double commutator_final = 1e-6;   // at the largest grid
    double negative_floor = 1e-2;     // perturbed run must stay above this
    DecayWindow decay;
};

using ProviderFactory = std::function<std::shared_ptr<const ExampleProvider>(int size)>;
using PerturbationBuilder = std::function<FiniteRankPerturbation(const ExampleProvider&)>;

// Runs admissibility, involution, domain equality, the closed-form condition
// residual, and the commutator refinement across `sizes`; classifies. When a
// negative builder is given, the perturbed parameters are re-run at the
// largest size as a control against vacuously small residuals.
CriterionReport normality_report(const ProviderFactory& factory, const PerturbationBuilder& build_k,
                                 const std::vector<int>& sizes, const ReportThresholds& tol = {},
                                 const PerturbationBuilder* negative_builder = nullptr);

// True when the sequence decays according to the window at every step.
bool decays_at_order(const std::vector<std::pair<int, double>>& norms, const DecayWindow& w);

}  // namespace extlab
