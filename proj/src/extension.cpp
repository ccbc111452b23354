#include "extlab/extension.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace extlab {

namespace {

// Fixed evaluation points for the symbolic zero checks.
std::vector<std::pair<double, double>> random_points(int count, int dim) {
    std::mt19937_64 rng(0x5eedULL);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::pair<double, double>> pts(count);
    for (auto& p : pts) {
        p.first = u(rng);
        p.second = dim == 2 ? u(rng) : 0.0;
    }
    return pts;
}

double eval_abs(const GridFunction& f, double x, double y) {
    if (f.form1) return std::abs(f.form1->eval(x));
    if (f.form2) return std::abs(f.form2->eval(x, y));
    throw UnsupportedRepresentationError("symbolic check requires a closed form");
}

void require_forms(const FiniteRankPerturbation& k) {
    for (const auto& r : k.range_functions)
        if (!r.has_form())
            throw UnsupportedRepresentationError("perturbation range function lacks a closed form");
    for (const auto& w : k.weight_functions)
        if (!w.has_form())
            throw UnsupportedRepresentationError("perturbation weight function lacks a closed form");
}

double operator_scale(const FiniteRankPerturbation& k) {
    return k.coefficients.size() > 0 ? k.coefficients.cwiseAbs().maxCoeff() : 0.0;
}

GridFunction combine(const ExampleProvider& p, const std::vector<GridFunction>& basis,
                     const Eigen::VectorXcd& coef) {
    GridFunction out;
    out.values = Eigen::VectorXcd::Zero(p.space_size());
    bool all1 = true, all2 = true;
    for (const auto& b : basis) {
        all1 = all1 && b.form1.has_value();
        all2 = all2 && b.form2.has_value();
    }
    if (all1 && !basis.empty()) {
        ExpSum f;
        for (size_t i = 0; i < basis.size(); ++i) f = f + basis[i].form1->scaled(coef(i));
        out.form1 = f;
    } else if (all2 && !basis.empty()) {
        ExpSum2 f;
        for (size_t i = 0; i < basis.size(); ++i) f = f + basis[i].form2->scaled(coef(i));
        out.form2 = f;
    }
    for (size_t i = 0; i < basis.size(); ++i) out.values += coef(i) * basis[i].values;
    return out;
}

}  // namespace

AdmissibilityResult check_admissibility(const ExampleProvider& p, const FiniteRankPerturbation& k,
                                        double tol) {
    AdmissibilityResult res;
    const auto pts = random_points(32, p.coordinate_dimension());
    int idx = 0;
    for (const auto& r : k.range_functions) {
        GridFunction lr = p.apply_lhat(r);
        for (const auto& [x, y] : pts) res.worst = std::max(res.worst, eval_abs(lr, x, y));
        if (res.worst > tol) {
            res.ok = false;
            res.failing_index = idx;
            return res;
        }
        ++idx;
    }
    for (const auto& w : k.weight_functions) {
        GridFunction mw = p.apply_mhat(w);
        for (const auto& [x, y] : pts) res.worst = std::max(res.worst, eval_abs(mw, x, y));
        if (res.worst > tol) {
            res.ok = false;
            res.failing_index = idx;
            return res;
        }
        ++idx;
    }
    return res;
}

GridFunction apply_perturbation(const ExampleProvider& p, const FiniteRankPerturbation& k,
                                const GridFunction& f) {
    const int m = k.rank();
    Eigen::VectorXcd pair(m);
    for (int j = 0; j < m; ++j) pair(j) = p.inner(f, k.weight_functions[j]);
    Eigen::VectorXcd coef = k.coefficients * pair;
    return combine(p, k.range_functions, coef);
}

GridFunction apply_perturbation_adjoint(const ExampleProvider& p, const FiniteRankPerturbation& k,
                                        const GridFunction& g) {
    const int m = k.rank();
    Eigen::VectorXcd pair(m);
    for (int i = 0; i < m; ++i) pair(i) = p.inner(g, k.range_functions[i]);
    Eigen::VectorXcd coef = k.coefficients.adjoint() * pair;
    return combine(p, k.weight_functions, coef);
}

Eigen::MatrixXcd perturbation_matrix(const ExampleProvider& p, const FiniteRankPerturbation& k) {
    const int n = p.space_size();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
    const LinearMap& base = p.base_inverse();
    for (int i = 0; i < k.rank(); ++i) {
        for (int j = 0; j < k.rank(); ++j) {
            const cdouble c = k.coefficients(i, j);
            if (c == cdouble(0.0)) continue;
            Eigen::RowVectorXcd row = k.weight_functions[j].values.conjugate().transpose();
            if (base.basis == Basis::GridSamples)
                row = row.cwiseProduct(base.weights.transpose().cast<cdouble>());
            out.noalias() += c * (k.range_functions[i].values * row);
        }
    }
    return out;
}

LinearMap assemble_inverse(const ExampleProvider& p, const FiniteRankPerturbation& k) {
    AdmissibilityResult adm = check_admissibility(p, k);
    if (!adm.ok) {
        std::ostringstream os;
        os << "assemble_inverse: perturbation function " << adm.failing_index
           << " is not in the required kernel (|residual| = " << adm.worst << ")";
        throw AdmissibilityError(os.str(), adm.failing_index);
    }
    const LinearMap& base = p.base_inverse();
    LinearMap out;
    out.basis = base.basis;
    out.weights = base.weights;
    out.matrix = base.matrix + perturbation_matrix(p, k);
    return out;
}

LinearMap assemble_inverse(const ExampleProvider& p, const FiniteRankPerturbation& k, const Grid& g) {
    if (g.size() != p.space_size())
        throw DimensionError("assemble_inverse: grid does not match the provider's base inverse");
    return assemble_inverse(p, k);
}

GridFunction gamma_apply(const ExampleProvider& p, const GridFunction& u) {
    GridFunction lu = p.apply_lhat(u);
    GridFunction out;
    out.values = u.values - p.base_inverse().matrix * lu.values;
    return out;
}

double involution_residual(const ExampleProvider& p, const FiniteRankPerturbation& k,
                           int test_count) {
    require_forms(k);
    double worst = 0.0;
    for (const GridFunction& v : p.domain_test_basis(test_count)) {
        GridFunction w1_k = apply_perturbation(p, k, p.apply_lhat(v));
        GridFunction w1 = v;
        w1.values += w1_k.values;
        if (v.form1 && w1_k.form1) w1.form1 = *v.form1 + *w1_k.form1;
        if (v.form2 && w1_k.form2) w1.form2 = *v.form2 + *w1_k.form2;

        GridFunction w2_k = apply_perturbation(p, k, p.apply_lhat(w1));
        GridFunction diff;  // (I - K L-hat)(I + K L-hat) v - v = (w1 - K L-hat w1) - v
        diff.values = w1.values - w2_k.values - v.values;
        if (w1.form1 && w2_k.form1 && v.form1) diff.form1 = *w1.form1 - *w2_k.form1 - *v.form1;
        if (w1.form2 && w2_k.form2 && v.form2) diff.form2 = *w1.form2 - *w2_k.form2 - *v.form2;
        worst = std::max(worst, p.norm(diff) / p.norm(v));
    }
    return worst;
}

double domain_equality_residual(const ExampleProvider& p, const FiniteRankPerturbation& k,
                                int test_count) {
    require_forms(k);
    double worst = 0.0;
    for (const GridFunction& v : p.domain_test_basis(test_count)) {
        GridFunction t1 = apply_perturbation_adjoint(p, k, p.apply_mhat(v));
        GridFunction t2 = apply_perturbation(p, k, p.apply_lhat(v));
        GridFunction t3 = apply_perturbation_adjoint(p, k, p.apply_mhat(t2));
        GridFunction f;
        f.values = t1.values - t2.values + t3.values;
        if (t1.form1 && t2.form1 && t3.form1) f.form1 = *t1.form1 - *t2.form1 + *t3.form1;
        if (t1.form2 && t2.form2 && t3.form2) f.form2 = *t1.form2 - *t2.form2 + *t3.form2;
        worst = std::max(worst, p.boundary_norm(f));
    }
    return worst;
}

double condition33_residual(const FiniteRankPerturbation& k, const ExampleProvider& p) {
    require_forms(k);
    // L-hat K* - (M-hat K)* = sum_ij conj(C_ij) [ (L-hat w_j) <., r_i> - w_j <., M-hat r_i> ].
    std::vector<GridFunction> u, v;
    for (int i = 0; i < k.rank(); ++i) {
        GridFunction mr = p.apply_mhat(k.range_functions[i]);
        for (int j = 0; j < k.rank(); ++j) {
            const cdouble c = std::conj(k.coefficients(i, j));
            if (c == cdouble(0.0)) continue;
            GridFunction lw = p.apply_lhat(k.weight_functions[j]);
            if (lw.form1) lw.form1 = lw.form1->scaled(c);
            if (lw.form2) lw.form2 = lw.form2->scaled(c);
            lw.values *= c;
            u.push_back(lw);
            v.push_back(k.range_functions[i]);

            GridFunction w = k.weight_functions[j];
            if (w.form1) w.form1 = w.form1->scaled(-c);
            if (w.form2) w.form2 = w.form2->scaled(-c);
            w.values *= -c;
            u.push_back(w);
            v.push_back(mr);
        }
    }
    // Hilbert-Schmidt norm of sum_k u_k <., v_k> from the two Gram matrices.
    cdouble hs2 = 0.0;
    for (size_t a = 0; a < u.size(); ++a)
        for (size_t b = 0; b < u.size(); ++b) hs2 += p.inner(u[a], u[b]) * p.inner(v[b], v[a]);
    return std::sqrt(std::max(0.0, hs2.real()));
}

double adjoint_domain_residual(const ExampleProvider& p, const FiniteRankPerturbation& k,
                               const GridFunction& f) {
    GridFunction u;
    u.values = p.base_inverse().matrix * f.values + apply_perturbation(p, k, f).values;

    GridFunction mu = p.apply_mhat(u);
    GridFunction kmu = apply_perturbation_adjoint(p, k, mu);
    GridFunction v;
    v.values = u.values - kmu.values;

    GridFunction mv = p.apply_mhat(v);
    GridFunction g;
    g.values = v.values - p.base_inverse_adjoint().matrix * mv.values;
    return p.norm(g);
}

bool decays_at_order(const std::vector<std::pair<int, double>>& norms, const DecayWindow& w) {
    if (norms.size() < 2) return false;
    for (size_t i = 1; i < norms.size(); ++i) {
        const double prev = norms[i - 1].second;
        const double cur = norms[i].second;
        if (cur <= 0.0) continue;  // hit the floor; decay satisfied
        const double ratio = prev / cur;
        if (ratio < w.ratio_lo) return false;
        if (w.ratio_hi > 0.0 && ratio > w.ratio_hi) return false;
    }
    return true;
}

CriterionReport normality_report(const ProviderFactory& factory, const PerturbationBuilder& build_k,
                                 const std::vector<int>& sizes, const ReportThresholds& tol,
                                 const PerturbationBuilder* negative_builder) {
    CriterionReport rep;
    std::ostringstream notes;

    std::shared_ptr<const ExampleProvider> p0 = factory(sizes.front());
    FiniteRankPerturbation k0 = build_k(*p0);

    AdmissibilityResult adm = check_admissibility(*p0, k0, tol.analytic);
    rep.admissibility_ok = adm.ok;
    if (!adm.ok) {
        notes << "admissibility failed at function " << adm.failing_index << "; ";
        rep.classification = "not-normal";
        rep.notes = notes.str();
        return rep;
    }

    rep.involution = involution_residual(*p0, k0);
    rep.domain_equality_residual = domain_equality_residual(*p0, k0);
    rep.condition33_residual = condition33_residual(k0, *p0);

    for (int n : sizes) {
        std::shared_ptr<const ExampleProvider> p = factory(n);
        FiniteRankPerturbation k = build_k(*p);
        std::optional<double> fast = p->structured_commutator_norm(k);
        double norm = fast ? *fast : commutator_norm(assemble_inverse(*p, k));
        rep.commutator_norms.emplace_back(n, norm);
    }

    const bool decays = decays_at_order(rep.commutator_norms, tol.decay);
    const bool final_small = rep.commutator_norms.back().second <= tol.commutator_final;
    const bool domain_ok = rep.domain_equality_residual <= tol.domain_equality;
    const bool cond_ok = rep.condition33_residual <= tol.analytic * (1.0 + operator_scale(k0));

    if (domain_ok && cond_ok && decays && final_small) {
        rep.classification = "normal-candidate";
    } else {
        rep.classification = "not-normal";
        if (!domain_ok) notes << "domain-equality residual above tolerance; ";
        if (!cond_ok) notes << "condition (adjoint swap) residual above tolerance; ";
        if (!decays) notes << "commutator norms do not decay at the expected order; ";
        if (!final_small) notes << "commutator norm at the finest grid above threshold; ";
    }

    if (negative_builder) {
        std::shared_ptr<const ExampleProvider> p = factory(sizes.back());
        FiniteRankPerturbation kneg = (*negative_builder)(*p);
        std::optional<double> fast = p->structured_commutator_norm(kneg);
        rep.negative_control_norm = fast ? *fast : commutator_norm(assemble_inverse(*p, kneg));
        if (rep.classification == "normal-candidate" &&
            rep.negative_control_norm < tol.negative_floor)
            notes << "negative control commutator norm below floor; verdict inconclusive; ";
    }

    rep.notes = notes.str();
    return rep;
}

}  // namespace extlab
