#pragma once

#include <complex>
#include <vector>

namespace extlab {

using cdouble = std::complex<double>;

/*
 * Exact algebra on finite exponential sums
 *
 *   f(x)   = sum_k c_k exp(a_k x)            (ExpSum)
 *   f(x,y) = sum_k c_k exp(a_k x + b_k y)    (ExpSum2)
 *
 * with complex coefficients and rates. Every closed-form object in this
 * project (kernel factors, Ker L-hat / Ker M-hat elements, Fourier modes,
 * test functions) is of this shape, so differentiation, products and
 * integrals over [0,1] stay exact. That is what makes the analytic
 * criteria residuals independent of any grid.
 */
class ExpSum {
public:
    struct Term {
        cdouble coeff;
        cdouble rate;
    };

    ExpSum() = default;
    explicit ExpSum(std::vector<Term> terms) : terms_(std::move(terms)) { merge(); }

    static ExpSum constant(cdouble c) { return ExpSum({{c, 0.0}}); }
    static ExpSum exponential(cdouble coeff, cdouble rate) { return ExpSum({{coeff, rate}}); }

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    cdouble eval(double x) const;
    ExpSum derivative() const;             // d/dx
    ExpSum conjugated() const;             // conj(f) on the real line
    ExpSum scaled(cdouble c) const;
    ExpSum operator+(const ExpSum& g) const;
    ExpSum operator-(const ExpSum& g) const;
    ExpSum operator*(const ExpSum& g) const;

    cdouble integral01() const;            // int_0^1 f
    cdouble inner(const ExpSum& g) const;  // int_0^1 f conj(g)
    double norm() const;                   // sqrt(<f,f>)

    cdouble at0() const { return eval(0.0); }
    cdouble at1() const { return eval(1.0); }

private:
    void merge();
    std::vector<Term> terms_;
};

class ExpSum2 {
public:
    struct Term {
        cdouble coeff;
        cdouble rate_x;
        cdouble rate_y;
    };

    ExpSum2() = default;
    explicit ExpSum2(std::vector<Term> terms) : terms_(std::move(terms)) { merge(); }

    static ExpSum2 exponential(cdouble coeff, cdouble rate_x, cdouble rate_y) {
        return ExpSum2({{coeff, rate_x, rate_y}});
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    cdouble eval(double x, double y) const;
    ExpSum2 dx() const;
    ExpSum2 dy() const;
    ExpSum2 conjugated() const;
    ExpSum2 scaled(cdouble c) const;
    ExpSum2 operator+(const ExpSum2& g) const;
    ExpSum2 operator-(const ExpSum2& g) const;
    ExpSum2 operator*(const ExpSum2& g) const;

    cdouble integral_square() const;        // int over [0,1]^2
    cdouble inner(const ExpSum2& g) const;  // int f conj(g)
    double norm() const;

    // Edge traces of the unit square as 1-D sums.
    ExpSum trace_x(double x0) const;  // function of y
    ExpSum trace_y(double y0) const;  // function of x

private:
    void merge();
    std::vector<Term> terms_;
};

// (exp(a) - 1)/a, continuous at a = 0.
cdouble expm1_over(cdouble a);

}  // namespace extlab
