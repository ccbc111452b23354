#include "extlab/exp_sum.hpp"

#include <algorithm>
#include <cmath>

namespace extlab {

namespace {

bool close(cdouble a, cdouble b) {
    return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a) + std::abs(b));
}

}  // namespace

cdouble expm1_over(cdouble a) {
    if (std::abs(a) < 1e-8) {
        // series: 1 + a/2 + a^2/6 + a^3/24
        return 1.0 + a * (0.5 + a * (1.0 / 6.0 + a * (1.0 / 24.0)));
    }
    return (std::exp(a) - 1.0) / a;
}

// ---------------------------------------------------------------- ExpSum

void ExpSum::merge() {
    std::vector<Term> out;
    for (const Term& t : terms_) {
        bool found = false;
        for (Term& o : out) {
            if (close(o.rate, t.rate)) {
                o.coeff += t.coeff;
                found = true;
                break;
            }
        }
        if (!found) out.push_back(t);
    }
    std::erase_if(out, [](const Term& t) { return t.coeff == 0.0; });
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
        if (a.rate.real() != b.rate.real()) return a.rate.real() < b.rate.real();
        return a.rate.imag() < b.rate.imag();
    });
    terms_ = std::move(out);
}

cdouble ExpSum::eval(double x) const {
    cdouble s = 0.0;
    for (const Term& t : terms_) s += t.coeff * std::exp(t.rate * x);
    return s;
}

ExpSum ExpSum::derivative() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) out.push_back({t.coeff * t.rate, t.rate});
    return ExpSum(std::move(out));
}

ExpSum ExpSum::conjugated() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) out.push_back({std::conj(t.coeff), std::conj(t.rate)});
    return ExpSum(std::move(out));
}

ExpSum ExpSum::scaled(cdouble c) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) out.push_back({c * t.coeff, t.rate});
    return ExpSum(std::move(out));
}

ExpSum ExpSum::operator+(const ExpSum& g) const {
    std::vector<Term> out = terms_;
    out.insert(out.end(), g.terms_.begin(), g.terms_.end());
    return ExpSum(std::move(out));
}

ExpSum ExpSum::operator-(const ExpSum& g) const { return *this + g.scaled(-1.0); }

ExpSum ExpSum::operator*(const ExpSum& g) const {
    std::vector<Term> out;
    out.reserve(terms_.size() * g.terms_.size());
    for (const Term& a : terms_)
        for (const Term& b : g.terms_) out.push_back({a.coeff * b.coeff, a.rate + b.rate});
    return ExpSum(std::move(out));
}

cdouble ExpSum::integral01() const {
    cdouble s = 0.0;
    for (const Term& t : terms_) s += t.coeff * expm1_over(t.rate);
    return s;
}

cdouble ExpSum::inner(const ExpSum& g) const { return (*this * g.conjugated()).integral01(); }

double ExpSum::norm() const {
    double v = inner(*this).real();
    return std::sqrt(std::max(0.0, v));
}

// --------------------------------------------------------------- ExpSum2

void ExpSum2::merge() {
    std::vector<Term> out;
    for (const Term& t : terms_) {
        bool found = false;
        for (Term& o : out) {
            if (close(o.rate_x, t.rate_x) && close(o.rate_y, t.rate_y)) {
                o.coeff += t.coeff;
                found = true;
                break;
            }
        }
        if (!found) out.push_back(t);
    }
    std::erase_if(out, [](const Term& t) { return t.coeff == 0.0; });
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
        if (a.rate_x.real() != b.rate_x.real()) return a.rate_x.real() < b.rate_x.real();
        if (a.rate_x.imag() != b.rate_x.imag()) return a.rate_x.imag() < b.rate_x.imag();
        if (a.rate_y.real() != b.rate_y.real()) return a.rate_y.real() < b.rate_y.real();
        return a.rate_y.imag() < b.rate_y.imag();
    });
    terms_ = std::move(out);
}

cdouble ExpSum2::eval(double x, double y) const {
    cdouble s = 0.0;
    for (const Term& t : terms_) s += t.coeff * std::exp(t.rate_x * x + t.rate_y * y);
    return s;
}

ExpSum2 ExpSum2::dx() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) out.push_back({t.coeff * t.rate_x, t.rate_x, t.rate_y});
    return ExpSum2(std::move(out));
}

ExpSum2 ExpSum2::dy() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) out.push_back({t.coeff * t.rate_y, t.rate_x, t.rate_y});
    return ExpSum2(std::move(out));
}

ExpSum2 ExpSum2::conjugated() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_)
        out.push_back({std::conj(t.coeff), std::conj(t.rate_x), std::conj(t.rate_y)});
    return ExpSum2(std::move(out));
}

ExpSum2 ExpSum2::scaled(cdouble c) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) out.push_back({c * t.coeff, t.rate_x, t.rate_y});
    return ExpSum2(std::move(out));
}

ExpSum2 ExpSum2::operator+(const ExpSum2& g) const {
    std::vector<Term> out = terms_;
    out.insert(out.end(), g.terms_.begin(), g.terms_.end());
    return ExpSum2(std::move(out));
}

ExpSum2 ExpSum2::operator-(const ExpSum2& g) const { return *this + g.scaled(-1.0); }

ExpSum2 ExpSum2::operator*(const ExpSum2& g) const {
    std::vector<Term> out;
    out.reserve(terms_.size() * g.terms_.size());
    for (const Term& a : terms_)
        for (const Term& b : g.terms_)
            out.push_back({a.coeff * b.coeff, a.rate_x + b.rate_x, a.rate_y + b.rate_y});
    return ExpSum2(std::move(out));
}

cdouble ExpSum2::integral_square() const {
    cdouble s = 0.0;
    for (const Term& t : terms_) s += t.coeff * expm1_over(t.rate_x) * expm1_over(t.rate_y);
    return s;
}

cdouble ExpSum2::inner(const ExpSum2& g) const { return (*this * g.conjugated()).integral_square(); }

double ExpSum2::norm() const {
    double v = inner(*this).real();
    return std::sqrt(std::max(0.0, v));
}

ExpSum ExpSum2::trace_x(double x0) const {
    std::vector<ExpSum::Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) out.push_back({t.coeff * std::exp(t.rate_x * x0), t.rate_y});
    return ExpSum(std::move(out));
}

ExpSum ExpSum2::trace_y(double y0) const {
    std::vector<ExpSum::Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) out.push_back({t.coeff * std::exp(t.rate_y * y0), t.rate_x});
    return ExpSum(std::move(out));
}

}  // namespace extlab
