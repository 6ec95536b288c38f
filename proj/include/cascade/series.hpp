#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace cascade::series {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;  // canonical: reduced, den > 0

// Truncated power series sum_k c_k x^k with exact rational coefficients.
class SeriesPoly {
  public:
    explicit SeriesPoly(std::vector<Rational> coeffs);

    static SeriesPoly zero(int order);
    // Expansion of e^{-x} to the given order: c_k = (-1)^k / k!.
    static SeriesPoly p0_expansion(int order);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Rational& coeff(int k) const;
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    SeriesPoly truncated(int order) const;

    // Exact Horner evaluation at a rational point.
    Rational evaluate(const Rational& x) const;
    double evaluate_double(double x) const;

    bool operator==(const SeriesPoly&) const = default;

  private:
    std::vector<Rational> coeffs_;
};

// Antiderivative with zero constant term: c_k -> c_k/(k+1) at degree k+1.
// Output order is input order + 1.
SeriesPoly series_integrate(const SeriesPoly& p);

// Formal exponential of a series with zero constant term, truncated at g's
// order: E_0 = 1, k E_k = sum_{j=1..k} j g_j E_{k-j}. Throws
// std::invalid_argument if g has a nonzero constant term.
SeriesPoly series_exp(const SeriesPoly& g);

// One recurrence step in series form: exp(-x + integral of p_prev),
// truncated back to p_prev's order. Coefficients up to that order are exact.
SeriesPoly recurrence_series_step(const SeriesPoly& p_prev);

// Expansion of P_n obtained by iterating the series step n times from P_0.
SeriesPoly pn_expansion(int n, int order);

BigInt factorial(int n);

// Leading-order front estimate: the real root of x^{n+1} = (n+1)!/2,
// computed from the exact integer factorial.
double front_estimate_from_series(int n);

}  // namespace cascade::series
