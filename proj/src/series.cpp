#include "cascade/series.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <stdexcept>
#include <string>

namespace cascade::series {

SeriesPoly::SeriesPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("SeriesPoly: needs at least c_0");
}

SeriesPoly SeriesPoly::zero(int order) {
    if (order < 0) throw std::invalid_argument("SeriesPoly: order must be >= 0");
    return SeriesPoly(std::vector<Rational>(static_cast<std::size_t>(order) + 1));
}

SeriesPoly SeriesPoly::p0_expansion(int order) {
    std::vector<Rational> c(static_cast<std::size_t>(order) + 1);
    Rational term = 1;
    c[0] = term;
    for (int k = 1; k <= order; ++k) {
        term *= Rational(-1, k);
        c[static_cast<std::size_t>(k)] = term;
    }
    return SeriesPoly(std::move(c));
}

const Rational& SeriesPoly::coeff(int k) const {
    if (k < 0 || k > order())
        throw std::out_of_range("SeriesPoly::coeff: k = " + std::to_string(k));
    return coeffs_[static_cast<std::size_t>(k)];
}

SeriesPoly SeriesPoly::truncated(int order) const {
    if (order < 0 || order > this->order())
        throw std::invalid_argument("SeriesPoly::truncated: bad order");
    return SeriesPoly(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + order + 1));
}

Rational SeriesPoly::evaluate(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double SeriesPoly::evaluate_double(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + it->convert_to<double>();
    return acc;
}

SeriesPoly series_integrate(const SeriesPoly& p) {
    std::vector<Rational> c(static_cast<std::size_t>(p.order()) + 2);
    c[0] = 0;
    for (int k = 0; k <= p.order(); ++k)
        c[static_cast<std::size_t>(k) + 1] = p.coeff(k) / (k + 1);
    return SeriesPoly(std::move(c));
}

SeriesPoly series_exp(const SeriesPoly& g) {
    if (g.coeff(0) != 0)
        throw std::invalid_argument("series_exp: constant term must be zero");
    const int order = g.order();
    std::vector<Rational> e(static_cast<std::size_t>(order) + 1);
    e[0] = 1;
    for (int k = 1; k <= order; ++k) {
        Rational acc = 0;
        for (int j = 1; j <= k; ++j)
            acc += j * g.coeff(j) * e[static_cast<std::size_t>(k - j)];
        e[static_cast<std::size_t>(k)] = acc / k;
    }
    return SeriesPoly(std::move(e));
}

SeriesPoly recurrence_series_step(const SeriesPoly& p_prev) {
    if (p_prev.coeff(0) != 1)
        throw std::invalid_argument("recurrence_series_step: constant term must be 1");
    SeriesPoly g = series_integrate(p_prev);
    std::vector<Rational> gc = g.coeffs();
    gc[1] -= 1;  // the -x term of the exponent
    return series_exp(SeriesPoly(std::move(gc))).truncated(p_prev.order());
}

SeriesPoly pn_expansion(int n, int order) {
    if (n < 0) throw std::invalid_argument("pn_expansion: n must be >= 0");
    SeriesPoly p = SeriesPoly::p0_expansion(order);
    for (int i = 0; i < n; ++i) p = recurrence_series_step(p);
    return p;
}

BigInt factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial: n must be >= 0");
    BigInt f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

double front_estimate_from_series(int n) {
    if (n < 0) throw std::invalid_argument("front_estimate_from_series: n must be >= 0");
    using BigFloat = boost::multiprecision::cpp_bin_float_50;
    const BigInt f = factorial(n + 1);
    const BigFloat base = BigFloat(f) / 2;
    const BigFloat root = pow(base, BigFloat(1) / (n + 1));
    return root.convert_to<double>();
}

}  // namespace cascade::series
