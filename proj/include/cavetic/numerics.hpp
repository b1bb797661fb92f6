#pragma once

// Special functions and quadrature kernels.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <sstream>
#include <type_traits>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace cavetic {

//==============================================================================
// Gauss-Legendre quadrature
//==============================================================================

struct QuadratureRule
{
    std::vector<double> nodes;   ///< abscissae in (-1, 1), increasing
    std::vector<double> weights; ///< positive, sum to 2

    [[nodiscard]] std::size_t order() const { return nodes.size(); }
};

namespace detail {

// P_n(x) and P_n'(x) by the Bonnet recurrence; n >= 1.
inline std::pair<double, double> legendre_with_derivative(std::size_t n, double x)
{
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
    }
    return {p1, static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0)};
}

} // namespace detail

inline QuadratureRule gauss_legendre(std::size_t order)
{
    if (order == 0)
        throw DomainError("quadrature order must be at least 1");
    const std::size_t n = order;
    QuadratureRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    if (n == 1) {
        rule.weights[0] = 2.0;
        return rule;
    }
    for (std::size_t i = 0; i < n / 2; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            const auto [p, dp] = detail::legendre_with_derivative(n, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        const double dp = detail::legendre_with_derivative(n, x).second;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        const double dp = detail::legendre_with_derivative(n, 0.0).second;
        rule.weights[n / 2] = 2.0 / (dp * dp);
    }
    return rule;
}

/// Order-64 rule shared by all radial integrals.
inline const QuadratureRule &default_rule()
{
    static const QuadratureRule rule = gauss_legendre(64);
    return rule;
}

struct Tolerance
{
    double rel = 1e-10;
    double abs = 0.0;
    std::size_t max_panels = 4096;
};

namespace detail {

template <class T>
bool finite_value(const T &v)
{
    if constexpr (std::is_arithmetic_v<T>)
        return std::isfinite(v);
    else
        return std::isfinite(v.real()) && std::isfinite(v.imag());
}

} // namespace detail

/// Composite Gauss-Legendre estimate with a fixed number of equal panels.
template <class F>
auto integrate_fixed(F &&f, double lo, double hi, const QuadratureRule &rule, std::size_t panels)
{
    using Value = std::decay_t<std::invoke_result_t<F &, double>>;
    Value total{};
    const double width = (hi - lo) / static_cast<double>(panels);
    const double half = 0.5 * width;
    for (std::size_t j = 0; j < panels; ++j) {
        const double mid = lo + (static_cast<double>(j) + 0.5) * width;
        Value panel{};
        for (std::size_t i = 0; i < rule.order(); ++i) {
            const double x = mid + half * rule.nodes[i];
            const Value v = f(x);
            if (!detail::finite_value(v)) {
                std::ostringstream msg;
                msg.precision(17);
                msg << "non-finite integrand at r = " << x;
                throw NumericError(msg.str());
            }
            panel += rule.weights[i] * v;
        }
        total += half * panel;
    }
    return total;
}

/// Composite Gauss-Legendre quadrature, doubling the panel count until two
/// successive estimates agree to max(tol.rel * |I|, tol.abs).
template <class F>
auto integrate_radial(F &&f, double lo, double hi, const QuadratureRule &rule = default_rule(),
                      std::size_t panels = 1, const Tolerance &tol = {})
{
    if (!(lo < hi))
        throw DomainError("integration interval must satisfy lo < hi");
    if (panels == 0)
        throw DomainError("panel count must be at least 1");
    auto previous = integrate_fixed(f, lo, hi, rule, panels);
    double achieved = 0.0;
    while (panels * 2 <= tol.max_panels) {
        panels *= 2;
        auto current = integrate_fixed(f, lo, hi, rule, panels);
        const double diff = std::abs(current - previous);
        const double scale = std::abs(current);
        if (diff <= std::max(tol.rel * scale, tol.abs))
            return current;
        achieved = scale > 0.0 ? diff / scale : diff;
        previous = current;
    }
    throw NumericError("radial quadrature did not converge", achieved);
}

//==============================================================================
// Generalized Laguerre polynomials
//==============================================================================

/// L_p^alpha(x) by the three-term upward recurrence.
inline double laguerre(int p, double alpha, double x)
{
    if (p < 0)
        throw DomainError("Laguerre degree must be non-negative");
    if (p == 0)
        return 1.0;
    double prev = 1.0;
    double cur = 1.0 + alpha - x;
    for (int k = 1; k < p; ++k) {
        const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

//==============================================================================
// Upper incomplete gamma function
//==============================================================================

namespace detail {

// e^x Gamma(s, x) by the modified Lentz continued fraction; converges quickly
// for x > s + 1.
inline double igamma_upper_cf_scaled(double s, double x)
{
    constexpr double tiny = 1e-300;
    constexpr double eps = 4e-16;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < eps)
            return std::pow(x, s) * h;
    }
    throw NumericError("incomplete gamma continued fraction did not converge");
}

// e^x gamma(s, x) (lower) by its power series; s > 0.
inline double igamma_lower_series_scaled(double s, double x)
{
    double term = 1.0 / s;
    double sum = term;
    for (int n = 1; n < 10000; ++n) {
        term *= x / (s + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-17)
            return std::pow(x, s) * sum;
    }
    throw NumericError("incomplete gamma series did not converge");
}

// e^x E_1(x) for small x by its convergent series.
inline double exp_integral_e1_scaled(double x)
{
    constexpr double euler_gamma = 0.57721566490153286061;
    double sum = 0.0;
    double term = 1.0;
    for (int k = 1; k < 1000; ++k) {
        term *= -x / k;
        const double add = term / k;
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum))
            break;
    }
    return std::exp(x) * (-euler_gamma - std::log(x) - sum);
}

} // namespace detail

/// e^x * Gamma(s, x). Finite for all x > 0 where Gamma(s, x) itself underflows.
inline double upper_incomplete_gamma_scaled(double s, double x)
{
    if (!(x > 0.0))
        throw DomainError("upper incomplete gamma requires x > 0");
    if (!(s > -1.0))
        throw DomainError("upper incomplete gamma implemented for s > -1");
    if (s < 0.0)
        return (upper_incomplete_gamma_scaled(s + 1.0, x) - std::pow(x, s)) / s;
    if (s == 0.0)
        return x > 1.0 ? detail::igamma_upper_cf_scaled(0.0, x) : detail::exp_integral_e1_scaled(x);
    if (x > s + 1.0)
        return detail::igamma_upper_cf_scaled(s, x);
    return std::exp(x) * std::tgamma(s) - detail::igamma_lower_series_scaled(s, x);
}

/// Gamma(s, x) = int_x^inf t^(s-1) e^(-t) dt for s > -1, x > 0.
/// Negative s goes through Gamma(s, x) = (Gamma(s+1, x) - x^s e^-x) / s.
inline double upper_incomplete_gamma(double s, double x)
{
    return std::exp(-x) * upper_incomplete_gamma_scaled(s, x);
}

//==============================================================================
// Monotone piecewise-cubic interpolation (Fritsch-Carlson slopes)
//==============================================================================

class MonotoneCubic
{
public:
    MonotoneCubic() = default;

    MonotoneCubic(std::vector<double> xs, std::vector<double> ys) : x_(std::move(xs)), y_(std::move(ys))
    {
        if (x_.size() != y_.size() || x_.size() < 2)
            throw DomainError("monotone cubic needs at least two matching samples");
        const std::size_t n = x_.size();
        for (std::size_t i = 1; i < n; ++i)
            if (!(x_[i] > x_[i - 1]))
                throw DomainError("monotone cubic abscissae must be strictly increasing");
        std::vector<double> h(n - 1), delta(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            h[i] = x_[i + 1] - x_[i];
            delta[i] = (y_[i + 1] - y_[i]) / h[i];
        }
        d_.assign(n, 0.0);
        if (n == 2) {
            d_[0] = d_[1] = delta[0];
            return;
        }
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (delta[i - 1] * delta[i] <= 0.0)
                continue;
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
        d_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
        d_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    }

    /// Clamped to the sampled range; never extrapolates.
    double operator()(double x) const
    {
        if (x <= x_.front())
            return y_.front();
        if (x >= x_.back())
            return y_.back();
        const auto it = std::upper_bound(x_.begin(), x_.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
        const double h = x_[i + 1] - x_[i];
        const double t = (x - x_[i]) / h;
        const double t2 = t * t;
        const double t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * y_[i] + (t3 - 2 * t2 + t) * h * d_[i] + (-2 * t3 + 3 * t2) * y_[i + 1] +
               (t3 - t2) * h * d_[i + 1];
    }

    [[nodiscard]] double lower() const { return x_.front(); }
    [[nodiscard]] double upper() const { return x_.back(); }

private:
    static double end_slope(double h0, double h1, double m0, double m1)
    {
        double d = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
        if (d * m0 <= 0.0)
            d = 0.0;
        else if (m0 * m1 <= 0.0 && std::abs(d) > std::abs(3.0 * m0))
            d = 3.0 * m0;
        return d;
    }

    std::vector<double> x_, y_, d_;
};

//==============================================================================
// Golden-section maximization
//==============================================================================

inline double golden_section_max(const std::function<double(double)> &f, double lo, double hi, double tol)
{
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace cavetic
