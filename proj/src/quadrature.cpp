#include "surflink/quadrature.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/bessel.hpp>

#include "surflink/errors.hpp"

namespace surflink {

cplx weighted_average_extrapolate(std::span<const cplx> partial_sums, std::span<const double> xi, double alpha,
                                  double decay)
{
    if (partial_sums.empty())
        return {};
    std::vector<cplx> row(partial_sums.begin(), partial_sums.end());
    for (std::size_t k = 0; row.size() > 1; ++k) {
        for (std::size_t n = 0; n + 1 < row.size(); ++n) {
            // eta = -omega_n/omega_{n+1} * (xi_{n+1}/xi_n)^{2k}, assembled in the log domain.
            const double ratio = std::log(xi[n] / xi[n + 1]);
            const double log_eta = (alpha - 2.0 * static_cast<double>(k)) * ratio + decay * (xi[n + 1] - xi[n]);
            if (log_eta > 600.0) {
                row[n] = row[n + 1];
                continue;
            }
            const double eta = std::exp(log_eta);
            row[n] = (row[n] + eta * row[n + 1]) / (1.0 + eta);
        }
        row.pop_back();
    }
    return row.front();
}

namespace {

// Smallest index m (1-based) with j_{0,m} > x.
unsigned first_bessel_zero_above(double x)
{
    // McMahon: j_{0,m} ~ (m - 1/4) pi.
    auto m = static_cast<long>(std::floor(x / std::numbers::pi + 0.25));
    m = std::max<long>(m - 1, 1);
    while (boost::math::cyl_bessel_j_zero(0.0, static_cast<int>(m)) <= x)
        ++m;
    while (m > 1 && boost::math::cyl_bessel_j_zero(0.0, static_cast<int>(m - 1)) > x)
        --m;
    return static_cast<unsigned>(m);
}

// Integrates each head panel, tightening to an absolute target when the panels cancel.
cplx integrate_head(const std::function<cplx(double)>& f, std::span<const double> edges, const SommerfeldSettings& s,
                    int& evaluations)
{
    cplx total{};
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const auto r = integrate_cosine_mapped(f, edges[i], edges[i + 1], s.rel_tol, 0.0, s.points);
        total += r.value;
        error += r.error;
        evaluations += r.evaluations;
    }
    if (error <= s.rel_tol * std::abs(total))
        return total;

    const double target = 0.5 * s.rel_tol * std::abs(total) / static_cast<double>(edges.size() - 1);
    total = {};
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const auto r = integrate_cosine_mapped(f, edges[i], edges[i + 1], 0.0, target, s.points);
        total += r.value;
        evaluations += r.evaluations;
    }
    return total;
}

} // namespace

SommerfeldResult sommerfeld_integral(const std::function<cplx(double)>& kernel, double rho,
                                     std::span<const double> breakpoints, double decay, double power,
                                     const SommerfeldSettings& settings)
{
    if (breakpoints.empty() || !(breakpoints.front() > 0.0))
        throw DomainError("sommerfeld_integral needs at least one positive breakpoint");
    if (rho < 0.0)
        throw DomainError("radial distance must be non-negative");

    std::function<cplx(double)> integrand;
    if (rho == 0.0)
        integrand = kernel;
    else
        integrand = [&](double lam) { return kernel(lam) * std::cyl_bessel_j(0.0, lam * rho); };

    SommerfeldResult out;
    const double head_end = 1.5 * breakpoints.back();

    std::vector<double> edges{0.0};
    edges.insert(edges.end(), breakpoints.begin(), breakpoints.end());

    unsigned zero_index = 0;
    if (rho > 0.0) {
        zero_index = first_bessel_zero_above(head_end * rho);
        edges.push_back(boost::math::cyl_bessel_j_zero(0.0, static_cast<int>(zero_index)) / rho);
    } else {
        edges.push_back(head_end);
    }
    out.head = integrate_head(integrand, edges, settings, out.evaluations);

    const double alpha = power - 0.5;
    std::vector<cplx> partial;
    std::vector<double> xi;
    cplx running{};
    cplx estimate{};
    cplx previous{};
    double a = edges.back();
    const double step_axis = decay > 0.0 ? std::max(head_end, 5.0 / decay) : head_end;
    int quiet = 0;

    for (int n = 0; n < settings.max_tail_intervals; ++n) {
        const double b = rho > 0.0 ? boost::math::cyl_bessel_j_zero(0.0, static_cast<int>(zero_index + n + 1)) / rho
                                   : a + step_axis;
        const double abs_floor = 1e-3 * settings.rel_tol * std::abs(out.head + running);
        const auto piece = integrate_adaptive(integrand, a, b, settings.rel_tol, abs_floor, settings.points);
        out.evaluations += piece.evaluations;
        running += piece.value;
        partial.push_back(running);
        xi.push_back(b);
        a = b;

        previous = estimate;
        estimate = rho > 0.0 ? weighted_average_extrapolate(partial, xi, alpha, decay) : running;
        out.tail_intervals = n + 1;

        const double scale = std::abs(out.head + estimate);
        const double limit = settings.rel_tol * scale;
        if (std::abs(piece.value) <= 1e-3 * limit)
            ++quiet;
        else
            quiet = 0;
        if (quiet >= 2 || (n >= 2 && std::abs(estimate - previous) <= limit)) {
            out.tail = estimate;
            out.value = out.head + out.tail;
            return out;
        }
        if (scale == 0.0 && std::abs(piece.value) == 0.0 && n >= 2) {
            out.tail = estimate;
            out.value = out.head + out.tail;
            return out;
        }
    }
    throw ConvergenceError("Sommerfeld tail did not converge within " + std::to_string(settings.max_tail_intervals) +
                               " intervals",
                           out.head + estimate, out.head + previous);
}

} // namespace surflink
