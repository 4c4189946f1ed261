#pragma once

// Complex-valued adaptive Gauss-Kronrod quadrature and the Sommerfeld-tail machinery built on it.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace surflink {

using cplx = std::complex<double>;

struct QuadratureResult {
    cplx value{};
    double error = 0.0;
    int evaluations = 0;
    bool converged = true;
};

namespace detail {

struct KronrodRule {
    std::span<const double> xgk;  // Kronrod abscissae, descending, last one is 0
    std::span<const double> wgk;
    std::span<const double> wg;   // Gauss weights for xgk[1], xgk[3], ...
    bool gauss_has_center;
};

// Abscissae and weights from QUADPACK dqk15 / dqk21.
inline constexpr std::array<double, 8> k15_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> k15_w = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> g7_w = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline constexpr std::array<double, 11> k21_x = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720, 0.0};
inline constexpr std::array<double, 11> k21_w = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> g10_w = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

inline KronrodRule rule_for(int points)
{
    if (points == 21)
        return {k21_x, k21_w, g10_w, false};
    return {k15_x, k15_w, g7_w, true};
}

struct Panel {
    double a, b;
    cplx value;
    double error;
};

template <class F>
Panel kronrod_panel(F& f, double a, double b, const KronrodRule& rule)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const std::size_t n = rule.xgk.size();
    const cplx fc = f(center);
    cplx kronrod = fc * rule.wgk[n - 1];
    cplx gauss = rule.gauss_has_center ? fc * rule.wg[rule.wg.size() - 1] : cplx{};
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double dx = half * rule.xgk[j];
        const cplx pair = f(center - dx) + f(center + dx);
        kronrod += rule.wgk[j] * pair;
        if (j % 2 == 1)
            gauss += rule.wg[j / 2] * pair;
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod on [a, b]. Stops once the summed error estimate is below
/// max(abs_tol, rel_tol*|I|) or `max_panels` panels exist. Panel order is deterministic.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double rel_tol, double abs_tol = 0.0,
                                    int points = 15, int max_panels = 4000)
{
    const auto rule = detail::rule_for(points);
    const int per_panel = static_cast<int>(2 * rule.xgk.size() - 1);

    std::vector<detail::Panel> panels{detail::kronrod_panel(f, a, b, rule)};
    QuadratureResult out;
    out.evaluations = per_panel;
    out.value = panels.front().value;
    out.error = panels.front().error;

    while (out.error > std::max(abs_tol, rel_tol * std::abs(out.value))) {
        if (static_cast<int>(panels.size()) >= max_panels) {
            out.converged = false;
            break;
        }
        const auto worst = std::max_element(panels.begin(), panels.end(),
                                            [](const auto& x, const auto& y) { return x.error < y.error; });
        const double lo = worst->a;
        const double hi = worst->b;
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) {
            out.converged = false;
            break;
        }
        *worst = detail::kronrod_panel(f, lo, mid, rule);
        panels.push_back(detail::kronrod_panel(f, mid, hi, rule));
        out.evaluations += 2 * per_panel;

        // Re-sum rather than update incrementally so cancellation does not accumulate.
        out.value = {};
        out.error = 0.0;
        for (const auto& p : panels) {
            out.value += p.value;
            out.error += p.error;
        }
    }
    return out;
}

/// Adaptive quadrature on [a, b] after the substitution x = a + (b-a)(1-cos t)/2, t in [0, pi].
/// Inverse-square-root endpoint singularities become bounded, square-root branch points smooth.
template <class F>
QuadratureResult integrate_cosine_mapped(F&& f, double a, double b, double rel_tol, double abs_tol = 0.0,
                                         int points = 15, int max_panels = 4000)
{
    const double half = 0.5 * (b - a);
    auto mapped = [&](double t) -> cplx {
        const double x = a + half * (1.0 - std::cos(t));
        const double jac = half * std::sin(t);
        if (jac == 0.0)
            return {};
        return f(x) * jac;
    };
    return integrate_adaptive(mapped, 0.0, std::numbers::pi, rel_tol, abs_tol, points, max_panels);
}

/// Iterated weighted averages (partition extrapolation) of a sequence of partial sums S_n whose
/// remainders behave like (-1)^n xi_n^alpha exp(-xi_n decay), where xi_n is the partition point at
/// which the remainder of S_n starts. Returns the top entry of the averaging table.
cplx weighted_average_extrapolate(std::span<const cplx> partial_sums, std::span<const double> xi,
                                  double alpha, double decay);

struct SommerfeldSettings {
    double rel_tol = 1e-8;
    int max_tail_intervals = 60;
    int points = 15;
};

struct SommerfeldResult {
    cplx value{};
    cplx head{};
    cplx tail{};
    int tail_intervals = 0;
    int evaluations = 0;
};

/// Evaluates  I = integral_0^inf kernel(lambda) J0(lambda rho) d lambda  along the real axis.
///
/// The head [0, xi_0] is split at `breakpoints` (sorted, positive) and each panel is integrated
/// with the cosine-mapped adaptive rule; xi_0 is the first zero of J0(lambda rho) beyond
/// 1.5 * max(breakpoints). The tail is summed between consecutive zeros of J0(lambda rho) and
/// accelerated with iterated weighted averages. `decay` and `power` describe the asymptotic
/// kernel, kernel(lambda) ~ lambda^power exp(-lambda decay).
///
/// Throws ConvergenceError when the tail has not settled after settings.max_tail_intervals.
SommerfeldResult sommerfeld_integral(const std::function<cplx(double)>& kernel, double rho,
                                     std::span<const double> breakpoints, double decay, double power,
                                     const SommerfeldSettings& settings);

} // namespace surflink
