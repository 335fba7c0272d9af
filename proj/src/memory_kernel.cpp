#include "gravdeco/memory_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace gravdeco::kernel {

namespace {

// Coefficient multiplying d cosh(dt/2) in the denominator.
double cosh_coefficient(KernelVariant variant)
{
    return variant == KernelVariant::Paper ? 0.5 : 1.0;
}

// Below this value of |d| t the hyperbolic and trigonometric forms lose
// precision to 0/0 and a second-order series is used instead.
constexpr double kSeriesThreshold = 1e-6;
constexpr double kPoleTolerance = 1e-12;

// 2 lambda gamma0 (t/2) S / (c C + lambda (t/2) S), where S = sinh(y)/y and
// C = cosh(y) (or sin/cos) to second order in y = d t / 2.
double series_form(const KernelParams& p, double t, double y, double sign, double c)
{
    const double y2 = sign * y * y;
    const double s = 1.0 + y2 / 6.0;
    const double ch = 1.0 + y2 / 2.0;
    const double half_t = 0.5 * t;
    return 2.0 * p.lambda * p.gamma0 * half_t * s / (c * ch + p.lambda * half_t * s);
}

} // namespace

void KernelParams::validate() const
{
    if (!(gamma0 > 0.0) || !std::isfinite(gamma0))
        throw DomainError("kernel gamma0 must be > 0");
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw DomainError("kernel lambda must be > 0");
}

std::string_view to_string(KernelVariant v)
{
    return v == KernelVariant::Paper ? "paper" : "literature";
}

std::string_view to_string(RegimeKind r)
{
    switch (r) {
    case RegimeKind::Monotonic: return "monotonic";
    case RegimeKind::Oscillatory: return "oscillatory";
    case RegimeKind::Critical: return "critical";
    }
    return "unknown";
}

KernelRegime classify(const KernelParams& params)
{
    params.validate();
    const double two_g0 = 2.0 * params.gamma0;
    const double lam = params.lambda;
    if (std::abs(lam - two_g0) <= 1e-12 * std::max(lam, two_g0))
        return {RegimeKind::Critical, 0.0};
    // lambda^2 - 2 lambda gamma0 = lambda (lambda - 2 gamma0), no cancellation in the product
    const double disc = lam * (lam - two_g0);
    if (disc > 0.0)
        return {RegimeKind::Monotonic, std::sqrt(disc)};
    return {RegimeKind::Oscillatory, std::sqrt(-disc)};
}

double gamma_tilde(const KernelParams& params, double t, KernelVariant variant)
{
    if (!(t >= 0.0))
        throw DomainError("gamma_tilde: t must be >= 0");
    const KernelRegime regime = classify(params);
    const double c = cosh_coefficient(variant);
    const double lam = params.lambda;
    const double pre = 2.0 * lam * params.gamma0;
    const double d = regime.d_value;

    switch (regime.kind) {
    case RegimeKind::Critical:
        return pre * 0.5 * t / (c + lam * 0.5 * t);
    case RegimeKind::Monotonic: {
        if (d * t < kSeriesThreshold)
            return series_form(params, t, 0.5 * d * t, 1.0, c);
        // divide through by cosh to stay finite for large t
        const double th = std::tanh(0.5 * d * t);
        return pre * th / (c * d + lam * th);
    }
    case RegimeKind::Oscillatory: {
        if (d * t < kSeriesThreshold)
            return series_form(params, t, 0.5 * d * t, -1.0, c);
        const double y = 0.5 * d * t;
        const double den = c * d * std::cos(y) + lam * std::sin(y);
        if (std::abs(den) < kPoleTolerance * (c * d + lam))
            throw PoleError("gamma_tilde: kernel pole at t=" + std::to_string(t), t);
        return pre * std::sin(y) / den;
    }
    }
    return 0.0;
}

std::optional<double> first_pole(const KernelParams& params, KernelVariant variant)
{
    const KernelRegime regime = classify(params);
    if (regime.kind != RegimeKind::Oscillatory)
        return std::nullopt;
    const double c = cosh_coefficient(variant);
    // c d cos(y) + lambda sin(y) = 0  =>  tan(y) = -c d / lambda, first root in (pi/2, pi)
    const double y = std::numbers::pi - std::atan(c * regime.d_value / params.lambda);
    return 2.0 * y / regime.d_value;
}

channels::EffectiveRates scaled_rates(const KernelParams& params, const spacetime::RedshiftPair& redshift,
                                      double t, const KernelOptions& options)
{
    const double a = redshift.alpha();
    const double b = redshift.beta();
    if (options.dilate_argument)
        return {a * gamma_tilde(params, a * t, options.variant), b * gamma_tilde(params, b * t, options.variant)};
    const double g = gamma_tilde(params, t, options.variant);
    return {a * g, b * g};
}

std::optional<double> first_coordinate_pole(const KernelParams& params,
                                            const spacetime::RedshiftPair& redshift,
                                            const KernelOptions& options)
{
    const auto pole = first_pole(params, options.variant);
    if (!pole)
        return std::nullopt;
    if (!options.dilate_argument)
        return pole;
    return *pole / std::max(redshift.alpha(), redshift.beta());
}

double integrate_rate(const std::function<double(double)>& rate, double t, double quadrature_step,
                      const QuadratureSettings& settings)
{
    if (!(t >= 0.0))
        throw DomainError("integrate_rate: t must be >= 0");
    if (!(quadrature_step > 0.0))
        throw DomainError("integrate_rate: quadrature_step must be > 0");
    if (t == 0.0)
        return 0.0;

    const double panels_d = std::ceil(t / quadrature_step);
    if (panels_d > static_cast<double>(settings.max_intervals))
        throw std::runtime_error("integrate_rate: quadrature_step too small for subdivision cap");
    const long panels = std::max(1L, static_cast<long>(panels_d));
    const double width = t / static_cast<double>(panels);

    struct Segment {
        double a, b, fa, fm, fb, whole, tol;
    };
    auto simpson = [](double a, double b, double fa, double fm, double fb) {
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    };

    long intervals = panels;
    double total = 0.0;
    std::vector<Segment> stack;
    for (long k = 0; k < panels; ++k) {
        const double a = width * static_cast<double>(k);
        const double b = (k + 1 == panels) ? t : width * static_cast<double>(k + 1);
        const double fa = rate(a), fb = rate(b), fm = rate(0.5 * (a + b));
        stack.push_back({a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), settings.abs_tol * (b - a) / t});
        while (!stack.empty()) {
            const Segment s = stack.back();
            stack.pop_back();
            const double m = 0.5 * (s.a + s.b);
            const double flm = rate(0.5 * (s.a + m));
            const double frm = rate(0.5 * (m + s.b));
            const double left = simpson(s.a, m, s.fa, flm, s.fm);
            const double right = simpson(m, s.b, s.fm, frm, s.fb);
            const double err = left + right - s.whole;
            if (std::abs(err) <= 15.0 * s.tol || s.b - s.a <= 1e-15 * t) {
                total += left + right + err / 15.0;
                continue;
            }
            if (++intervals > settings.max_intervals)
                throw std::runtime_error("integrate_rate: subdivision cap exceeded");
            stack.push_back({m, s.b, s.fm, frm, s.fb, right, 0.5 * s.tol});
            stack.push_back({s.a, m, s.fa, flm, s.fm, left, 0.5 * s.tol});
        }
    }
    return total;
}

double decoherence_integral(const KernelParams& params, const spacetime::RedshiftPair& redshift, double t,
                            double quadrature_step, const KernelOptions& options)
{
    if (const auto pole = first_coordinate_pole(params, redshift, options); pole && *pole <= t)
        throw PoleError("decoherence_integral: non-integrable kernel pole at t=" + std::to_string(*pole) +
                            " inside [0, " + std::to_string(t) + "]",
                        *pole);
    auto total_rate = [&](double s) {
        const auto r = scaled_rates(params, redshift, s, options);
        return r.gamma_a + r.gamma_b;
    };
    return integrate_rate(total_rate, t, quadrature_step);
}

Matrix4c nonmarkov_dephasing_rhs(const Matrix4c& rho, const KernelParams& params,
                                 const spacetime::RedshiftPair& redshift, double t,
                                 const KernelOptions& options)
{
    return channels::dephasing_rhs(rho, scaled_rates(params, redshift, t, options));
}

} // namespace gravdeco::kernel
