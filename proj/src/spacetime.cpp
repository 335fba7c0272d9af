#include "gravdeco/spacetime.hpp"

#include <cmath>
#include <string>

namespace gravdeco::spacetime {

namespace {

constexpr double kTwoGOverC2 = 2.0 * kGravitationalConstant / (kSpeedOfLight * kSpeedOfLight);

void check_mass(double mass)
{
    if (!(mass >= 0.0) || !std::isfinite(mass))
        throw DomainError("mass must be finite and non-negative, got " + std::to_string(mass));
}

void check_above_horizon(double mass, double r)
{
    check_mass(mass);
    if (!(r > schwarzschild_radius(mass)) || !std::isfinite(r))
        throw DomainError("radius " + std::to_string(r) + " m is at or inside the horizon (r_s = " +
                          std::to_string(schwarzschild_radius(mass)) + " m)");
}

} // namespace

void GravitationalScenario::validate() const
{
    check_above_horizon(mass, r_a);
    check_above_horizon(mass, r_b);
    if (!(omega >= 0.0))
        throw DomainError("omega must be non-negative");
}

double schwarzschild_radius(double mass)
{
    check_mass(mass);
    return kTwoGOverC2 * mass;
}

double compactness(double mass, double r)
{
    check_above_horizon(mass, r);
    return kTwoGOverC2 * mass / r;
}

double redshift_factor(double mass, double r)
{
    return std::sqrt(1.0 - compactness(mass, r));
}

double redshift_difference(double mass, double r_a, double r_b)
{
    const double alpha = redshift_factor(mass, r_a);
    const double beta = redshift_factor(mass, r_b);
    // x_b - x_a = (2GM/c^2) (r_a - r_b) / (r_a r_b), no subtraction of near-equal x.
    const double dx = kTwoGOverC2 * mass * ((r_a - r_b) / r_a / r_b);
    return dx / (alpha + beta);
}

RedshiftPair RedshiftPair::dimensionless(double alpha, double beta)
{
    auto in_range = [](double v) { return v > 0.0 && v <= 1.0; };
    if (!in_range(alpha) || !in_range(beta))
        throw DomainError("redshift factors must lie in (0, 1], got alpha=" + std::to_string(alpha) +
                          " beta=" + std::to_string(beta));
    return {alpha, beta, alpha - beta};
}

RedshiftPair RedshiftPair::from_scenario(const GravitationalScenario& scenario)
{
    scenario.validate();
    const double alpha = redshift_factor(scenario.mass, scenario.r_a);
    const double beta = redshift_factor(scenario.mass, scenario.r_b);
    return {alpha, beta, redshift_difference(scenario.mass, scenario.r_a, scenario.r_b)};
}

RedshiftPair RedshiftPair::swapped() const
{
    return {beta_, alpha_, -difference_};
}

} // namespace gravdeco::spacetime
