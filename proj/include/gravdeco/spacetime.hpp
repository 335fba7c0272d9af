// spacetime.hpp: redshift factors, proper time and clock phase shifts for
// static observers in Schwarzschild spacetime.

#pragma once

#include <stdexcept>

namespace gravdeco {

// Raised for inputs outside the physical domain (observer below the horizon,
// negative mass, non-positive temperature, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

namespace spacetime {

inline constexpr double kGravitationalConstant = 6.67430e-11; // m^3 kg^-1 s^-2
inline constexpr double kSpeedOfLight = 299792458.0;          // m/s

struct GravitationalScenario {
    double mass{0.0};  // kg
    double r_a{0.0};   // m
    double r_b{0.0};   // m
    double omega{0.0}; // rad/s

    // Throws DomainError when a qubit sits at or inside the horizon.
    void validate() const;
};

double schwarzschild_radius(double mass);

// 2GM/(r c^2), the dimensionless potential depth at radius r.
double compactness(double mass, double r);

// sqrt(1 - 2GM/(r c^2)).
double redshift_factor(double mass, double r);

// alpha - beta evaluated as (x_b - x_a)/(alpha + beta), which keeps full
// relative precision when both factors are within 1e-9 of one.
double redshift_difference(double mass, double r_a, double r_b);

inline double proper_time(double alpha, double t) { return alpha * t; }

inline double phase_shift(double omega, double alpha, double beta, double t)
{
    return omega * (alpha - beta) * t;
}

// Per-qubit ratio of proper to coordinate time. Only alpha and beta enter the
// dynamics; the difference is kept separately so that physical-mode pairs
// retain the stable value.
class RedshiftPair {
public:
    RedshiftPair() = default;

    static RedshiftPair dimensionless(double alpha, double beta);
    static RedshiftPair from_scenario(const GravitationalScenario& scenario);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double difference() const { return difference_; }

    RedshiftPair swapped() const;

private:
    RedshiftPair(double alpha, double beta, double difference)
        : alpha_(alpha), beta_(beta), difference_(difference) {}

    double alpha_{1.0};
    double beta_{1.0};
    double difference_{0.0};
};

} // namespace spacetime
} // namespace gravdeco
