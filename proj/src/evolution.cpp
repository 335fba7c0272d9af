#include "gravdeco/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gravdeco/memory_kernel.hpp"

namespace gravdeco::evolution {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Halt {
    Termination reason;
    std::string message;
};

Matrix4c repair(const Matrix4c& m, bool hermitize)
{
    return hermitize ? Matrix4c(0.5 * (m + m.adjoint())) : m;
}

class Stepper {
public:
    Stepper(const Generator& gen, const IntegratorConfig& cfg)
        : gen_(gen), cfg_(cfg), h_(cfg.step) {}

    // Advance rho from t to target. Returns a halt reason on early stop; t is
    // left at the last accepted time.
    std::optional<Halt> advance(Matrix4c& rho, double& t, double target, long& steps)
    {
        try {
            if (cfg_.method == Method::RK4Fixed)
                return advance_rk4(rho, t, target, steps);
            return advance_rk45(rho, t, target, steps);
        } catch (const kernel::PoleError& e) {
            return Halt{Termination::Pole, e.what()};
        }
    }

private:
    bool pole_ahead(double t) const { return gen_.singular_time && *gen_.singular_time > t; }

    std::optional<Halt> advance_rk4(Matrix4c& rho, double& t, double target, long& steps)
    {
        const double t0 = t;
        const double span = target - t0;
        const long n = std::max(1L, static_cast<long>(std::ceil(span / cfg_.step - 1e-9)));
        const double h = span / static_cast<double>(n);
        for (long j = 0; j < n; ++j) {
            const double ts = t0 + h * static_cast<double>(j);
            const double te = (j + 1 == n) ? target : t0 + h * static_cast<double>(j + 1);
            if (gen_.singular_time && te >= *gen_.singular_time)
                return Halt{Termination::Pole, "generator singularity at t=" + std::to_string(*gen_.singular_time) +
                                                   " within the next step"};
            const double hh = te - ts;
            const Matrix4c k1 = gen_.rhs(ts, rho);
            const Matrix4c k2 = gen_.rhs(ts + 0.5 * hh, rho + (0.5 * hh) * k1);
            const Matrix4c k3 = gen_.rhs(ts + 0.5 * hh, rho + (0.5 * hh) * k2);
            const Matrix4c k4 = gen_.rhs(te, rho + hh * k3);
            const Matrix4c next = rho + (hh / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            if (!next.allFinite())
                return Halt{Termination::InvariantViolation, "non-finite state after step from t=" + std::to_string(ts)};
            rho = repair(next, cfg_.hermitize);
            t = te;
            ++steps;
        }
        return std::nullopt;
    }

    double error_norm(const Matrix4c& y0, const Matrix4c& y1, const Matrix4c& err) const
    {
        if (!y1.allFinite() || !err.allFinite())
            return std::numeric_limits<double>::infinity();
        double worst = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                const double sr = cfg_.abs_tol + cfg_.rel_tol * std::max(std::abs(y0(i, j).real()), std::abs(y1(i, j).real()));
                const double si = cfg_.abs_tol + cfg_.rel_tol * std::max(std::abs(y0(i, j).imag()), std::abs(y1(i, j).imag()));
                worst = std::max({worst, std::abs(err(i, j).real()) / sr, std::abs(err(i, j).imag()) / si});
            }
        return worst;
    }

    std::optional<Halt> advance_rk45(Matrix4c& rho, double& t, double target, long& steps)
    {
        while (t < target) {
            double limit = target;
            if (pole_ahead(t)) {
                const double ts = *gen_.singular_time;
                if (ts - t <= 1e-10 * std::max(1.0, ts))
                    return Halt{Termination::Pole, "reached generator singularity at t=" + std::to_string(ts)};
                if (ts <= target)
                    h_ = std::min(h_, 0.5 * (ts - t));
                limit = std::min(target, ts);
            }
            double h = std::min(h_, limit - t);
            // land exactly on the sample time when the remaining gap is tiny
            if (limit - t - h < 1e-12 * std::max(1.0, std::abs(limit)))
                h = limit - t;
            if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
                if (pole_ahead(t))
                    return Halt{Termination::Pole, "step size collapsed approaching generator singularity at t=" +
                                                       std::to_string(*gen_.singular_time)};
                return Halt{Termination::StepUnderflow, "adaptive step underflow at t=" + std::to_string(t)};
            }

            const Matrix4c k1 = gen_.rhs(t, rho);
            const Matrix4c k2 = gen_.rhs(t + c2 * h, rho + h * (a21 * k1));
            const Matrix4c k3 = gen_.rhs(t + c3 * h, rho + h * (a31 * k1 + a32 * k2));
            const Matrix4c k4 = gen_.rhs(t + c4 * h, rho + h * (a41 * k1 + a42 * k2 + a43 * k3));
            const Matrix4c k5 = gen_.rhs(t + c5 * h, rho + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            const Matrix4c k6 =
                gen_.rhs(t + h, rho + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            const Matrix4c y1 = rho + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            const Matrix4c k7 = gen_.rhs(t + h, y1);
            const Matrix4c err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

            const double norm = error_norm(rho, y1, err);
            if (!std::isfinite(norm)) {
                h_ = 0.2 * h;
                continue;
            }
            const double fac = norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
            if (norm <= 1.0) {
                rho = repair(y1, cfg_.hermitize);
                t = (h == limit - t) ? limit : t + h;
                ++steps;
                h_ = h * fac;
            } else {
                h_ = h * std::min(fac, 1.0);
            }
        }
        return std::nullopt;
    }

    const Generator& gen_;
    const IntegratorConfig& cfg_;
    double h_;
};

std::vector<double> sample_times(const IntegratorConfig& cfg)
{
    std::vector<double> out;
    const long n = static_cast<long>(std::floor(cfg.t_max / cfg.sample_every + 1e-9));
    out.reserve(static_cast<std::size_t>(n) + 2);
    for (long k = 0; k <= n; ++k)
        out.push_back(std::min(cfg.t_max, cfg.sample_every * static_cast<double>(k)));
    if (cfg.t_max - out.back() > 1e-9 * cfg.sample_every)
        out.push_back(cfg.t_max);
    return out;
}

} // namespace

std::string_view to_string(Method m)
{
    return m == Method::RK4Fixed ? "rk4" : "rk45";
}

std::string_view to_string(Termination t)
{
    switch (t) {
    case Termination::Completed: return "completed";
    case Termination::Pole: return "pole";
    case Termination::StepUnderflow: return "step_underflow";
    case Termination::InvariantViolation: return "invariant_violation";
    }
    return "unknown";
}

void IntegratorConfig::validate() const
{
    if (!(step > 0.0))
        throw std::invalid_argument("integrator step must be > 0");
    if (!(t_max > 0.0))
        throw std::invalid_argument("integrator t_max must be > 0");
    if (!(sample_every >= step))
        throw std::invalid_argument("integrator sample_every must be >= step");
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw std::invalid_argument("integrator tolerances must be > 0");
}

SampleDiagnostics diagnose(const Matrix4c& rho)
{
    return {std::abs(rho.trace() - 1.0), min_eigenvalue(rho), hermiticity_residual(rho)};
}

Trajectory evolve(const DensityMatrix& initial, const Generator& generator, const IntegratorConfig& config)
{
    config.validate();
    if (!generator.rhs)
        throw std::invalid_argument("evolve: generator has no rhs");

    Trajectory traj;
    auto record = [&](double t, const Matrix4c& rho) {
        traj.times.push_back(t);
        traj.states.push_back(DensityMatrix::hermitized(rho));
        traj.diagnostics.push_back(diagnose(rho));
        if (generator.rates) {
            const auto r = generator.rates(t);
            traj.rates_a.push_back(r.gamma_a);
            traj.rates_b.push_back(r.gamma_b);
        } else {
            traj.rates_a.push_back(0.0);
            traj.rates_b.push_back(0.0);
        }
    };

    const auto times = sample_times(config);
    Matrix4c rho = initial.matrix();
    double t = 0.0;
    traj.times.push_back(0.0);
    traj.states.push_back(initial);
    traj.diagnostics.push_back(diagnose(rho));
    {
        const auto r = generator.rates ? generator.rates(0.0) : channels::EffectiveRates{};
        traj.rates_a.push_back(r.gamma_a);
        traj.rates_b.push_back(r.gamma_b);
    }

    Stepper stepper(generator, config);
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (auto halt = stepper.advance(rho, t, times[k], traj.steps)) {
            traj.termination = halt->reason;
            traj.message = std::move(halt->message);
            break;
        }
        const double lo = min_eigenvalue(rho);
        if (lo < kPositivityFailure) {
            traj.termination = Termination::InvariantViolation;
            traj.message = "minimum eigenvalue " + std::to_string(lo) + " at t=" + std::to_string(times[k]) +
                           " is beyond the repair threshold";
            break;
        }
        record(times[k], rho);
    }
    traj.end_time = t;
    return traj;
}

} // namespace gravdeco::evolution
