#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "autores/model.hpp"
#include "autores/ode.hpp"
#include "autores/partition.hpp"

namespace autores {

enum class CoordinateMode { Polar, Cartesian };

[[nodiscard]] std::string_view to_string(CoordinateMode m);

struct IntegratorOptions {
    double rtol = 1e-9;
    double atol = 1e-12;
    CoordinateMode mode = CoordinateMode::Polar;
    double rho_min = 1e-6;  ///< polar mode aborts below this amplitude
    int samples = 4001;     ///< uniformly spaced output samples
    double h_max = std::numeric_limits<double>::infinity();
    std::size_t max_steps = 20'000'000;
};

struct TrajectoryMeta {
    std::string method = "Dormand-Prince 5(4), PI control";
    double rtol = 0.0;
    double atol = 0.0;
    CoordinateMode mode = CoordinateMode::Polar;
    ode::Stats stats;
};

/// Sampled solution of the averaged system; ψ is unwrapped (continuous).
struct Trajectory {
    Eigen::VectorXd tau;
    Eigen::VectorXd rho;
    Eigen::VectorXd psi;
    TrajectoryMeta meta;
    std::optional<ode::Solution<2>> dense;  ///< native-coordinate dense output, if integrated
    std::vector<double> step_psi;           ///< unwrapped ψ at the dense-output step points

    [[nodiscard]] Eigen::Index size() const { return tau.size(); }
    /// (ρ, ψ) at τ from the dense output, ψ on the same branch as the samples.
    [[nodiscard]] Eigen::Vector2d at(double t) const;

    /// Wraps precomputed samples (e.g. an evaluated series) without dense output.
    [[nodiscard]] static Trajectory from_samples(Eigen::VectorXd tau, Eigen::VectorXd rho,
                                                 Eigen::VectorXd psi);
};

/// Right-hand sides of the averaged system.
[[nodiscard]] Eigen::Vector2d polar_rhs(const ModelParams& p, double tau, const Eigen::Vector2d& y);
[[nodiscard]] Eigen::Vector2d cartesian_rhs(const ModelParams& p, double tau, const Eigen::Vector2d& uv);

/// Integrates from (ρ₀, ψ₀) at τ₀ to τ₁. Polar mode throws NumericalError when ρ ≤ rho_min.
[[nodiscard]] Trajectory integrate(const ModelParams& p, double rho0, double psi0, double tau0,
                                   double tau1, const IntegratorOptions& opt = {});

/// Same, ending early once stop(τ, ρ, ψ) returns true; ψ passed to stop is unwrapped.
using StopPredicate = std::function<bool(double, double, double)>;
[[nodiscard]] Trajectory integrate(const ModelParams& p, double rho0, double psi0, double tau0,
                                   double tau1, const IntegratorOptions& opt,
                                   const StopPredicate& stop);

struct CaptureResult {
    bool captured = false;
    std::optional<double> sigma_est;  ///< circular mean of ψ over the window, in [0, 2π)
    double max_amp_dev = 0.0;         ///< max |ρ/√(λτ) − 1| over the window
    double phase_range = 0.0;         ///< max ψ − min ψ over the window
    Eigen::Index window_samples = 0;
};

struct CaptureOptions {
    double window_fraction = 0.25;
    double tol_amp = 0.05;
    double tol_phase_range = 1.0;
};

/// Throws DomainError if the trailing window holds fewer than 50 samples.
[[nodiscard]] CaptureResult detect_capture(const Trajectory& traj, double lambda,
                                           const CaptureOptions& opt = {});

/// Drive data of the un-averaged oscillator
///   x'' + εC(εt)x' + (1 + εB(εt)cos(2ζ − ν))U′(x) = εA(εt)cos ζ,  ζ = t − ϑt²,
/// with U′(x) = x − εx³/6. A, B, C take the slow time s = εt.
struct OscillatorParams {
    double epsilon = 0.01;
    double vartheta = 0.01 * 0.01 / 32;
    double nu = 0.0;
    std::function<double(double)> A = [](double) { return 0.0; };
    std::function<double(double)> B = [](double) { return 0.0; };
    std::function<double(double)> C = [](double) { return 0.0; };

    /// λ of the averaged system, 32ϑ/ε².
    [[nodiscard]] double lambda() const { return 32 * vartheta / (epsilon * epsilon); }
};

/// Oscillator whose averaging (x = 2ρcos(ζ − ψ), τ = εt/4) reproduces the averaged model:
/// A(s) = α(s/4), B(s) = β(s/4), C(s) = γ(s/4)/2, ϑ = λε²/32, ν_osc = −ν.
[[nodiscard]] OscillatorParams oscillator_from_model(const ModelParams& p, double epsilon);

struct OscillatorRun {
    Eigen::VectorXd t;
    Eigen::VectorXd x;
    Eigen::VectorXd xdot;
    double epsilon = 0.0;
    double vartheta = 0.0;
    double nu = 0.0;
    double lambda = 0.0;
    ode::Stats stats;

    [[nodiscard]] double zeta(double tt) const { return tt - vartheta * tt * tt; }
    /// E = U(x) + x'²/2 with U = x²/2 − εx⁴/24.
    [[nodiscard]] Eigen::VectorXd energy() const;
};

struct OscillatorOptions {
    double rtol = 1e-9;
    double atol = 1e-11;
    double sample_dt = 0.05;
};

/// Integrates the oscillator on [t0, t1] from (x0, x0'). Requires ε ∈ (0, 0.1] and ϑ > 0.
[[nodiscard]] OscillatorRun simulate_full_oscillator(const OscillatorParams& op, double t0, double t1,
                                                     double x0, double xdot0,
                                                     const OscillatorOptions& opt = {});

/// Initial oscillator state matching averaged data (ρ, ψ) at slow time τ.
[[nodiscard]] Eigen::Vector2d oscillator_state_from_averaged(const OscillatorParams& op, double rho,
                                                             double psi, double tau);

/// Running maximum of |x| over windows of the given length, reported at window centres.
struct Envelope {
    Eigen::VectorXd t;
    Eigen::VectorXd amplitude;
};
[[nodiscard]] Envelope oscillator_envelope(const OscillatorRun& run, double window);

struct BasinSpec {
    double rho_min = 0.0, rho_max = 1.0;
    double psi_min = 0.0, psi_max = 1.0;
    int n_rho = 2, n_psi = 2;
    double tau0 = 20.0;
    double tau1 = 200.0;
    std::uint64_t seed = 0;
    bool jitter = false;  ///< sample uniformly inside each cell instead of at its centre
};

struct BasinResult {
    Mask captured;  ///< row j: ψ index, column i: ρ index
    double fraction = 0.0;
};

/// Capture mask over a grid of initial data, integrated in Cartesian mode in parallel.
[[nodiscard]] BasinResult basin_sample(const ModelParams& p, const BasinSpec& spec,
                                       const IntegratorOptions& opt = {},
                                       const CaptureOptions& cap = {});

} // namespace autores
