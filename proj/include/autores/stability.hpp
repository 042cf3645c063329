#pragma once

#include <Eigen/Core>

#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "autores/asymptotics.hpp"
#include "autores/model.hpp"
#include "autores/phase_equation.hpp"
#include "autores/simulator.hpp"

namespace autores {

struct Rational {
    int num = 0;
    int den = 1;
    [[nodiscard]] double value() const { return static_cast<double>(num) / den; }
    [[nodiscard]] std::string str() const;
    friend bool operator==(const Rational&, const Rational&) = default;
};

enum class StabilityStatus { Stable, StableWeighted, Unstable };
enum class ExponentKind { Oscillatory, RealSaddle };

[[nodiscard]] std::string_view to_string(StabilityStatus s);
[[nodiscard]] std::string_view to_string(ExponentKind k);

/// Leading behaviour z± ≈ ±i·coefficient·τ^power (oscillatory) or ±coefficient·τ^power (saddle).
struct ExponentModel {
    ExponentKind kind = ExponentKind::Oscillatory;
    Rational power{1, 2};
    double coefficient = 0.0;
};

struct StabilityVerdict {
    StabilityStatus status = StabilityStatus::Unstable;
    Rational w1{0, 1};
    Rational w2{0, 1};
    SeriesCase kind = SeriesCase::Simple;
    std::string branch;  ///< e.g. "simple.positive_slope", "double.opposed"
    ExponentModel exponent_model;
};

/// Throws ContractError when the series was not built at this root for these parameters.
[[nodiscard]] StabilityVerdict classify_stability(const PhaseRoot& root, const SeriesSolution& series,
                                                  const ModelParams& params);

/// Jacobian of the averaged system at (ρ*, ψ*)(τ) from the series.
[[nodiscard]] Eigen::Matrix2d linearization_matrix(const SeriesSolution& series,
                                                   const ModelParams& params, double tau);
/// Jacobian at an arbitrary anchor point.
[[nodiscard]] Eigen::Matrix2d linearization_matrix(const ModelParams& params, double rho, double psi,
                                                   double tau);

/// z± = (tr Λ ± √D)/2, D = tr² − 4 det.
[[nodiscard]] std::pair<std::complex<double>, std::complex<double>> linearization_exponents(
    const PhaseRoot& root, const SeriesSolution& series, const ModelParams& params, double tau);

/// Least-squares slope of log|z₊| against log τ over logarithmically spaced τ.
[[nodiscard]] double fit_exponent_power(const PhaseRoot& root, const SeriesSolution& series,
                                        const ModelParams& params, double tau_lo = 1e3,
                                        double tau_hi = 1e6, int points = 61);

/// Anchor solution (ρ*, ψ*) as a function of τ; defaults to the series.
using Anchor = std::function<Eigen::Vector2d(double)>;

/// Scaled coordinates R = τ^{−w1} r, Ψ = τ^{−w2} φ and the quadratic form W = √λ r² + ω² φ²/2.
struct LyapunovFrame {
    int case_index = 1;  ///< I..IV
    Rational w1{0, 1};
    Rational w2{0, 1};
    double omega_sq = 0.0;
    double gamma0 = 0.0;
    double sqrt_lambda = 1.0;
    double radius = 0.2;   ///< validity ball in scaled variables
    double tau_min = 50.0;
    ModelParams params;
    Anchor anchor;

    /// Power of τ removed from the scaled Hamiltonian: 1/2 + w2 − w1.
    [[nodiscard]] double c() const { return 0.5 + w2.value() - w1.value(); }
    [[nodiscard]] Eigen::Vector2d to_scaled(double R, double Psi, double tau) const;
    [[nodiscard]] double W(double r, double phi) const {
        return sqrt_lambda * r * r + omega_sq * phi * phi / 2;
    }
};

struct FrameOptions {
    double radius = 0.2;
    double tau_min = 50.0;
};

/// Frame for the case of `series`, anchored at the series itself.
[[nodiscard]] LyapunovFrame make_frame(const StabilityVerdict& verdict, const SeriesSolution& series,
                                       const ModelParams& params, const FrameOptions& opt = {});

/// H(R, Ψ, τ) of the shifted system about (ρ*, ψ*).
[[nodiscard]] double hamiltonian(const ModelParams& params, double rho_star, double psi_star,
                                 double R, double Psi, double tau);

/// V_i in scaled variables; throws DomainError outside the validity ball.
[[nodiscard]] double lyapunov_scaled(const LyapunovFrame& frame, double r, double phi, double tau);
/// V_i at the unscaled perturbation (R, Ψ).
[[nodiscard]] double lyapunov_value(const LyapunovFrame& frame, double R, double Psi, double tau);

struct DecreaseOptions {
    double fd_step = 1e-2;      ///< step of the 4th-order central difference
    double noise_floor = 1e-6;  ///< samples with v below this fraction of max v are skipped
};

struct DecreaseReport {
    double kappa_margin = 0.5;
    double gamma_kappa = 0.0;
    double tau_min = 0.0;
    double radius = 0.0;
    int checked = 0;
    int satisfied = 0;
    int skipped_below_floor = 0;
    bool exited_validity = false;
    std::optional<double> exit_tau;
    double worst_ratio = std::numeric_limits<double>::infinity();  ///< min of (dv/dτ)/(−2γ_ϰ v); ≥ 1 passes

    [[nodiscard]] double fraction() const { return checked == 0 ? 1.0 : double(satisfied) / checked; }
    [[nodiscard]] bool pass() const { return !exited_validity && satisfied == checked; }
};

/// Checks dv/dτ ≤ −2γ_ϰ v along `trajectory` for τ ≥ frame.tau_min, v = V(R(τ), Ψ(τ), τ),
/// with (R, Ψ) measured from the frame's anchor.
[[nodiscard]] DecreaseReport verify_decrease(const LyapunovFrame& frame, const Trajectory& trajectory,
                                             double kappa_margin = 0.5,
                                             const DecreaseOptions& opt = {});

struct PerturbationOptions {
    double tau0 = 20.0;
    double tau1 = 2000.0;
    double size = 1e-3;
    double window_start = 100.0;
    double bound_factor = 10.0;
    double departure = 0.1;
    double rtol = 1e-10;
    double atol = 1e-12;
};

struct PerturbationResponse {
    bool expected_stable = false;
    bool decayed = false;   ///< weighted sup stayed within bound_factor × initial
    bool departed = false;  ///< weighted norm exceeded `departure`
    double initial_weighted = 0.0;
    double sup_weighted = 0.0;
    std::optional<double> departure_tau;
    [[nodiscard]] bool agrees() const { return expected_stable ? decayed && !departed : departed; }
};

/// Integrates the series point and a copy shifted by (size, size) from τ0 and compares their
/// difference, in the weighted norm max(τ^{w1}|R|, τ^{w2}|Ψ|) of the root's case, with the verdict.
[[nodiscard]] PerturbationResponse perturbation_response(const StabilityVerdict& verdict,
                                                         const SeriesSolution& series,
                                                         const ModelParams& params,
                                                         const PerturbationOptions& opt = {});

} // namespace autores
