#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "autores/model.hpp"
#include "autores/phase_equation.hpp"

namespace autores {

enum class SeriesCase { Simple, Double, Triple, Quadruple };

[[nodiscard]] std::string_view to_string(SeriesCase c);

/// Truncated expansion
///   ρ(τ) = ρ₋₁√τ + ρ₀ + Σ ρ_k τ^{−k·step},  ψ(τ) = σ + Σ ψ_k τ^{−k·step}.
struct SeriesSolution {
    SeriesCase kind = SeriesCase::Simple;
    int sign = 0;          ///< ±1 branch for Double/Quadruple, 0 otherwise
    double sigma = 0.0;
    int step_den = 2;      ///< step = 1/step_den
    int order = 0;         ///< truncation order K
    double lambda = 1.0;
    double leading = 0.0;  ///< θ, φ, χ or ξ
    std::vector<double> rho;  ///< rho[k+1] = ρ_k for k ≥ −1
    std::vector<double> psi;  ///< psi[k] = ψ_k, psi[0] = σ

    [[nodiscard]] double step() const { return 1.0 / step_den; }
    [[nodiscard]] int rho_last() const { return static_cast<int>(rho.size()) - 2; }
    [[nodiscard]] int psi_last() const { return static_cast<int>(psi.size()) - 1; }
    [[nodiscard]] double rho_k(int k) const {
        return k + 1 < static_cast<int>(rho.size()) && k >= -1 ? rho[static_cast<std::size_t>(k + 1)] : 0.0;
    }
    [[nodiscard]] double psi_k(int k) const {
        return k < static_cast<int>(psi.size()) && k >= 0 ? psi[static_cast<std::size_t>(k)] : 0.0;
    }
};

/// Returned instead of a series when an existence condition fails.
struct NoSeries {
    std::string condition;  ///< the inequality that is violated
    double value = 0.0;     ///< the offending quantity
};

using SeriesResult = std::variant<SeriesSolution, NoSeries>;

[[nodiscard]] SeriesCase series_case(int multiplicity);

/// Highest truncation order with known recurrences: 3, 3, 5, 4.
[[nodiscard]] int max_series_order(SeriesCase c);

/// Builds the series at `root`. `sign` selects ψ₁ = ±φ or ±ξ for the Double and Quadruple cases.
/// Throws DomainError for unsupported orders or invalid parameters.
[[nodiscard]] SeriesResult build_series(const ModelParams& params, const PhaseRoot& root, int order,
                                        int sign = +1);

/// Every branch that exists at `root` (both signs where applicable), at `order`
/// clamped to the case maximum.
[[nodiscard]] std::vector<SeriesSolution> series_branches(const ModelParams& params,
                                                          const PhaseRoot& root, int order);

struct SeriesPoint {
    double rho = 0.0;
    double psi = 0.0;
    double drho = 0.0;
    double dpsi = 0.0;
    double rho_excess = 0.0;  ///< ρ − √(λτ), summed without cancellation
};

[[nodiscard]] SeriesPoint evaluate_series(const SeriesSolution& s, double tau);

struct Residual {
    double r1 = 0.0;
    double r2 = 0.0;
    [[nodiscard]] double max_abs() const;
};

/// Residuals of the averaged system along the truncated series, divided by √τ.
[[nodiscard]] Residual residual_norm(const SeriesSolution& s, const ModelParams& params, double tau);

/// The existence quantities C(σ) and N(σ) for degenerate roots.
[[nodiscard]] double double_root_C(const ModelParams& params, double sigma);
[[nodiscard]] double triple_root_N(const ModelParams& params, double sigma);
[[nodiscard]] double quadruple_root_Q(const ModelParams& params);

} // namespace autores
