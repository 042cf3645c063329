#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "autores/errors.hpp"
#include "autores/phase_equation.hpp"

namespace autores {

/// Coefficients of the averaged system
///   ρ' + γρ = α sin ψ − βρ sin(2ψ+ν),
///   ρ(ψ' − ρ² + λτ) = α cos ψ − βρ cos(2ψ+ν),
/// with α(τ) = √τ Σ α_k τ^{−k}, β(τ) = Σ β_k τ^{−k}, γ(τ) = Σ γ_k τ^{−k}.
struct ModelParams {
    double lambda = 1.0;
    double nu = 0.0;
    std::vector<double> alpha{1.0};
    std::vector<double> beta{0.0};
    std::vector<double> gamma{0.0};

    [[nodiscard]] static double coeff(const std::vector<double>& c, int k) {
        return k >= 0 && static_cast<std::size_t>(k) < c.size() ? c[static_cast<std::size_t>(k)] : 0.0;
    }
    [[nodiscard]] double alpha_k(int k) const { return coeff(alpha, k); }
    [[nodiscard]] double beta_k(int k) const { return coeff(beta, k); }
    [[nodiscard]] double gamma_k(int k) const { return coeff(gamma, k); }

    [[nodiscard]] static double tail(const std::vector<double>& c, double tau) {
        double s = 0.0;
        for (std::size_t k = c.size(); k-- > 0;) s = s / tau + c[k];
        return s;
    }
    [[nodiscard]] double alpha_at(double tau) const { return std::sqrt(tau) * tail(alpha, tau); }
    [[nodiscard]] double beta_at(double tau) const { return tail(beta, tau); }
    [[nodiscard]] double gamma_at(double tau) const { return tail(gamma, tau); }

    [[nodiscard]] double delta() const { return beta_k(0) * std::sqrt(lambda); }
    [[nodiscard]] double kappa() const { return gamma_k(0) * std::sqrt(lambda); }
    [[nodiscard]] PhaseParams phase() const { return {delta(), nu, kappa()}; }

    /// Constant coefficients α = √τ, β = δ/√λ, γ = κ/√λ.
    [[nodiscard]] static ModelParams from_phase(const PhaseParams& p, double lambda = 1.0) {
        ModelParams m;
        m.lambda = lambda;
        m.nu = p.nu;
        m.alpha = {1.0};
        m.beta = {p.delta / std::sqrt(lambda)};
        m.gamma = {p.kappa / std::sqrt(lambda)};
        return m;
    }

    /// Requirements of the series construction: λ > 0, α₀ = 1, γ₀ ≠ 0.
    void validate_normalized() const {
        if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
        if (alpha_k(0) != 1.0) throw DomainError("alpha_0 must equal 1");
        if (gamma_k(0) == 0.0) throw DomainError("gamma_0 must be nonzero");
    }
};

} // namespace autores
