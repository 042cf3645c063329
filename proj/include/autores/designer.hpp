#pragma once

#include <string>

#include "autores/errors.hpp"
#include "autores/phase_equation.hpp"

namespace autores {

/// A design recipe's admissibility inequality does not hold.
class ConstraintViolation : public DomainError {
public:
    ConstraintViolation(const std::string& inequality, const std::string& detail)
        : DomainError("constraint violated: " + inequality + " (" + detail + ")"),
          inequality_(inequality) {}
    [[nodiscard]] const std::string& inequality() const noexcept { return inequality_; }

private:
    std::string inequality_;
};

struct DesignSpec {
    double sigma_target = 0.0;  ///< in [0, 2π)
    double kappa = 0.0;
    double delta = 0.0;
};

struct Certificate {
    double P_value = 0.0;
    double P_prime = 0.0;
};

struct Design {
    double delta = 0.0;
    double nu = 0.0;
    std::string recipe;  ///< "sigma=0", "sigma=pi", "sigma=pi/2" or "generic"
    Certificate certificate;

    [[nodiscard]] PhaseParams phase(double kappa) const { return {delta, nu, kappa}; }
};

/// ν in [0, π) making σ_target a root with P′ > 0, for the caller's δ and κ.
/// Throws ConstraintViolation naming the failed inequality.
[[nodiscard]] Design design_excitation(const DesignSpec& spec);

} // namespace autores
