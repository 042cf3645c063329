#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "autores/errors.hpp"

namespace autores {

/// Parameters of the phase-mismatch function P(σ) = δ sin(2σ+ν) − sin σ + κ.
template <typename Scalar>
struct PhaseParamsT {
    Scalar delta{};
    Scalar nu{};
    Scalar kappa{};
};
using PhaseParams = PhaseParamsT<double>;

namespace detail {
// d^k/dx^k sin x = sin(x + kπ/2), written without adding kπ/2 in floating point.
template <typename Scalar>
Scalar sin_derivative(Scalar s, Scalar c, int k) {
    switch (k & 3) {
        case 0: return s;
        case 1: return c;
        case 2: return -s;
        default: return -c;
    }
}
} // namespace detail

/// d^order P / dσ^order, closed form.
template <typename Scalar>
Scalar eval_phase(Scalar sigma, const PhaseParamsT<Scalar>& p, int order) {
    using std::cos;
    using std::sin;
    if (order < 0 || order > 4) throw DomainError("phase derivative order must be in 0..4");
    const Scalar arg = Scalar(2) * sigma + p.nu;
    const Scalar scale = Scalar(1 << order);
    Scalar v = p.delta * scale * detail::sin_derivative(sin(arg), cos(arg), order) -
               detail::sin_derivative(sin(sigma), cos(sigma), order);
    if (order == 0) v += p.kappa;
    return v;
}

/// P, P′, …, P⁗ at σ sharing one evaluation of the trigonometric terms.
template <typename Scalar>
std::array<Scalar, 5> eval_phase_all(Scalar sigma, const PhaseParamsT<Scalar>& p) {
    using std::cos;
    using std::sin;
    const Scalar arg = Scalar(2) * sigma + p.nu;
    const Scalar s2 = sin(arg), c2 = cos(arg), s1 = sin(sigma), c1 = cos(sigma);
    std::array<Scalar, 5> d;
    for (int k = 0; k < 5; ++k)
        d[k] = p.delta * Scalar(1 << k) * detail::sin_derivative(s2, c2, k) -
               detail::sin_derivative(s1, c1, k);
    d[0] += p.kappa;
    return d;
}

struct PhaseRoot {
    double sigma = 0.0;           ///< in [0, 2π)
    int multiplicity = 1;         ///< 1..4
    std::array<double, 5> derivs{};  ///< P⁽⁰⁾..P⁽⁴⁾ at sigma
    bool well_separated = true;   ///< |P⁽ᵐ⁾(σ)| > tol_sep
};

struct RootOptions {
    double tol_root = 1e-9;
    double tol_sep = 1e-4;
    int scan_intervals = 4096;
    double merge_distance = 1e-6;
};

/// All roots of P in [0, 2π), sorted by σ, each with its multiplicity.
[[nodiscard]] std::vector<PhaseRoot> find_roots(const PhaseParams& p, const RootOptions& opt = {});

[[nodiscard]] inline std::vector<PhaseRoot> find_roots(const PhaseParams& p, double tol_root,
                                                       double tol_sep) {
    RootOptions o;
    o.tol_root = tol_root;
    o.tol_sep = tol_sep;
    return find_roots(p, o);
}

/// Wraps an angle into [0, 2π).
[[nodiscard]] double wrap_angle(double a);

/// Signed shortest difference a − b on the circle, in (−π, π].
[[nodiscard]] double angle_diff(double a, double b);

/// Throws DomainError unless κ > 0 and ν ∈ [0, π).
void validate(const PhaseParams& p);

} // namespace autores
