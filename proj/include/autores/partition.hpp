#pragma once

#include <Eigen/Core>

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "autores/phase_equation.hpp"

namespace autores {

enum class Region { OmegaPlus, OmegaMinus, OmegaZero, OmegaStar, Boundary };
enum class Branch { SMinus, SZero, SPlus };

/// The four κ regimes with distinct curve layouts; κ within 1e-12 of 3/4 or 1 snaps.
enum class Regime { Below34, From34To1, One, Above1 };

[[nodiscard]] std::string_view to_string(Region r);
[[nodiscard]] std::string_view to_string(Branch b);
[[nodiscard]] Regime regime_of(double kappa);

using Polyline = std::vector<Eigen::Vector2d>;  ///< (δ, ν) vertices

struct BifurcationCurve {
    Branch branch = Branch::SPlus;
    double kappa = 0.0;
    std::vector<Polyline> pieces;
    [[nodiscard]] std::size_t size() const;
};

/// z_j = (4κ + (−1)^j √(4κ² + 12δ² − 3)) / 3, undefined when the radicand is negative.
[[nodiscard]] std::pair<std::optional<double>, std::optional<double>> z_functions(double delta,
                                                                                  double kappa);

/// p_j = (κ(2z_j² − 1) − z_j³)/δ, undefined when z_j is undefined or |z_j| > 1.
/// Throws DomainError at δ = 0.
[[nodiscard]] std::pair<std::optional<double>, std::optional<double>> p_functions(double delta,
                                                                                  double kappa);

struct SpecialPoints {
    double kappa = 0.0;
    Regime regime = Regime::Below34;
    std::vector<double> n;  ///< roots of p₁(·,κ) = 0, ascending (n₁ < n₃ < n₄ < n₂)
    double m1 = 0.0;
    double m2 = 0.0;
    std::optional<double> m3;          ///< κ − 1 for κ ≥ 3/4
    std::optional<double> delta_star;  ///< −√((3 − 4κ²)/12) for κ < √3/2

    [[nodiscard]] double n1() const { return n.front(); }
    [[nodiscard]] double n2() const { return n.back(); }
    [[nodiscard]] std::optional<double> n3() const;
    [[nodiscard]] std::optional<double> n4() const;
};

[[nodiscard]] SpecialPoints special_points(double kappa);

/// Curves s₋, s₀, s₊ for the regime of κ, each traced with `resolution` δ-samples per piece.
/// Both preimages ν and π − ν of sin ν = p_j are kept.
[[nodiscard]] std::vector<BifurcationCurve> bifurcation_curves(double kappa, int resolution = 2001);

/// Label from the root count of the phase equation; Boundary when a root is degenerate.
[[nodiscard]] Region classify_region(const PhaseParams& p, const RootOptions& opt = {});

/// Label from the curve geometry alone (δ left/right of s± at ν, and the Ω* strips).
[[nodiscard]] Region region_from_curves(const PhaseParams& p);
/// Same, reusing precomputed special points for p.kappa.
[[nodiscard]] Region region_from_curves(const PhaseParams& p, const SpecialPoints& sp);

/// Number of simple roots implied by a region label (Boundary gives −1).
[[nodiscard]] int expected_root_count(Region r);

/// Euclidean distance in the (δ, ν) plane from a point to the nearest curve segment.
[[nodiscard]] double distance_to_curves(const std::vector<BifurcationCurve>& curves, double delta,
                                        double nu);

struct CurveCrossing {
    Branch branch = Branch::SPlus;
    double delta = 0.0;
};

/// δ positions where the horizontal line ν = const meets the curves, sorted, duplicates merged.
[[nodiscard]] std::vector<CurveCrossing> curve_crossings(const std::vector<BifurcationCurve>& curves,
                                                         double nu);

/// Membership in the set of (δ, κ) where multiple roots exist.
[[nodiscard]] bool in_multiple_root_domain(double delta, double kappa);

struct GridSpec {
    double x_min = -3.0, x_max = 3.0;  ///< δ range
    double y_min = 0.0, y_max = 2.0;   ///< κ range
    int nx = 2, ny = 2;

    [[nodiscard]] double x(int i) const { return x_min + (x_max - x_min) * i / (nx - 1); }
    [[nodiscard]] double y(int j) const { return y_min + (y_max - y_min) * j / (ny - 1); }
};

using Mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Row j is κ = y(j), column i is δ = x(i). Requires nx, ny ≥ 2.
[[nodiscard]] Mask multiple_root_domain(const GridSpec& grid);

} // namespace autores
