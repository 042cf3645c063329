#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "autores/phase_equation.hpp"
#include "autores/simulator.hpp"

namespace autores {

[[nodiscard]] const std::vector<std::string>& figure_names();

/// Writes the dataset files of a figure into `dir` and returns their paths.
/// Throws DomainError for an unknown name.
std::vector<std::filesystem::path> write_figure(std::string_view name, const std::filesystem::path& dir);

/// One panel of a roots-versus-δ figure.
struct RootPanel {
    std::string label;
    double kappa = 0.0;
    double nu = 0.0;
};

[[nodiscard]] std::vector<RootPanel> root_panels(std::string_view figure);

/// Parameter triples of the three captured trajectories, with the designed phase of each.
struct CaptureRun {
    std::string label;
    PhaseParams phase;
    double sigma_design = 0.0;
    double tau0 = 20.0;  ///< start of the run, on the series point
};

[[nodiscard]] std::vector<CaptureRun> capture_runs();

/// Integrates a capture run from near its stable series point at run.tau0 up to τ = 1000.
[[nodiscard]] Trajectory capture_trajectory(const CaptureRun& run);

} // namespace autores
