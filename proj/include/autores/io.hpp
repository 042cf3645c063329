#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "autores/partition.hpp"

namespace autores::io {

inline constexpr std::string_view tool_version = "autores 1.0.0";

/// Shortest decimal that round-trips; "nan"/"inf" spelled out.
[[nodiscard]] std::string num(double x);

/// Metadata written as `#`-prefixed lines above the column row.
struct Meta {
    std::string dataset;
    std::vector<std::pair<std::string, std::string>> params;
    std::string regenerate;
    std::vector<std::string> notes;
};

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const Meta& meta, const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);
    void row(const std::vector<double>& values);
    [[nodiscard]] const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    std::ofstream out_;
    std::size_t width_;
};

/// Row-major 0/1 mask with the axis header `# delta_min delta_max kappa_min kappa_max nx ny`.
void write_mask(const std::filesystem::path& path, const Meta& meta, const GridSpec& grid, const Mask& mask);

struct CsvTable {
    std::vector<std::string> comments;  ///< header lines without the leading "# "
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::size_t column(std::string_view name) const;
    [[nodiscard]] double number(std::size_t row, std::string_view name) const;
};

[[nodiscard]] CsvTable read_csv(const std::filesystem::path& path);

} // namespace autores::io
