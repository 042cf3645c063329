#include "autores/io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "autores/errors.hpp"

namespace autores::io {

std::string num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return {buf, r.ptr};
}

namespace {

void write_meta(std::ostream& out, const Meta& meta) {
    out << "# " << tool_version << '\n';
    if (!meta.dataset.empty()) out << "# dataset: " << meta.dataset << '\n';
    for (const auto& [k, v] : meta.params) out << "# param " << k << '=' << v << '\n';
    for (const auto& n : meta.notes) out << "# " << n << '\n';
    if (!meta.regenerate.empty()) out << "# regenerate: " << meta.regenerate << '\n';
}

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot open " + path.string() + " for writing");
    return out;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

} // namespace

CsvWriter::CsvWriter(const std::filesystem::path& path, const Meta& meta,
                     const std::vector<std::string>& columns)
    : path_(path), out_(open_out(path)), width_(columns.size()) {
    write_meta(out_, meta);
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw DomainError("csv row width does not match the header");
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(num(v));
    row(cells);
}

void write_mask(const std::filesystem::path& path, const Meta& meta, const GridSpec& grid, const Mask& mask) {
    auto out = open_out(path);
    write_meta(out, meta);
    out << "# delta_min delta_max kappa_min kappa_max nx ny\n";
    out << "# " << num(grid.x_min) << ' ' << num(grid.x_max) << ' ' << num(grid.y_min) << ' '
        << num(grid.y_max) << ' ' << grid.nx << ' ' << grid.ny << '\n';
    for (Eigen::Index j = 0; j < mask.rows(); ++j) {
        for (Eigen::Index i = 0; i < mask.cols(); ++i) out << (i ? "," : "") << (mask(j, i) ? 1 : 0);
        out << '\n';
    }
}

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw DomainError("no column named " + std::string(name));
}

double CsvTable::number(std::size_t row, std::string_view name) const {
    const std::string& s = rows.at(row).at(column(name));
    return s.empty() ? std::nan("") : std::stod(s);
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open " + path.string());
    CsvTable t;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("#", 0) == 0) {
            t.comments.push_back(line.size() > 2 ? line.substr(2) : "");
        } else if (t.columns.empty()) {
            t.columns = split(line);
        } else if (!line.empty()) {
            t.rows.push_back(split(line));
        }
    }
    return t;
}

} // namespace autores::io
