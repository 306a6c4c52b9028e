#include "liyau/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <utility>

namespace liyau {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

csv_writer::csv_writer(std::vector<std::string> header) : header_(std::move(header)) {
    if (header_.empty()) throw std::invalid_argument("csv_writer: empty header");
}

void csv_writer::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size())
        throw std::runtime_error("csv_writer: row width does not match header");
    rows_.push_back(std::move(cells));
}

void csv_writer::add_row(const std::vector<double>& cells) {
    std::vector<std::string> out;
    out.reserve(cells.size());
    for (double v : cells) out.push_back(format_double(v));
    add_row(std::move(out));
}

std::string csv_writer::to_string() const {
    std::string out;
    auto emit = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    emit(header_);
    for (const auto& row : rows_) emit(row);
    return out;
}

void csv_writer::write(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("csv_writer: cannot open " + path);
    f << to_string();
    if (!f) throw std::runtime_error("csv_writer: write failed for " + path);
}

void ensure_parent_dir(const std::string& path_prefix) {
    const std::filesystem::path p(path_prefix);
    const std::filesystem::path dir = p.parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);
}

}  // namespace liyau
