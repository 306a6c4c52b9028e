#pragma once

#include <string>
#include <vector>

namespace liyau {

// Formats a double with enough digits to round-trip ("%.17g").
std::string format_double(double v);

// A CSV table with a fixed header. Cells are pre-formatted strings; numeric
// cells should go through format_double so that outputs are byte-stable.
// Files are written UTF-8 with '\n' line terminators and a trailing newline.
class csv_writer {
  public:
    explicit csv_writer(std::vector<std::string> header);

    void add_row(std::vector<std::string> cells);
    // Convenience for all-numeric rows.
    void add_row(const std::vector<double>& cells);

    // Serializes header + rows. Throws std::runtime_error on I/O failure or
    // on a row whose width differs from the header's.
    void write(const std::string& path) const;
    std::string to_string() const;

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

// Creates every missing directory on the path prefix of `path_prefix` so
// that files named "<path_prefix>_suffix" can be created.
void ensure_parent_dir(const std::string& path_prefix);

}  // namespace liyau
