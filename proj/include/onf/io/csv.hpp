#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace onf::io {

// Shortest text that reads back to the same double (%.17g).
std::string format_double(double x);

struct CsvTable {
    std::vector<std::string> comments; // lines starting with '#', without the '#'
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
    // Throws ConfigError when the column is missing.
    const std::vector<double>& column(std::string_view name) const;
};

// `# provenance: <provenance>` line, header row, then one row per index.
std::string csv_document(std::string_view provenance, const std::vector<std::string>& header,
                         const std::vector<const std::vector<double>*>& columns);

CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
// Writes to a sibling temporary file, then renames over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

} // namespace onf::io
