#include "onf/io/csv.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "onf/error.hpp"

namespace onf::io {

std::string format_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

const std::vector<double>& CsvTable::column(std::string_view name) const
{
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return columns[i];
    throw ConfigError("CSV column '" + std::string(name) + "' not found");
}

std::string csv_document(std::string_view provenance, const std::vector<std::string>& header,
                         const std::vector<const std::vector<double>*>& columns)
{
    if (header.size() != columns.size())
        throw ConfigError("csv_document: header and column count differ");
    const std::size_t rows = columns.empty() ? 0 : columns.front()->size();
    for (const auto* c : columns)
        if (c->size() != rows)
            throw ConfigError("csv_document: ragged columns");

    std::string out;
    out.reserve(rows * columns.size() * 24 + 128);
    out += "# provenance: ";
    out += provenance;
    out += '\n';
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (j)
            out += ',';
        out += header[j];
    }
    out += '\n';
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (j)
                out += ',';
            out += format_double((*columns[j])[i]);
        }
        out += '\n';
    }
    return out;
}

CsvTable parse_csv(std::string_view text)
{
    CsvTable table;
    std::size_t pos = 0;
    bool have_header = false;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.empty())
            continue;
        if (line.front() == '#') {
            line.remove_prefix(1);
            if (!line.empty() && line.front() == ' ')
                line.remove_prefix(1);
            table.comments.emplace_back(line);
            continue;
        }
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            fields.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
            if (comma == std::string_view::npos)
                break;
            start = comma + 1;
        }
        if (!have_header) {
            table.header = std::move(fields);
            table.columns.resize(table.header.size());
            have_header = true;
            continue;
        }
        if (fields.size() != table.header.size())
            throw ConfigError("CSV row has " + std::to_string(fields.size()) + " fields, expected "
                              + std::to_string(table.header.size()));
        for (std::size_t j = 0; j < fields.size(); ++j) {
            char* tail = nullptr;
            const double v = std::strtod(fields[j].c_str(), &tail);
            if (tail == fields[j].c_str() || *tail != '\0')
                throw ConfigError("CSV field '" + fields[j] + "' is not a number");
            table.columns[j].push_back(v);
        }
    }
    if (!have_header)
        throw ConfigError("CSV has no header row");
    return table;
}

CsvTable read_csv(const std::filesystem::path& path)
{
    return parse_csv(read_file(path));
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content)
{
    static std::atomic<unsigned> counter{0};
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ostringstream suffix;
    suffix << ".tmp." << std::this_thread::get_id() << '.' << counter++;
    const auto tmp = std::filesystem::path(path.string() + suffix.str());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw ConfigError("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw ConfigError("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

} // namespace onf::io
