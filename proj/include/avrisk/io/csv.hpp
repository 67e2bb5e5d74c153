#ifndef AVRISK_IO_CSV_HPP
#define AVRISK_IO_CSV_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

// Minimal CSV reader for the bundled data formats: mandatory header row,
// comma separator, '.' decimal, '#' comment lines.

namespace avrisk::io {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyFile : ParseError {
    using ParseError::ParseError;
};
struct SchemaMismatch : ParseError {
    using ParseError::ParseError;
};
struct UnitError : ParseError {
    using ParseError::ParseError;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;  // cells, trimmed
    std::vector<std::size_t> line_numbers;       // 1-based source line per row
};

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

inline CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    CsvTable table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        if (table.header.empty()) {
            table.header = split_csv_line(t);
        } else {
            table.rows.push_back(split_csv_line(t));
            table.line_numbers.push_back(lineno);
        }
    }
    if (table.header.empty()) throw EmptyFile("empty file: " + path);
    return table;
}

inline double parse_double(const std::string& cell, const std::string& path, std::size_t lineno,
                           const std::string& column) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(cell, &pos);
        if (pos != cell.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw SchemaMismatch(path + ":" + std::to_string(lineno) + ": bad numeric value '" + cell +
                             "' in column " + column);
    }
}

}  // namespace avrisk::io

#endif
