#pragma once

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "core.hpp"

namespace rdepth {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& file, std::size_t line, const std::string& what)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline bool parse_real(const std::string& s, double& v) {
    if (s.empty()) return false;
    char* end = nullptr;
    errno = 0;
    v = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && errno != ERANGE && std::isfinite(v);
}

// Rows of a numeric CSV with a header; blank lines are skipped.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

inline Table read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Table t;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
        if (trim(line).empty()) continue;
        auto cells = split_csv(line);
        if (t.header.empty()) {
            t.header = std::move(cells);
            continue;
        }
        if (cells.size() != t.header.size())
            throw ParseError(path, lineno, "expected " + std::to_string(t.header.size()) + " fields, found " +
                                               std::to_string(cells.size()));
        std::vector<double> row(cells.size());
        for (std::size_t j = 0; j < cells.size(); ++j)
            if (!parse_real(cells[j], row[j])) throw ParseError(path, lineno, "not a finite number: '" + cells[j] + "'");
        t.rows.push_back(std::move(row));
    }
    if (t.header.empty()) throw ParseError(path, lineno, "missing header row");
    return t;
}

inline std::string format_real(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace detail

// CSV with header x1,...,x{p-1},y.
inline ObservationSet read_dataset(const std::string& path) {
    const auto t = detail::read_table(path);
    if (t.header.size() < 2) throw ParseError(path, 1, "header needs at least one covariate column and y");
    if (t.header.back() != "y") throw ParseError(path, 1, "last header column must be 'y'");
    for (std::size_t j = 0; j + 1 < t.header.size(); ++j)
        if (t.header[j] != "x" + std::to_string(j + 1))
            throw ParseError(path, 1, "expected header column 'x" + std::to_string(j + 1) + "', found '" + t.header[j] + "'");
    if (t.rows.empty()) throw std::runtime_error(path + ": dataset has no observations");
    std::vector<Observation> obs;
    for (const auto& r : t.rows) obs.push_back({std::vector<double>(r.begin(), r.end() - 1), r.back()});
    return ObservationSet(std::move(obs), t.header.size());
}

inline void write_dataset(const std::string& path, const ObservationSet& set) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (std::size_t j = 1; j < set.dim(); ++j) out << 'x' << j << ',';
    out << "y\n";
    for (const auto& o : set) {
        for (double x : o.x) out << detail::format_real(x) << ',';
        out << detail::format_real(o.y) << '\n';
    }
    if (!out) throw std::runtime_error("failed writing " + path);
}

// Point clouds such as s1,s2 samples.
inline std::vector<std::vector<double>> read_points(const std::string& path) {
    return detail::read_table(path).rows;
}

inline void write_points(const std::string& path, const std::vector<std::string>& header,
                         const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << header[j];
    out << '\n';
    for (const auto& r : rows) {
        for (std::size_t j = 0; j < r.size(); ++j) out << (j ? "," : "") << detail::format_real(r[j]);
        out << '\n';
    }
    if (!out) throw std::runtime_error("failed writing " + path);
}

inline nlohmann::json make_report(const std::string& command, std::uint64_t seed, nlohmann::json config,
                                  nlohmann::json results, const std::vector<std::string>& warnings) {
    nlohmann::json j;
    j["command"] = command;
    j["version"] = kVersion;
    j["seed"] = seed;
    j["config"] = std::move(config);
    j["results"] = std::move(results);
    j["warnings"] = warnings;
    return j;
}

inline void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace rdepth
