#ifndef RELUANGLE_TOOLS_OUTPUT_HPP
#define RELUANGLE_TOOLS_OUTPUT_HPP

// CSV/JSON emission with a sidecar run manifest. Floats are serialized with
// 17 significant digits so files round-trip bit-exactly; non-finite values
// are written as the explicit token "NaN". Wall-clock duration is segregated
// into <out>.timing.json so data and manifest stay byte-reproducible.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace tools {

using Cell = std::variant<std::int64_t, double, std::string>;

inline std::string format_double(double v) {
    if (std::isnan(v)) return "NaN";
    if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string cell_to_string(const Cell& c) {
    if (std::holds_alternative<std::int64_t>(c)) return std::to_string(std::get<std::int64_t>(c));
    if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
    return std::get<std::string>(c);
}

inline nlohmann::json cell_to_json(const Cell& c) {
    if (std::holds_alternative<std::int64_t>(c)) return std::get<std::int64_t>(c);
    if (std::holds_alternative<double>(c)) {
        const double v = std::get<double>(c);
        if (!std::isfinite(v)) return cell_to_string(c);  // JSON has no NaN literal
        return v;
    }
    return std::get<std::string>(c);
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row) {
        if (row.size() != columns.size()) throw std::runtime_error("row arity mismatch");
        rows.push_back(std::move(row));
    }
};

class Timer {
  public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    std::int64_t elapsed_ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

// manifest: command name, full parameter set, master seed, tool version.
// format "csv": <out> data + <out>.manifest.json; "json": everything nested
// in <out>. Timing always goes to <out>.timing.json.
inline void emit(const std::string& path, const std::string& format, const Table& table,
                 const nlohmann::json& manifest, const Timer& timer) {
    if (format == "csv") {
        std::string data;
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            if (i) data += ',';
            data += table.columns[i];
        }
        data += '\n';
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) data += ',';
                data += cell_to_string(row[i]);
            }
            data += '\n';
        }
        write_file(path, data);
        write_file(path + ".manifest.json", manifest.dump(2) + "\n");
    } else if (format == "json") {
        nlohmann::json doc;
        doc["manifest"] = manifest;
        doc["columns"] = table.columns;
        auto& rows = doc["rows"] = nlohmann::json::array();
        for (const auto& row : table.rows) {
            nlohmann::json r = nlohmann::json::array();
            for (const auto& c : row) r.push_back(cell_to_json(c));
            rows.push_back(std::move(r));
        }
        write_file(path, doc.dump(2) + "\n");
    } else {
        throw std::runtime_error("unknown format: " + format);
    }
    nlohmann::json timing;
    timing["duration_ms"] = timer.elapsed_ms();
    write_file(path + ".timing.json", timing.dump(2) + "\n");
}

// Minimal CSV reader for the files this tool writes itself.
struct ParsedCsv {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return static_cast<int>(i);
        return -1;
    }
};

inline ParsedCsv read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    ParsedCsv out;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t pos = 0;
        while (true) {
            const auto comma = line.find(',', pos);
            cells.push_back(line.substr(pos, comma == std::string::npos ? comma : comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (header) {
            out.columns = std::move(cells);
            header = false;
        } else {
            out.rows.push_back(std::move(cells));
        }
    }
    return out;
}

inline double parse_double(const std::string& s) {
    if (s == "NaN") return std::nan("");
    return std::stod(s);
}

}  // namespace tools

#endif
