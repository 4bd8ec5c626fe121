#pragma once

// Small report-table model: named columns, cells that are either numbers
// (kept at full precision alongside their display format) or plain text,
// CSV/JSON output with fixed formatting, and a numeric differ that checks
// computed tables against golden CSVs cell by cell.

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "fogduty/common.hpp"

namespace fogduty::reports {

struct Cell {
    bool numeric = false;
    double value = 0.0;
    std::string text;  // what the CSV shows

    static Cell num(double v, const char* fmt) {
        Cell c;
        c.numeric = true;
        c.value = v;
        char buf[64];
        std::snprintf(buf, sizeof(buf), fmt, v);
        c.text = buf;
        return c;
    }

    static Cell str(std::string s) {
        Cell c;
        c.text = std::move(s);
        return c;
    }
};

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

inline std::string to_csv(const Table& t) {
    std::string out;
    for (size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out.push_back(',');
        out += t.columns[i];
    }
    out.push_back('\n');
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out.push_back(',');
            out += row[i].text;
        }
        out.push_back('\n');
    }
    return out;
}

inline nlohmann::json to_json(const Table& t) {
    nlohmann::json j;
    j["name"] = t.name;
    j["columns"] = t.columns;
    auto& rows = j["rows"] = nlohmann::json::array();
    for (const auto& row : t.rows) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& c : row) {
            if (c.numeric) r.push_back(c.value);
            else r.push_back(c.text);
        }
        rows.push_back(std::move(r));
    }
    return j;
}

inline std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    for (char ch : text) {
        if (ch == ',') {
            row.push_back(field);
            field.clear();
        } else if (ch == '\n') {
            row.push_back(field);
            field.clear();
            rows.push_back(row);
            row.clear();
        } else if (ch != '\r') {
            field.push_back(ch);
        }
    }
    if (!field.empty() || !row.empty()) {
        row.push_back(field);
        rows.push_back(row);
    }
    return rows;
}

// Per-column comparison rule against a golden value.
struct Tolerance {
    enum class Kind { text, relative, absolute, printed } kind = Kind::text;
    double bound = 0.0;

    // Exact string match (labels, names).
    static Tolerance text() { return {Kind::text, 0.0}; }
    // |computed - golden| <= bound * |golden|.
    static Tolerance rel(double bound) { return {Kind::relative, bound}; }
    // |computed - golden| <= bound.
    static Tolerance abs(double bound) { return {Kind::absolute, bound}; }
    // Computed value rounds to the golden one at `decimals` places.
    static Tolerance printed(int decimals) {
        return {Kind::printed, 0.5 / std::pow(10.0, decimals) + 1e-12};
    }
};

struct CellDeviation {
    size_t row = 0;
    size_t col = 0;
    std::string column;
    std::string computed;
    std::string golden;
    double deviation = 0.0;  // relative when golden != 0, else absolute
    bool within = true;
};

struct DiffResult {
    std::string table;
    size_t cells_checked = 0;
    size_t cells_failed = 0;
    double max_deviation = 0.0;
    std::vector<CellDeviation> deviations;  // one entry per numeric cell

    bool pass() const { return cells_failed == 0; }
};

// Compare a computed table against golden CSV text. Text cells (and any
// golden cell that is not a number, e.g. "-") must match literally; numeric
// cells obey the per-column tolerance.
inline DiffResult diff_against_golden(const Table& computed, const std::string& golden_csv,
                                      const std::vector<Tolerance>& tolerances) {
    const auto golden = parse_csv(golden_csv);
    if (golden.empty()) throw ValidationError("empty golden table for " + computed.name);
    if (golden.size() != computed.rows.size() + 1)
        throw ValidationError("golden row count mismatch for " + computed.name);
    if (tolerances.size() != computed.columns.size())
        throw ValidationError("tolerance count mismatch for " + computed.name);

    DiffResult result;
    result.table = computed.name;
    for (size_t r = 0; r < computed.rows.size(); ++r) {
        const auto& crow = computed.rows[r];
        const auto& grow = golden[r + 1];
        if (grow.size() != crow.size())
            throw ValidationError("golden column count mismatch for " + computed.name);
        for (size_t c = 0; c < crow.size(); ++c) {
            CellDeviation dev;
            dev.row = r;
            dev.col = c;
            dev.column = computed.columns[c];
            dev.computed = crow[c].text;
            dev.golden = grow[c];

            char* end = nullptr;
            const double gval = std::strtod(grow[c].c_str(), &end);
            const bool golden_numeric = end != grow[c].c_str() && *end == '\0';

            const auto& tol = tolerances[c];
            if (tol.kind == Tolerance::Kind::text || !golden_numeric || !crow[c].numeric) {
                dev.within = crow[c].text == grow[c];
                if (!dev.within) dev.deviation = 1.0;
            } else {
                const double diff = std::fabs(crow[c].value - gval);
                dev.deviation = gval != 0.0 ? diff / std::fabs(gval) : diff;
                switch (tol.kind) {
                    case Tolerance::Kind::relative:
                        dev.within = diff <= tol.bound * std::fabs(gval);
                        break;
                    case Tolerance::Kind::absolute:
                    case Tolerance::Kind::printed:
                        dev.within = diff <= tol.bound;
                        break;
                    default:
                        dev.within = false;
                }
                ++result.cells_checked;
                result.max_deviation = std::max(result.max_deviation, dev.deviation);
            }
            if (!dev.within) ++result.cells_failed;
            result.deviations.push_back(std::move(dev));
        }
    }
    return result;
}

inline std::string deviation_report(const DiffResult& d) {
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s: %s, %zu numeric cells, max deviation %.4g%%\n",
                  d.table.c_str(), d.pass() ? "PASS" : "FAIL", d.cells_checked,
                  100.0 * d.max_deviation);
    out += buf;
    for (const auto& c : d.deviations) {
        if (c.within) continue;
        std::snprintf(buf, sizeof(buf), "  row %zu %s: computed %s vs golden %s (dev %.4g%%)\n",
                      c.row, c.column.c_str(), c.computed.c_str(), c.golden.c_str(),
                      100.0 * c.deviation);
        out += buf;
    }
    return out;
}

}  // namespace fogduty::reports
