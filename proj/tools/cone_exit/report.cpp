#include "report.hpp"

#include <algorithm>
#include <cmath>

#include "cone_exit/errors.hpp"

namespace cone_exit::cli {

namespace {

std::string cell_text(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) return "";
            else if constexpr (std::is_same_v<T, double>) return format_double(v);
            else if constexpr (std::is_same_v<T, long long>) return std::to_string(v);
            else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else return v;
        },
        c);
}

nlohmann::json cell_json(const Cell& c) {
    return std::visit(
        [](const auto& v) -> nlohmann::json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) return nullptr;
            else if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return nullptr;
                return v;
            } else return v;
        },
        c);
}

}  // namespace

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

void write_csv(const RunConfig& config, const Report& report, std::ostream& out) {
    out << kSchemaLine << '\n';
    for (const auto& [k, v] : config.echo()) out << "# config: " << k << " = " << v << '\n';
    for (const auto& w : report.warnings) out << "# warning: " << w << '\n';
    const auto& cols = report.table.columns;
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << csv_field(cols[i]);
    out << '\n';
    for (const auto& row : report.table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(cell_text(row[i]));
        out << '\n';
    }
    if (!report.verdict.empty()) out << "# verdict: " << report.verdict.dump() << '\n';
}

nlohmann::json report_to_json(const RunConfig& config, const Report& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.table.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size() && i < report.table.columns.size(); ++i) {
            obj[report.table.columns[i]] = cell_json(row[i]);
        }
        rows.push_back(std::move(obj));
    }
    nlohmann::json j;
    j["schema"] = "cone-exit v1";
    j["config"] = to_json(config);
    j["rows"] = std::move(rows);
    j["verdict"] = report.verdict;
    j["warnings"] = report.warnings;
    return j;
}

void write_json(const RunConfig& config, const Report& report, std::ostream& out) {
    out << report_to_json(config, report).dump(2) << '\n';
}

void write_text(const RunConfig& config, const Report& report, std::ostream& out) {
    (void)config;
    const auto& cols = report.table.columns;
    std::vector<std::size_t> width(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) width[i] = cols[i].size();
    for (const auto& row : report.table.rows) {
        for (std::size_t i = 0; i < row.size() && i < cols.size(); ++i) {
            width[i] = std::max(width[i], cell_text(row[i]).size());
        }
    }
    if (report.table.rows.size() == 1) {
        std::size_t name_width = 0;
        for (const auto& c : cols) name_width = std::max(name_width, c.size());
        for (std::size_t i = 0; i < cols.size(); ++i) {
            out << cols[i] << std::string(name_width - cols[i].size() + 2, ' ') << cell_text(report.table.rows[0][i])
                << '\n';
        }
    } else {
        for (std::size_t i = 0; i < cols.size(); ++i) out << cols[i] << std::string(width[i] - cols[i].size() + 2, ' ');
        out << '\n';
        for (const auto& row : report.table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                const std::string s = cell_text(row[i]);
                out << s << std::string(width[i] - s.size() + 2, ' ');
            }
            out << '\n';
        }
    }
    if (!report.verdict.empty()) out << "verdict: " << report.verdict.dump() << '\n';
}

void write_report(const RunConfig& config, const Report& report, std::ostream& out) {
    if (config.format == "csv") write_csv(config, report, out);
    else if (config.format == "json") write_json(config, report, out);
    else if (config.format == "text") write_text(config, report, out);
    else throw DomainError("unknown output format '" + config.format + "'");
}

}  // namespace cone_exit::cli
