#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "run_config.hpp"

namespace cone_exit::cli {

inline constexpr const char* kSchemaLine = "# cone-exit schema v1";

/// Missing values print as an empty CSV field and as JSON null.
using Cell = std::variant<std::monostate, double, long long, std::string, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct Report {
    Table table;
    nlohmann::json verdict = nlohmann::json::object();
    std::vector<std::string> warnings;
    int exit_code = 0;
};

/// RFC-4180 quoting: fields containing a comma, quote or line break are quoted.
std::string csv_field(const std::string& s);

void write_csv(const RunConfig& config, const Report& report, std::ostream& out);
void write_json(const RunConfig& config, const Report& report, std::ostream& out);
void write_text(const RunConfig& config, const Report& report, std::ostream& out);
void write_report(const RunConfig& config, const Report& report, std::ostream& out);

nlohmann::json report_to_json(const RunConfig& config, const Report& report);

}  // namespace cone_exit::cli
