#pragma once

// JSON and CSV rendering of reports. Keys are sorted and integers are
// unquoted, so equal inputs give byte-identical output.

#include "hk/cb.hpp"
#include "hk/invariants.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace hk::report {

inline constexpr int kSchemaVersion = 1;

class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

nlohmann::json rigidity_json(const RigidityReport& r, const std::string& registry_digest);
nlohmann::json invariants_json(int n, bool with_crosscheck);
nlohmann::json cb_json(const cb::IncidenceCensus& c);

/// Header line plus one row per report.
std::string rigidity_csv_header();
std::string rigidity_csv_row(const RigidityReport& r);
std::string cb_csv(const cb::IncidenceCensus& c);

/// Throws SchemaError unless doc carries the current schema_version.
void require_schema(const nlohmann::json& doc);

std::string dump(const nlohmann::json& doc);

}  // namespace hk::report
