#include "nagf/cli/output.hpp"

#include <fmt/format.h>

#include <json.hpp>
#include <stdexcept>

namespace nagf::cli {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("row width does not match columns");
  rows.push_back(std::move(row));
}

std::string format_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return fmt::format("{:.10g}", *d);
  if (const auto* i = std::get_if<long long>(&c)) return fmt::format("{}", *i);
  return std::get<std::string>(c);
}

std::string render_csv(const Header& h, const Table& t) {
  std::string out = fmt::format("# nagf {}\n# command: {}\n", h.version, h.command);
  for (const auto& [k, v] : h.config) out += fmt::format("#! {}={}\n", k, v);
  for (const auto& [k, v] : t.summary) out += fmt::format("# {}: {}\n", k, format_cell(v));
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_cell(row[i]);
    out += "\n";
  }
  return out;
}

namespace {

nlohmann::ordered_json to_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    // Round through the CSV formatting so both outputs carry the same digits.
    return std::stod(format_cell(*d));
  }
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

}  // namespace

std::string render_json(const Header& h, const Table& t) {
  nlohmann::ordered_json j;
  j["version"] = h.version;
  j["command"] = h.command;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : h.config) cfg[k] = v;
  j["config"] = cfg;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.summary) summary[k] = to_json(v);
  j["summary"] = summary;
  j["columns"] = t.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = to_json(row[i]);
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

}  // namespace nagf::cli
