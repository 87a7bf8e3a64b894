#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace nagf::cli {

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  // Scalars reported alongside the rows (comment lines in CSV).
  std::vector<std::pair<std::string, Cell>> summary;

  void add_row(std::vector<Cell> row);
};

struct Header {
  std::string version;
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;  // resolved, sorted by key
};

// Lines starting with "#!" carry the configuration and are read back by --config.
std::string render_csv(const Header& h, const Table& t);
std::string render_json(const Header& h, const Table& t);

std::string format_cell(const Cell& c);

}  // namespace nagf::cli
