#include "nagf/cli/run_config.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "nagf/errors.hpp"

namespace nagf::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidInput("not a number: '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw InvalidInput("not a number: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  const std::string s = trim(spec);
  if (s.empty()) throw InvalidInput("empty grid");
  if (s.find(':') != std::string::npos) {
    const auto p = split(s, ':');
    if (p.size() != 3) throw InvalidInput("grid must be start:stop:count, got '" + s + "'");
    const double a = to_double(p[0]), b = to_double(p[1]);
    const double n = to_double(p[2]);
    if (n < 1 || n != std::floor(n) || n > 1e6) throw InvalidInput("grid count must be a positive integer");
    const int count = static_cast<int>(n);
    if (count == 1) return {a};
    std::vector<double> g;
    for (int i = 0; i < count; ++i) g.push_back(a + (b - a) * i / (count - 1));
    return g;
  }
  std::vector<double> g;
  for (const auto& item : split(s, ',')) g.push_back(to_double(item));
  return g;
}

std::vector<int> parse_int_list(const std::string& spec) {
  std::vector<int> out;
  for (double v : parse_grid(spec)) {
    if (v != std::floor(v) || std::abs(v) > 1e9) throw InvalidInput("expected integers in '" + spec + "'");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  std::vector<std::pair<std::string, std::string>> kv;
  const std::string body = trim(text);
  if (!body.empty() && body.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw InvalidInput(std::string("config JSON: ") + e.what());
    }
    const auto& cfg = j.contains("config") ? j["config"] : j;
    for (auto it = cfg.begin(); it != cfg.end(); ++it)
      kv.emplace_back(it.key(), it->is_string() ? it->get<std::string>() : it->dump());
    return kv;
  }

  const bool from_output = text.find("#!") != std::string::npos;
  std::stringstream lines(text);
  std::string line;
  int number = 0;
  while (std::getline(lines, line)) {
    ++number;
    std::string l = trim(line);
    if (from_output) {
      if (l.rfind("#!", 0) != 0) continue;
      l = trim(l.substr(2));
    } else if (l.empty() || l.front() == '#') {
      continue;
    }
    const auto eq = l.find('=');
    if (eq == std::string::npos || eq == 0)
      throw InvalidInput(path + ":" + std::to_string(number) + ": expected key=value");
    kv.emplace_back(trim(l.substr(0, eq)), trim(l.substr(eq + 1)));
  }
  return kv;
}

}  // namespace nagf::cli
