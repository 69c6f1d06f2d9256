#include "cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace xxzq::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  return out;
}

double parse_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw ConfigError("key '" + key + "': cannot read '" + text + "' as a number");
  }
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  int v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw ConfigError("key '" + key + "': cannot read '" + text + "' as an integer");
  return v;
}

template <class T, class F>
std::string join(const std::vector<T>& v, F&& fmt) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += fmt(v[i]);
  }
  return s;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void Config::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || trim(line.substr(0, eq)).empty()) {
      throw ConfigError(path + ":" + std::to_string(number) + ": expected key = value");
    }
    raw_[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
}

void Config::set_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || trim(text.substr(0, eq)).empty()) {
    throw ConfigError("expected key=value, got '" + text + "'");
  }
  raw_[trim(text.substr(0, eq))] = trim(text.substr(eq + 1));
}

const std::string* Config::lookup(const std::string& key) {
  used_.insert(key);
  const auto it = raw_.find(key);
  return it == raw_.end() ? nullptr : &it->second;
}

double Config::get_double(const std::string& key, double fallback) {
  const auto* s = lookup(key);
  const double v = s ? parse_double(key, *s) : fallback;
  resolved_[key] = format_double(v);
  return v;
}

int Config::get_int(const std::string& key, int fallback) {
  const auto* s = lookup(key);
  const int v = s ? parse_int(key, *s) : fallback;
  resolved_[key] = std::to_string(v);
  return v;
}

bool Config::get_bool(const std::string& key, bool fallback) {
  const auto* s = lookup(key);
  bool v = fallback;
  if (s) {
    if (*s == "true" || *s == "1" || *s == "yes") {
      v = true;
    } else if (*s == "false" || *s == "0" || *s == "no") {
      v = false;
    } else {
      throw ConfigError("key '" + key + "': expected true or false, got '" + *s + "'");
    }
  }
  resolved_[key] = v ? "true" : "false";
  return v;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) {
  const auto* s = lookup(key);
  const std::string v = s ? *s : fallback;
  resolved_[key] = v;
  return v;
}

std::vector<double> Config::get_doubles(const std::string& key, const std::vector<double>& fallback) {
  const auto* s = lookup(key);
  std::vector<double> v = fallback;
  if (s) {
    v.clear();
    for (const auto& item : split_list(*s)) v.push_back(parse_double(key, item));
  }
  resolved_[key] = join(v, format_double);
  return v;
}

std::vector<int> Config::get_ints(const std::string& key, const std::vector<int>& fallback) {
  const auto* s = lookup(key);
  std::vector<int> v = fallback;
  if (s) {
    v.clear();
    for (const auto& item : split_list(*s)) v.push_back(parse_int(key, item));
  }
  resolved_[key] = join(v, [](int i) { return std::to_string(i); });
  return v;
}

void Config::reject_unused() const {
  for (const auto& [key, value] : raw_) {
    if (!used_.count(key) && !ignored_.count(key)) throw ConfigError("unknown key '" + key + "'");
  }
}

}  // namespace xxzq::cli
