#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace xxzq::cli {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Flat key=value configuration. Every lookup records the value actually used,
// so that the resolved set (including defaults) can be written out.
class Config {
public:
  void load_file(const std::string& path);
  void set(const std::string& key, const std::string& value) { raw_[key] = value; }
  // Parses "key=value"; throws ConfigError if there is no '=' or the key is empty.
  void set_assignment(const std::string& text);
  bool has(const std::string& key) const { return raw_.count(key) != 0; }

  double get_double(const std::string& key, double fallback);
  int get_int(const std::string& key, int fallback);
  bool get_bool(const std::string& key, bool fallback);
  std::string get_string(const std::string& key, const std::string& fallback);
  std::vector<double> get_doubles(const std::string& key, const std::vector<double>& fallback);
  std::vector<int> get_ints(const std::string& key, const std::vector<int>& fallback);

  // Marks a key as consumed without resolving it (e.g. values that never reach the output).
  void ignore(const std::string& key) { ignored_.insert(key); }
  // Throws ConfigError naming the first provided key that was never read.
  void reject_unused() const;

  const std::map<std::string, std::string>& resolved() const { return resolved_; }
  void resolve(const std::string& key, const std::string& text) { resolved_[key] = text; }
  void forget(const std::string& key) { resolved_.erase(key); }

private:
  const std::string* lookup(const std::string& key);

  std::map<std::string, std::string> raw_;
  std::map<std::string, std::string> resolved_;
  std::set<std::string> used_;
  std::set<std::string> ignored_;
};

std::string format_double(double v);

}  // namespace xxzq::cli
