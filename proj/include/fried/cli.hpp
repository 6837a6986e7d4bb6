#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace fried::cli {

/// Flat `section.key = value` configuration. Later assignments win, so
/// command-line overrides are applied after the file.
class RunConfig {
 public:
  static RunConfig from_file(const std::string& path);
  static RunConfig from_text(const std::string& text);

  /// Parses `section.key=value`.
  void assign(const std::string& assignment);
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const;
  /// Throws ValidationError if missing.
  std::string get(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback) const;

  const std::map<std::string, std::string>& values() const { return values_; }
  /// Every key read so far with the value used, defaults included.
  const std::map<std::string, std::string>& resolved() const { return resolved_; }

 private:
  std::map<std::string, std::string> values_;
  mutable std::map<std::string, std::string> resolved_;
};

/// Known configuration keys with one-line descriptions.
const std::map<std::string, std::string>& known_keys();
const std::vector<std::string>& command_names();

/// Runs one command. Reports and data go to out (or the io.output file);
/// diagnostics go to err. Returns 0 on success, 1 on validation failure,
/// 2 on convergence or continuation failure.
int run_command(const std::string& command, const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace fried::cli
