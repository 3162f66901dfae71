#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace memsat::config {

/// Ordered key=value pairs. Blank lines and lines starting with '#' are
/// ignored; whitespace around keys and values is trimmed. A repeated key
/// keeps its last value.
class KeyValues {
 public:
  static KeyValues parse(std::string_view text);
  static KeyValues load(const std::string& path);

  void set(const std::string& key, std::string value);
  bool contains(const std::string& key) const { return index_.count(key) != 0; }
  const std::string& at(const std::string& key) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  /// Throws ConfigError naming the first key not in `known`.
  void require_known(const std::vector<std::string>& known) const;

  std::string dump() const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::map<std::string, std::size_t> index_;
};

double to_double(const std::string& key, const std::string& value);
long long to_int(const std::string& key, const std::string& value);
unsigned long long to_uint(const std::string& key, const std::string& value);
bool to_bool(const std::string& key, const std::string& value);
std::vector<std::string> to_list(const std::string& value);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

}  // namespace memsat::config
