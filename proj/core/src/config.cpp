#include "memsat/config.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>

#include "memsat/dimacs.hpp"
#include "memsat/errors.hpp"

namespace memsat::config {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad(const std::string& key, const std::string& value, const char* kind) {
  throw ConfigError("config key '" + key + "': '" + value + "' is not " + kind);
}

}  // namespace

KeyValues KeyValues::parse(std::string_view text) {
  KeyValues kv;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto nl = text.find('\n');
    const std::string line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(number) + ": expected key=value");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    if (key.empty()) throw ConfigError("config line " + std::to_string(number) + ": empty key");
    kv.set(key, trim(std::string_view(line).substr(eq + 1)));
  }
  return kv;
}

KeyValues KeyValues::load(const std::string& path) { return parse(dimacs::read_text(path)); }

void KeyValues::set(const std::string& key, std::string value) {
  if (auto it = index_.find(key); it != index_.end()) {
    entries_[it->second].second = std::move(value);
    return;
  }
  index_[key] = entries_.size();
  entries_.emplace_back(key, std::move(value));
}

const std::string& KeyValues::at(const std::string& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) throw ConfigError("missing config key '" + key + "'");
  return entries_[it->second].second;
}

void KeyValues::require_known(const std::vector<std::string>& known) const {
  for (const auto& [k, v] : entries_) {
    bool ok = false;
    for (const auto& name : known) ok |= name == k;
    if (!ok) throw ConfigError("unknown config key '" + k + "'");
  }
}

std::string KeyValues::dump() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + " = " + v + "\n";
  return out;
}

double to_double(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double x = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size()) bad(key, value, "a number");
  return x;
}

long long to_int(const std::string& key, const std::string& value) {
  long long x = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
  if (ec != std::errc{} || p != value.data() + value.size()) {
    // Accept integral values written in floating notation, e.g. 1e6.
    const double d = to_double(key, value);
    if (d != static_cast<double>(static_cast<long long>(d))) bad(key, value, "an integer");
    return static_cast<long long>(d);
  }
  return x;
}

unsigned long long to_uint(const std::string& key, const std::string& value) {
  unsigned long long x = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
  if (ec != std::errc{} || p != value.data() + value.size()) bad(key, value, "an unsigned integer");
  return x;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "on" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "off" || value == "no") return false;
  bad(key, value, "a boolean");
}

std::vector<std::string> to_list(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto comma = value.find(',', start);
    auto item = trim(std::string_view(value).substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (!item.empty()) out.push_back(std::move(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string format_double(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

}  // namespace memsat::config
