#include "rpod/manifest.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rpod {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::uint64_t fnv1a_hash(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Manifest Manifest::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open manifest: " + file.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

Manifest Manifest::parse(const std::string& text) {
  Manifest m;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("manifest line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw ConfigError("manifest line " + std::to_string(lineno) + ": empty key");
    if (!section.empty()) key = section + "." + key;
    m.set(key, value);
  }
  return m;
}

void Manifest::save(const std::filesystem::path& file) const {
  std::ofstream out(file);
  if (!out) throw ConfigError("cannot write manifest: " + file.string());
  out << to_string();
}

std::string Manifest::to_string() const {
  std::ostringstream out;
  for (const auto& [k, v] : entries_) out << k << " = " << v << "\n";
  return out.str();
}

bool Manifest::contains(const std::string& key) const { return find(key) != nullptr; }

std::vector<std::string> Manifest::keys() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [k, v] : entries_) out.push_back(k);
  return out;
}

std::vector<std::string> Manifest::keys_in_section(const std::string& section) const {
  std::vector<std::string> out;
  const std::string prefix = section + ".";
  for (const auto& [k, v] : entries_)
    if (k.rfind(prefix, 0) == 0) out.push_back(k.substr(prefix.size()));
  return out;
}

void Manifest::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

void Manifest::set(const std::string& key, double value) { set(key, format_double(value)); }
void Manifest::set(const std::string& key, Index value) { set(key, std::to_string(value)); }
void Manifest::set(const std::string& key, std::uint64_t value) { set(key, std::to_string(value)); }
void Manifest::set(const std::string& key, bool value) { set(key, std::string(value ? "true" : "false")); }

const std::string* Manifest::find(const std::string& key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return &v;
  return nullptr;
}

const std::string& Manifest::get_string(const std::string& key) const {
  const std::string* v = find(key);
  if (!v) throw ConfigError("missing manifest key: " + key);
  return *v;
}

std::string Manifest::get_string(const std::string& key, const std::string& fallback) const {
  const std::string* v = find(key);
  return v ? *v : fallback;
}

double Manifest::get_double(const std::string& key) const {
  const std::string& s = get_string(key);
  try {
    size_t pos = 0;
    double d = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("manifest key " + key + ": not a number: '" + s + "'");
  }
}

double Manifest::get_double(const std::string& key, double fallback) const {
  return contains(key) ? get_double(key) : fallback;
}

Index Manifest::get_index(const std::string& key) const {
  const std::string& s = get_string(key);
  try {
    size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return static_cast<Index>(v);
  } catch (const std::exception&) {
    throw ConfigError("manifest key " + key + ": not an integer: '" + s + "'");
  }
}

Index Manifest::get_index(const std::string& key, Index fallback) const {
  return contains(key) ? get_index(key) : fallback;
}

std::uint64_t Manifest::get_uint64(const std::string& key) const {
  const std::string& s = get_string(key);
  try {
    size_t pos = 0;
    unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw ConfigError("manifest key " + key + ": not an unsigned integer: '" + s + "'");
  }
}

std::uint64_t Manifest::get_uint64(const std::string& key, std::uint64_t fallback) const {
  return contains(key) ? get_uint64(key) : fallback;
}

bool Manifest::get_bool(const std::string& key) const {
  const std::string& s = get_string(key);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("manifest key " + key + ": not a boolean: '" + s + "'");
}

bool Manifest::get_bool(const std::string& key, bool fallback) const {
  return contains(key) ? get_bool(key) : fallback;
}

std::vector<double> Manifest::get_double_list(const std::string& key) const {
  std::vector<double> out;
  std::istringstream in(get_string(key));
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("manifest key " + key + ": bad list element '" + item + "'");
    }
  }
  return out;
}

std::vector<Index> Manifest::get_index_list(const std::string& key) const {
  std::vector<Index> out;
  for (double d : get_double_list(key)) out.push_back(static_cast<Index>(d));
  return out;
}

void Manifest::set_double_list(const std::string& key, const std::vector<double>& values) {
  std::ostringstream s;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) s << ", ";
    s << format_double(values[i]);
  }
  set(key, s.str());
}

void Manifest::set_index_list(const std::string& key, const std::vector<Index>& values) {
  std::ostringstream s;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) s << ", ";
    s << values[i];
  }
  set(key, s.str());
}

}  // namespace rpod
