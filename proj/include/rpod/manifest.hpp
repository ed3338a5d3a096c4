#ifndef RPOD_MANIFEST_HPP
#define RPOD_MANIFEST_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rpod/common.hpp"

namespace rpod {

// Ordered key = value text file. Format:
//   # comment
//   [section]          -> keys below get a "section." prefix
//   key = value
// Values are kept verbatim as strings; numeric setters format doubles with 17
// significant digits so a manifest round-trips bit-exactly.
class Manifest {
 public:
  Manifest() = default;

  static Manifest load(const std::filesystem::path& file);
  static Manifest parse(const std::string& text);
  void save(const std::filesystem::path& file) const;
  std::string to_string() const;

  bool contains(const std::string& key) const;
  std::vector<std::string> keys() const;
  // Keys under "section." in file order, with the prefix stripped.
  std::vector<std::string> keys_in_section(const std::string& section) const;

  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, const char* value) { set(key, std::string(value)); }
  void set(const std::string& key, double value);
  void set(const std::string& key, Index value);
  void set(const std::string& key, std::uint64_t value);
  void set(const std::string& key, bool value);

  const std::string& get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  Index get_index(const std::string& key) const;
  Index get_index(const std::string& key, Index fallback) const;
  std::uint64_t get_uint64(const std::string& key) const;
  std::uint64_t get_uint64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key) const;
  bool get_bool(const std::string& key, bool fallback) const;

  // Comma-separated list helpers.
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<Index> get_index_list(const std::string& key) const;
  void set_double_list(const std::string& key, const std::vector<double>& values);
  void set_index_list(const std::string& key, const std::vector<Index>& values);

 private:
  const std::string* find(const std::string& key) const;

  std::vector<std::pair<std::string, std::string>> entries_;
};

std::string format_double(double value);  // 17 significant digits

// FNV-1a over raw bytes; used for config hashes in provenance files.
std::uint64_t fnv1a_hash(const std::string& bytes);

}  // namespace rpod

#endif
