#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "brauerlift/coeff.hpp"
#include "brauerlift/groups.hpp"

namespace brauerlift::cli {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kArtifactVersion = "brauerlift-1";

struct RunConfig {
  std::string group;       // fixture name or path to a .grp file
  u64 p = 0;
  int N = kDefaultPrecision;
  u64 q_override = 0;      // 0: smallest splitting field
  u64 seed = 1;
  std::string cache_dir;   // empty: caching off
  bool json = true;

  void validate() const {
    if (!is_prime(p)) throw Error("ConfigError", "p = " + std::to_string(p) + " is not prime");
    if (N < 1) throw Error("ConfigError", "precision must be at least 1");
  }
};

/// A group name without a path separator or suffix names a shipped fixture.
inline std::string group_path(const std::string& g) {
  if (g.find('/') != std::string::npos || g.ends_with(".grp")) return g;
  return std::string(BRAUERLIFT_FIXTURE_DIR) + "/" + g + ".grp";
}

/// The character table next to the group file, if there is one.
inline std::optional<std::string> table_path(const std::string& g) {
  std::string p = group_path(g);
  std::string csv = p.substr(0, p.size() - 4) + ".csv";
  if (std::filesystem::exists(csv)) return csv;
  return std::nullopt;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IoError", "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::string default_cache_dir() {
  if (const char* e = std::getenv("BRAUERLIFT_CACHE")) return e;
  if (const char* h = std::getenv("HOME")) return std::string(h) + "/.cache/brauerlift";
  return "";
}

/// FNV-1a, stable across platforms.
inline u64 fnv1a(const std::string& s) {
  u64 h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

/// Key over the group file contents, the operation and its arguments.
inline std::string cache_key(const RunConfig& cfg, const std::string& op) {
  std::ostringstream k;
  k << kArtifactVersion << '\n' << slurp(group_path(cfg.group)) << '\n' << op << '\n' << cfg.p << ' ' << cfg.N
    << ' ' << cfg.q_override << ' ' << cfg.seed;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(k.str())));
  return buf;
}

class Cache {
 public:
  explicit Cache(std::string dir) : dir_(std::move(dir)) {}
  bool enabled() const { return !dir_.empty(); }

  std::optional<std::string> get(const std::string& key) const {
    if (!enabled()) return std::nullopt;
    std::filesystem::path f = std::filesystem::path(dir_) / (key + ".json");
    if (!std::filesystem::exists(f)) return std::nullopt;
    return slurp(f.string());
  }

  /// Write to a temporary file in the same directory, then rename over the target.
  void put(const std::string& key, const std::string& value) const {
    if (!enabled()) return;
    std::filesystem::create_directories(dir_);
    std::filesystem::path f = std::filesystem::path(dir_) / (key + ".json");
    std::random_device rd;
    std::filesystem::path tmp = f;
    tmp += ".tmp" + std::to_string(rd());
    {
      std::ofstream out(tmp, std::ios::binary);
      out << value;
      if (!out) throw Error("IoError", "cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, f);
  }

 private:
  std::string dir_;
};

inline json elem_json(const GaloisRing& R, const Elem& e) {
  if (R.degree() == 1) return e.c[0];
  json a = json::array();
  for (int i = 0; i < R.degree(); ++i) a.push_back(e.c[i]);
  return a;
}

inline json vec_json(const GaloisRing& R, const Vec& v) {
  json a = json::array();
  for (auto& e : v) a.push_back(elem_json(R, e));
  return a;
}

inline Elem elem_from_json(const GaloisRing& R, const json& j) {
  if (j.is_number_integer()) return R.from_int(j.get<long long>());
  return R.from_coeffs(j.get<std::vector<long long>>());
}

inline json ring_json(const GaloisRing& R) {
  return {{"p", R.p()}, {"q", R.q()}, {"N", R.N()}, {"modulus", R.modulus()}, {"f", R.spec().f}};
}

inline json subgroup_json(const PermGroup& G, const Subgroup& S) {
  json gens = json::array();
  for (int g : S.gens) gens.push_back(to_cycles(G.elem(g)));
  return {{"order", S.order()}, {"generators", gens}};
}

}  // namespace brauerlift::cli
