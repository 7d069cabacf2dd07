#pragma once
// Small I/O and formatting helpers shared by the artifact writers:
// atomic file replacement, deterministic number formatting, FNV hashing
// for config fingerprints, and TSV field splitting.

#include <cstdint>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bilayer {

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string to_hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return std::string(buf);
}

// 12 significant digits; the serialisation used for scores.
inline std::string format_sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

// Edge weights: co-occurrence counts print as integers, reals round-trip.
inline std::string format_weight(double w) {
  if (std::floor(w) == w && std::fabs(w) < 9007199254740992.0) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(w));
    return std::string(buf);
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", w);
  return std::string(buf);
}

// Carried in every CLI artifact so runs can be traced back to their config.
struct ArtifactHeader {
  std::string config_hash;
  std::uint64_t seed = 0;
};

inline std::string tsv_comment_header(const ArtifactHeader& h) {
  return "# config_hash=" + h.config_hash + " seed=" + std::to_string(h.seed) + "\n";
}

// First line of JSON-lines artifacts; readers recognise it by its keys.
inline std::string jsonl_header_line(const ArtifactHeader& h) {
  return "{\"config_hash\":\"" + h.config_hash + "\",\"seed\":" + std::to_string(h.seed) + "}\n";
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Write-then-rename so a crashed run never leaves a half-written artifact.
inline void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
  }
}

inline std::vector<std::string_view> split_tsv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return out;
}

}  // namespace bilayer
