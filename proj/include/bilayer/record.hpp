#pragma once
// Bibliographic record ingestion: author-name canonicalisation, topic tags,
// JSON-lines parsing, and the year-based corpus split.
//
// Canonical author keys are a byte-level fold: UTF-8 aware lowercasing for
// the Latin ranges, enclosing punctuation stripped, whitespace collapsed,
// and a single "Last, First" comma reordered. No initial-vs-full-name
// merging is attempted; pre-disambiguated source ids take precedence.

#include <cctype>
#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bilayer/io.hpp"

namespace bilayer {

namespace detail {

// Decode one UTF-8 code point; malformed bytes pass through as themselves.
inline char32_t utf8_next(std::string_view s, std::size_t& i) {
  unsigned char c = static_cast<unsigned char>(s[i]);
  if (c < 0x80) { i += 1; return c; }
  auto cont = [&](std::size_t k) {
    return i + k < s.size() && (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
  };
  if ((c & 0xE0) == 0xC0 && cont(1)) {
    char32_t cp = (c & 0x1Fu) << 6 | (static_cast<unsigned char>(s[i + 1]) & 0x3Fu);
    i += 2;
    return cp;
  }
  if ((c & 0xF0) == 0xE0 && cont(1) && cont(2)) {
    char32_t cp = (c & 0x0Fu) << 12 | (static_cast<unsigned char>(s[i + 1]) & 0x3Fu) << 6 |
                  (static_cast<unsigned char>(s[i + 2]) & 0x3Fu);
    i += 3;
    return cp;
  }
  if ((c & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
    char32_t cp = (c & 0x07u) << 18 | (static_cast<unsigned char>(s[i + 1]) & 0x3Fu) << 12 |
                  (static_cast<unsigned char>(s[i + 2]) & 0x3Fu) << 6 |
                  (static_cast<unsigned char>(s[i + 3]) & 0x3Fu);
    i += 4;
    return cp;
  }
  i += 1;
  return c;
}

inline void utf8_encode(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Simple lowercase fold covering ASCII, Latin-1 supplement and Latin
// Extended-A; other scripts pass through unchanged.
inline char32_t fold_lower(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if (cp == 0x130) return U'i';
  if (cp == 0x178) return 0xFF;
  if ((cp >= 0x100 && cp <= 0x137) || (cp >= 0x14A && cp <= 0x177)) {
    if ((cp & 1u) == 0) return cp + 1;
    return cp;
  }
  if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E)) {
    if ((cp & 1u) == 1) return cp + 1;
    return cp;
  }
  return cp;
}

inline bool is_space_cp(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\f' ||
         cp == U'\v' || cp == 0xA0 || cp == 0x2009 || cp == 0x200B || cp == 0x3000;
}

inline bool is_strip_punct(char32_t cp) {
  switch (cp) {
    case U'.': case U',': case U';': case U':': case U'!': case U'?':
    case U'\'': case U'"': case U'`': case U'(': case U')': case U'[':
    case U']': case U'{': case U'}': case U'<': case U'>': case U'/':
    case U'\\': case U'|': case U'~': case U'^': case U'*': case U'_':
    case U'+': case U'=': case U'#': case U'$': case U'%': case U'&':
    case U'@': case U'-':
    case 0x2010: case 0x2013: case 0x2014: case 0x2018: case 0x2019:
    case 0x201C: case 0x201D: case 0xAB: case 0xBB:
      return true;
    default:
      return false;
  }
}

inline std::vector<char32_t> decode_fold(std::string_view s) {
  std::vector<char32_t> cps;
  cps.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) cps.push_back(fold_lower(utf8_next(s, i)));
  return cps;
}

inline std::string collapse_ws(const std::vector<char32_t>& cps) {
  std::string out;
  bool pending_space = false;
  bool begun = false;
  for (char32_t cp : cps) {
    if (is_space_cp(cp)) {
      pending_space = begun;
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    begun = true;
    utf8_encode(out, cp);
  }
  return out;
}

}  // namespace detail

// Deterministic canonical key for an author name. Returns "" when nothing
// identifiable remains; the caller decides whether a source id rescues the
// author. Idempotent by construction.
inline std::string canonicalize_name(std::string_view raw_name) {
  std::vector<char32_t> cps = detail::decode_fold(raw_name);

  std::size_t lo = 0, hi = cps.size();
  while (lo < hi && (detail::is_space_cp(cps[lo]) || detail::is_strip_punct(cps[lo]))) ++lo;
  while (hi > lo && (detail::is_space_cp(cps[hi - 1]) || detail::is_strip_punct(cps[hi - 1]))) --hi;
  std::vector<char32_t> body(cps.begin() + static_cast<std::ptrdiff_t>(lo),
                             cps.begin() + static_cast<std::ptrdiff_t>(hi));

  std::size_t commas = 0;
  std::size_t comma_pos = 0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] == U',') { ++commas; comma_pos = i; }
  }
  if (commas == 1) {
    // "Last, First" -> "first last"
    std::vector<char32_t> reordered(body.begin() + static_cast<std::ptrdiff_t>(comma_pos) + 1,
                                    body.end());
    reordered.push_back(U' ');
    reordered.insert(reordered.end(), body.begin(),
                     body.begin() + static_cast<std::ptrdiff_t>(comma_pos));
    body = std::move(reordered);
  }
  return detail::collapse_ws(body);
}

// Case-insensitive identity key for topic labels (whitespace-normalised).
inline std::string normalize_topic_key(std::string_view label) {
  return detail::collapse_ws(detail::decode_fold(label));
}

// Display form of a topic label: trimmed and whitespace-collapsed, case kept.
inline std::string normalize_topic_label(std::string_view label) {
  std::vector<char32_t> cps;
  cps.reserve(label.size());
  std::size_t i = 0;
  while (i < label.size()) cps.push_back(detail::utf8_next(label, i));
  return detail::collapse_ws(cps);
}

struct TopicTag {
  std::string label;     // display form, whitespace-normalised
  double weight = 1.0;   // optional confidence, > 0
};

struct AuthorRef {
  std::string source_id;      // pre-disambiguated id; empty when absent
  std::string raw_name;
  std::string canonical_key;  // derived from raw_name

  const std::string& identity() const { return source_id.empty() ? canonical_key : source_id; }
};

struct BiblioRecord {
  std::string record_id;
  int year = 0;
  std::vector<AuthorRef> authors;  // deduplicated by identity, order kept
  std::vector<TopicTag> topics;    // deduplicated by folded label, order kept
};

struct ParseReport {
  std::size_t parsed = 0;
  std::size_t skipped = 0;          // malformed, missing id/year, year out of range
  std::size_t duplicate_ids = 0;    // later records reusing an id
  std::size_t dropped_authors = 0;  // unidentifiable names without a source id
  std::size_t dropped_topics = 0;   // empty labels after trimming
};

enum class RecordFormat { Jsonl, Csv };

inline RecordFormat parse_record_format(std::string_view s) {
  if (s == "jsonl") return RecordFormat::Jsonl;
  if (s == "csv") return RecordFormat::Csv;
  throw std::invalid_argument("unknown record format: " + std::string(s));
}

namespace detail {

inline std::optional<std::string> json_id_field(const nlohmann::json& v) {
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s.empty()) return std::nullopt;
    return s;
  }
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  return std::nullopt;
}

inline std::optional<int> json_year_field(const nlohmann::json& v) {
  long long y = 0;
  if (v.is_number_integer()) {
    y = v.get<long long>();
  } else if (v.is_string()) {
    try {
      std::size_t pos = 0;
      y = std::stoll(v.get<std::string>(), &pos);
      if (pos != v.get<std::string>().size()) return std::nullopt;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  } else {
    return std::nullopt;
  }
  if (y < 1000 || y > 3000) return std::nullopt;
  return static_cast<int>(y);
}

inline std::optional<BiblioRecord> parse_record_json(const nlohmann::json& obj,
                                                     ParseReport& report) {
  if (!obj.is_object()) return std::nullopt;
  auto id_it = obj.find("id");
  if (id_it == obj.end()) return std::nullopt;
  std::optional<std::string> id = json_id_field(*id_it);
  if (!id) return std::nullopt;
  auto year_it = obj.find("year");
  if (year_it == obj.end()) return std::nullopt;
  std::optional<int> year = json_year_field(*year_it);
  if (!year) return std::nullopt;

  BiblioRecord rec;
  rec.record_id = *id;
  rec.year = *year;

  if (auto it = obj.find("authors"); it != obj.end() && it->is_array()) {
    std::unordered_set<std::string> seen;
    for (const auto& a : *it) {
      AuthorRef ref;
      if (a.is_string()) {
        ref.raw_name = a.get<std::string>();
      } else if (a.is_object()) {
        if (auto n = a.find("name"); n != a.end() && n->is_string())
          ref.raw_name = n->get<std::string>();
        if (auto aid = a.find("id"); aid != a.end()) {
          if (auto s = json_id_field(*aid)) ref.source_id = normalize_topic_label(*s);
        }
      } else {
        continue;
      }
      ref.canonical_key = canonicalize_name(ref.raw_name);
      if (ref.canonical_key.empty() && ref.source_id.empty()) {
        ++report.dropped_authors;
        continue;
      }
      if (seen.insert(ref.identity()).second) rec.authors.push_back(std::move(ref));
    }
  }

  if (auto it = obj.find("fos"); it != obj.end() && it->is_array()) {
    std::unordered_set<std::string> seen;
    for (const auto& t : *it) {
      std::string raw;
      double weight = 1.0;
      if (t.is_string()) {
        raw = t.get<std::string>();
      } else if (t.is_object()) {
        if (auto n = t.find("name"); n != t.end() && n->is_string()) raw = n->get<std::string>();
        if (auto w = t.find("w"); w != t.end() && w->is_number()) {
          double v = w->get<double>();
          if (v > 0) weight = v;
        }
      } else {
        continue;
      }
      std::string label = normalize_topic_label(raw);
      if (label.empty()) {
        ++report.dropped_topics;
        continue;
      }
      if (seen.insert(normalize_topic_key(label)).second)
        rec.topics.push_back(TopicTag{std::move(label), weight});
    }
  }
  return rec;
}

}  // namespace detail

// One record per well-formed line; malformed entries are counted and skipped.
inline std::vector<BiblioRecord> parse_jsonl(std::istream& in, ParseReport& report) {
  std::vector<BiblioRecord> records;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) { blank = false; break; }
    if (blank) continue;

    nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
    if (obj.is_discarded()) {
      ++report.skipped;
      continue;
    }
    std::optional<BiblioRecord> rec = detail::parse_record_json(obj, report);
    if (!rec) {
      ++report.skipped;
      continue;
    }
    if (!seen_ids.insert(rec->record_id).second) {
      ++report.duplicate_ids;
      continue;
    }
    ++report.parsed;
    records.push_back(std::move(*rec));
  }
  return records;
}

inline std::vector<BiblioRecord> parse_corpus(const std::string& path, RecordFormat format,
                                              ParseReport& report) {
  if (format == RecordFormat::Csv)
    throw std::invalid_argument(
        "csv input is a pre-built network directory; records require jsonl");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read corpus: " + path);
  return parse_jsonl(in, report);
}

struct CorpusSplit {
  int cutoff_year = 0;
  std::vector<BiblioRecord> train;  // year <= cutoff
  std::vector<BiblioRecord> test;   // year > cutoff

  std::size_t total() const { return train.size() + test.size(); }
  double train_fraction() const {
    return total() == 0 ? 0.0 : static_cast<double>(train.size()) / static_cast<double>(total());
  }
};

inline CorpusSplit split_by_year(std::vector<BiblioRecord> corpus, int cutoff_year) {
  CorpusSplit split;
  split.cutoff_year = cutoff_year;
  for (auto& rec : corpus) {
    if (rec.year <= cutoff_year)
      split.train.push_back(std::move(rec));
    else
      split.test.push_back(std::move(rec));
  }
  return split;
}

}  // namespace bilayer
