#include "benford/ingest.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <unordered_map>

#include "benford/errors.hpp"

namespace benford::ingest {
namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alnum(char c) {
  return is_digit(c) || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
bool digit_at(std::string_view s, std::size_t i) { return i < s.size() && is_digit(s[i]); }

// Returns an empty string when valid, otherwise a description.
std::string utf8_problem(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return "invalid UTF-8 lead byte at byte " + std::to_string(i + 1);
    }
    if (i + len > s.size()) return "truncated UTF-8 sequence at byte " + std::to_string(i + 1);
    for (std::size_t j = 1; j < len; ++j) {
      const auto cc = static_cast<unsigned char>(s[i + j]);
      if ((cc & 0xC0) != 0x80) {
        return "invalid UTF-8 continuation at byte " + std::to_string(i + j + 1);
      }
      cp = (cp << 6) | (cc & 0x3F);
    }
    static constexpr std::uint32_t kMinForLength[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMinForLength[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return "invalid UTF-8 code point at byte " + std::to_string(i + 1);
    }
    i += len;
  }
  return {};
}

// End of the longest numeric-token match starting at i, or i if none.
std::size_t match_number(std::string_view s, std::size_t i, bool separators) {
  std::size_t p = i;
  if (p < s.size() && (s[p] == '+' || s[p] == '-')) ++p;
  const std::size_t int_start = p;
  while (digit_at(s, p)) ++p;
  const std::size_t int_len = p - int_start;
  if (separators && int_len >= 1 && int_len <= 3) {
    // ",ddd" groups, each followed by a non-digit.
    while (p < s.size() && s[p] == ',' && digit_at(s, p + 1) && digit_at(s, p + 2) &&
           digit_at(s, p + 3) && !digit_at(s, p + 4)) {
      p += 4;
    }
  }
  bool has_fraction = false;
  if (p < s.size() && s[p] == '.' && digit_at(s, p + 1)) {
    ++p;
    while (digit_at(s, p)) ++p;
    has_fraction = true;
  }
  if (int_len == 0 && !has_fraction) return i;
  if (p < s.size() && (s[p] == 'e' || s[p] == 'E')) {
    std::size_t q = p + 1;
    if (q < s.size() && (s[q] == '+' || s[q] == '-')) ++q;
    if (digit_at(s, q)) {
      while (digit_at(s, q)) ++q;
      p = q;
    }
  }
  return p;
}

// Skips a run of word characters (and embedded '.' or ',') from i.
std::size_t skip_word(std::string_view s, std::size_t i) {
  while (i < s.size()) {
    if (is_alnum(s[i])) {
      ++i;
    } else if ((s[i] == '.' || s[i] == ',' || s[i] == '+' || s[i] == '-') &&
               i + 1 < s.size() && is_alnum(s[i + 1])) {
      ++i;
    } else {
      break;
    }
  }
  return i;
}

bool starts_number(std::string_view s, std::size_t i) {
  const char c = s[i];
  if (is_digit(c)) return true;
  if (c == '.') return digit_at(s, i + 1);
  if (c == '+' || c == '-') {
    return digit_at(s, i + 1) || (i + 2 < s.size() && s[i + 1] == '.' && digit_at(s, i + 2));
  }
  return false;
}

void emit(std::string_view raw, SourceLocation where, const ScanPolicy& policy,
          const TokenSink& sink, ScanStats& stats) {
  if (policy.skips(raw)) {
    ++stats.excluded;
    return;
  }
  NumberToken token{parse_token(raw, policy.thousands_separators), where, std::string(raw)};
  ++stats.tokens;
  if (sink) sink(token);
}

void scan_line(std::string_view line, std::size_t line_no, const ScanPolicy& policy,
               const TokenSink& sink, ScanStats& stats) {
  if (const auto problem = utf8_problem(line); !problem.empty()) {
    throw EncodingError(line_no, problem);
  }
  std::size_t i = 0;
  while (i < line.size()) {
    if (!starts_number(line, i)) {
      ++i;
      continue;
    }
    if (i > 0 && is_alnum(line[i - 1])) {
      // a sign glued to a word, as in "a+.5", takes the number with it
      std::size_t j = skip_word(line, i);
      if (j == i) j = skip_word(line, i + 1);
      i = std::max(j, i + 1);
      continue;
    }
    const std::size_t end = match_number(line, i, policy.thousands_separators);
    const bool glued = end < line.size() &&
                       (is_alnum(line[end]) || (line[end] == '.' && digit_at(line, end + 1)));
    if (end == i || glued) {
      i = std::max(skip_word(line, i), i + 1);
      continue;
    }
    emit(line.substr(i, end - i), {line_no, i + 1}, policy, sink, stats);
    i = end;
  }
}

std::string_view trim_spaces(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Reads one record; returns false at end of input. `line` tracks the
// 1-based physical line where the record starts.
bool read_record(std::istream& in, TableFormat format, std::vector<std::string>& fields,
                 std::size_t& line, std::size_t& next_line) {
  fields.clear();
  line = next_line;
  if (in.peek() == std::char_traits<char>::eof()) return false;

  const char delim = format == TableFormat::csv ? ',' : '\t';
  std::string field;
  bool quoted = false;
  bool field_was_quoted = false;
  char c = 0;
  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++next_line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && format == TableFormat::csv && field.empty() && !field_was_quoted) {
      quoted = true;
      field_was_quoted = true;
    } else if (c == delim) {
      fields.push_back(std::move(field));
      field.clear();
      field_was_quoted = false;
    } else if (c == '\n') {
      ++next_line;
      break;
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  if (quoted) throw FormatError(line, "unterminated quoted field");
  fields.push_back(std::move(field));
  return true;
}

}  // namespace

bool ScanPolicy::skips(std::string_view raw) const {
  for (const auto& shape : skip_shapes) {
    if (shape.size() != raw.size()) continue;
    bool match = true;
    for (std::size_t i = 0; i < shape.size() && match; ++i) {
      match = shape[i] == '#' ? is_digit(raw[i]) : shape[i] == raw[i];
    }
    if (match) return true;
  }
  return false;
}

ScanStats scan_text(std::string_view text, const ScanPolicy& policy,
                    const TokenSink& sink) {
  ScanStats stats;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    scan_line(line, ++line_no, policy, sink, stats);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return stats;
}

ScanStats scan_stream(std::istream& in, const ScanPolicy& policy,
                      const TokenSink& sink) {
  ScanStats stats;
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    scan_line(line, ++line_no, policy, sink, stats);
  }
  return stats;
}

std::vector<NumberToken> collect_tokens(std::string_view text, const ScanPolicy& policy,
                                        ScanStats* stats) {
  std::vector<NumberToken> out;
  const ScanStats s =
      scan_text(text, policy, [&](const NumberToken& t) { out.push_back(t); });
  if (stats) *stats = s;
  return out;
}

ScanStats read_table(std::istream& in, TableFormat format, const ScanPolicy& policy,
                     const TokenSink& sink) {
  ScanStats stats;
  std::vector<std::string> fields;
  std::size_t line = 1;
  std::size_t next_line = 1;
  if (!read_record(in, format, fields, line, next_line)) return stats;

  const std::vector<std::string> header = fields;
  for (const auto& name : header) {
    if (const auto problem = utf8_problem(name); !problem.empty()) {
      throw EncodingError(line, problem);
    }
  }
  std::vector<std::size_t> selected;
  if (policy.columns.empty()) {
    for (std::size_t i = 0; i < header.size(); ++i) selected.push_back(i);
  } else {
    std::unordered_map<std::string_view, std::size_t> index;
    for (std::size_t i = 0; i < header.size(); ++i) {
      index.emplace(trim_spaces(header[i]), i);
    }
    for (const auto& name : policy.columns) {
      const auto it = index.find(name);
      if (it == index.end()) throw MissingColumn(name);
      selected.push_back(it->second);
    }
  }

  std::size_t row = 1;
  while (read_record(in, format, fields, line, next_line)) {
    ++row;
    if (fields.size() == 1 && trim_spaces(fields[0]).empty()) continue;  // blank line
    if (fields.size() != header.size()) {
      throw FormatError(row, "expected " + std::to_string(header.size()) + " fields, got " +
                                 std::to_string(fields.size()));
    }
    for (const std::size_t col : selected) {
      const std::string_view cell = trim_spaces(fields[col]);
      if (const auto problem = utf8_problem(cell); !problem.empty()) {
        throw EncodingError(line, problem);
      }
      ExactDecimal value;
      try {
        value = parse_token(cell, policy.thousands_separators);
      } catch (const MalformedToken&) {
        ++stats.excluded;
        continue;
      }
      if (policy.skips(cell)) {
        ++stats.excluded;
        continue;
      }
      ++stats.tokens;
      if (sink) sink(NumberToken{std::move(value), {line, col + 1}, std::string(cell)});
    }
  }
  return stats;
}

void write_token_csv_header(std::ostream& out) { out << "line,column,raw,value\n"; }

void write_token_csv(std::ostream& out, const NumberToken& token) {
  out << token.source.line << ',' << token.source.column << ',';
  if (token.raw.find(',') != std::string::npos) {
    out << '"' << token.raw << '"';
  } else {
    out << token.raw;
  }
  out << ',' << to_scientific(token.value) << '\n';
}

}  // namespace benford::ingest
