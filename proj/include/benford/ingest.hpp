#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "benford/significand.hpp"

namespace benford::ingest {

struct SourceLocation {
  std::size_t line = 0;    // 1-based
  std::size_t column = 0;  // 1-based byte column, or field index in tables
};

struct NumberToken {
  ExactDecimal value;
  SourceLocation source;
  std::string raw;
};

struct ScanPolicy {
  bool thousands_separators = false;
  /// Tokens whose raw text fully matches one of these shapes are skipped
  /// and counted as excluded. In a shape `#` stands for any digit; every
  /// other character matches itself ("####" skips four-digit integers).
  std::vector<std::string> skip_shapes;
  /// Table columns to read, by header name. Empty selects all.
  std::vector<std::string> columns;

  bool skips(std::string_view raw) const;
};

struct ScanStats {
  std::size_t tokens = 0;
  std::size_t excluded = 0;
};

using TokenSink = std::function<void(const NumberToken&)>;

/// Emits every numeric token in UTF-8 text. Tokens must be bounded by
/// non-alphanumeric characters, so "A4" and "v2.0" yield nothing.
/// Throws EncodingError on invalid UTF-8 and nothing else.
ScanStats scan_text(std::string_view text, const ScanPolicy& policy,
                    const TokenSink& sink);
/// Line-by-line streaming form of scan_text.
ScanStats scan_stream(std::istream& in, const ScanPolicy& policy,
                      const TokenSink& sink);

/// Convenience form collecting the tokens.
std::vector<NumberToken> collect_tokens(std::string_view text,
                                        const ScanPolicy& policy = {},
                                        ScanStats* stats = nullptr);

enum class TableFormat { csv, tsv };

/// Reads a delimited table with a header row. Cells of the selected
/// columns that are not a single numeric token (after trimming spaces)
/// are excluded and counted. CSV fields may be double-quoted.
/// Throws FormatError on ragged rows and MissingColumn.
ScanStats read_table(std::istream& in, TableFormat format,
                     const ScanPolicy& policy, const TokenSink& sink);

/// Audit-trail row: line,column,raw,value.
void write_token_csv_header(std::ostream& out);
void write_token_csv(std::ostream& out, const NumberToken& token);

}  // namespace benford::ingest
