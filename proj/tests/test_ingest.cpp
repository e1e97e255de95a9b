#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "benford/errors.hpp"
#include "benford/gof.hpp"
#include "benford/ingest.hpp"
#include "oracles.hpp"

using namespace benford;
using namespace benford::ingest;

namespace {

std::vector<std::string> raws(const std::vector<NumberToken>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.raw);
  return out;
}

std::vector<NumberToken> table(const std::string& text, TableFormat fmt, ScanPolicy policy,
                               ScanStats* stats = nullptr) {
  std::istringstream in(text);
  std::vector<NumberToken> out;
  const ScanStats s = read_table(in, fmt, policy, [&](const NumberToken& t) { out.push_back(t); });
  if (stats) *stats = s;
  return out;
}

}  // namespace

TEST_CASE("scan_text on prose") {
  ScanPolicy sep;
  sep.thousands_separators = true;
  const auto t = collect_tokens("price rose 0.150 to 2,300", sep);
  REQUIRE(t.size() == 2);
  CHECK(t[0].value == parse_token("0.150"));
  CHECK(t[1].value == parse_token("2300"));
  CHECK(extract_digits(t[0].value, 1).first() == 1);
  CHECK(extract_digits(t[1].value, 1).first() == 2);
  CHECK(t[1].source.line == 1);
  CHECK(t[1].source.column == 21);

  // without separators the comma splits the number
  CHECK(raws(collect_tokens("price rose 0.150 to 2,300")) ==
        std::vector<std::string>{"0.150", "2", "300"});

  CHECK(collect_tokens("").empty());

  const auto planck = collect_tokens("Planck 6.626e-34 J s");
  REQUIRE(planck.size() == 1);
  CHECK(planck[0].value == ExactDecimal{Sign::positive, "6626", -33});
  CHECK(extract_digits(planck[0].value, 1).first() == 6);
}

TEST_CASE("token boundaries") {
  CHECK(collect_tokens("A4 v2.0 x86 3D").empty());
  CHECK(raws(collect_tokens("(12) [3.5], -7; +.25!")) ==
        std::vector<std::string>{"12", "3.5", "-7", "+.25"});
  CHECK(raws(collect_tokens("the year 1938, page 12.")) == std::vector<std::string>{"1938", "12"});
  CHECK(collect_tokens("1.2.3 192.168.0.1").empty());
  CHECK(raws(collect_tokens("a\n 42\n\n7e3")) == std::vector<std::string>{"42", "7e3"});
  const auto t = collect_tokens("a\n 42\n\n7e3");
  CHECK(t[0].source.line == 2);
  CHECK(t[0].source.column == 2);
  CHECK(t[1].source.line == 4);
  CHECK(raws(collect_tokens("12e 5E+")) == std::vector<std::string>{});
  CHECK(raws(collect_tokens("a+.5 b-.25c x.5")) == std::vector<std::string>{});
  CHECK(raws(collect_tokens("caf\xc3\xa9 12 \xe2\x82\xac" "5")) == std::vector<std::string>{"12", "5"});
}

TEST_CASE("skip shapes exclude tokens") {
  ScanPolicy p;
  p.skip_shapes = {"####", "#/#"};
  ScanStats stats;
  const auto t = collect_tokens("In 1938 there were 20229 numbers, 3 of 1938.", p, &stats);
  CHECK(raws(t) == std::vector<std::string>{"20229", "3"});
  CHECK(stats.tokens == 2);
  CHECK(stats.excluded == 2);
  CHECK(p.skips("2024"));
  CHECK_FALSE(p.skips("20245"));
}

TEST_CASE("encoding errors") {
  CHECK_THROWS_AS(collect_tokens("ok 1\nbad \xff 2\n"), EncodingError);
  try {
    collect_tokens("ok 1\nfine\nbad \xc3\x28");
    FAIL("expected EncodingError");
  } catch (const EncodingError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(collect_tokens("\xed\xa0\x80"), EncodingError);  // surrogate
  CHECK_THROWS_AS(collect_tokens("\xc0\xaf"), EncodingError);      // overlong
}

TEST_CASE("scan never throws on valid UTF-8 and tokens re-parse") {
  const std::vector<std::string> pieces = {"0", "1", "9", ".", ",", "e", "E", "+", "-", " ",
                                           "a", "Z", "\n", "\t", "\xc3\xa9", "\xe2\x82\xac",
                                           "\xf0\x9f\x98\x80", "#", "/", "(", ")", "00", "5.5"};
  auto& g = oracle::rng();
  for (int round = 0; round < 2000; ++round) {
    std::string text;
    const int n = static_cast<int>(g() % 60);
    for (int i = 0; i < n; ++i) text += pieces[g() % pieces.size()];
    for (bool sep : {false, true}) {
      ScanPolicy p;
      p.thousands_separators = sep;
      std::vector<NumberToken> tokens;
      REQUIRE_NOTHROW(tokens = collect_tokens(text, p));
      for (const auto& t : tokens) {
        CHECK(parse_token(t.raw, sep) == t.value);
        CHECK(parse_token(format_token(t.value)) == t.value);
        if (!t.value.is_zero()) {
          const auto d = extract_digits(t.value, 1);
          CHECK(std::string(1, static_cast<char>('0' + d.first())) ==
                std::string(1, t.value.digits[t.value.digits.find_first_not_of('0')]));
        }
      }
    }
  }
}

TEST_CASE("counts are stable under line reordering") {
  auto& g = oracle::rng();
  std::vector<std::string> lines = {"alpha 12 beta 3.5",  "2,300 and 4,5678", "v2 A4 77",
                                    "-0.001e3 1938 page 7", "", "6.02e23 mol^-1", "x1 1x 1"};
  ScanPolicy p;
  p.thousands_separators = true;
  p.skip_shapes = {"####"};
  auto count = [&](const std::vector<std::string>& ls) {
    std::string text;
    for (const auto& l : ls) text += l + "\n";
    ScanStats s;
    const auto t = collect_tokens(text, p, &s);
    std::vector<std::string> r = raws(t);
    std::sort(r.begin(), r.end());
    return std::make_pair(s.tokens + s.excluded, r);
  };
  const auto ref = count(lines);
  for (int i = 0; i < 50; ++i) {
    std::shuffle(lines.begin(), lines.end(), g);
    CHECK(count(lines) == ref);
  }
}

TEST_CASE("scan_stream matches scan_text") {
  const std::string text = "1 2\r\n3.5 x\n\n-4e2";
  std::istringstream in(text);
  std::vector<std::string> streamed;
  scan_stream(in, {}, [&](const NumberToken& t) { streamed.push_back(t.raw); });
  CHECK(streamed == raws(collect_tokens(text)));
}

TEST_CASE("read_table") {
  ScanPolicy p;
  p.columns = {"val"};
  auto t = table("name,val\na,0.150\nb,129", TableFormat::csv, p);
  REQUIRE(t.size() == 2);
  CHECK(t[0].value == parse_token("0.150"));
  CHECK(t[1].value == parse_token("129"));
  CHECK(t[1].source.line == 3);
  CHECK(t[1].source.column == 2);

  ScanStats stats;
  t = table("name,val\na,N/A\nb,12\n\nc,\n", TableFormat::csv, p, &stats);
  CHECK(t.size() == 1);
  CHECK(stats.excluded == 2);

  t = table("name\tval\nx\t 7 \n", TableFormat::tsv, p);
  REQUIRE(t.size() == 1);
  CHECK(t[0].raw == "7");

  ScanPolicy sep = p;
  sep.thousands_separators = true;
  t = table("name,val\n\"big, one\",\"2,300\"\n\"q\"\"uote\",5\n", TableFormat::csv, sep);
  REQUIRE(t.size() == 2);
  CHECK(t[0].value == parse_token("2300"));

  // all columns when none are selected
  t = table("a,b\n1,2\n3,x\n", TableFormat::csv, {});
  CHECK(raws(t) == std::vector<std::string>{"1", "2", "3"});

  try {
    table("a,b\n1,2\n3\n", TableFormat::csv, {});
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.row() == 3);
  }
  CHECK_THROWS_AS(table("a,b\n1,2\n", TableFormat::csv, p), MissingColumn);
  CHECK_THROWS_AS(table("a,val\n1,\"2\n", TableFormat::csv, p), FormatError);
  CHECK(table("", TableFormat::csv, p).empty());
}

TEST_CASE("constants fixture reproduces the published counts") {
  std::ifstream in(std::string(BENFORD_DATA_DIR) + "/constants.csv");
  REQUIRE(in);
  ScanPolicy p;
  p.columns = {"value"};
  DigitCensus c;
  const ScanStats s = read_table(in, TableFormat::csv, p, [&](const NumberToken& t) { c.add(t.value); });
  CHECK(s.tokens == 183);
  CHECK(s.excluded == 0);
  const std::vector<std::uint64_t> expected = {63, 37, 18, 15, 15, 13, 7, 7, 8};
  CHECK(std::vector<std::uint64_t>(c.counts().begin(), c.counts().end()) == expected);
}

TEST_CASE("token audit csv") {
  std::ostringstream out;
  write_token_csv_header(out);
  ScanPolicy sep;
  sep.thousands_separators = true;
  for (const auto& t : collect_tokens("x 2,300 y 0.5", sep)) write_token_csv(out, t);
  CHECK(out.str() == "line,column,raw,value\n1,3,\"2,300\",2.300e3\n1,11,0.5,5e-1\n");
}
