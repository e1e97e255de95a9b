#include "benford/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "benford/errors.hpp"
#include "benford/gof.hpp"
#include "benford/ingest.hpp"
#include "benford/model.hpp"
#include "benford/philox.hpp"
#include "benford/report.hpp"
#include "benford/sequences.hpp"
#include "benford/simulation.hpp"

namespace benford {
namespace {

constexpr int kExitError = 1;

struct AnalyzeOptions {
  std::string path;
  std::vector<std::string> columns;
  int position = 1;
  int base = 10;
  std::string format = "text";
  int level = 5;
  bool separators = false;
  std::vector<std::string> skip_shapes;
  std::string input_format = "auto";
  std::string tokens_path;
};

struct GenerateOptions {
  std::string kind;
  std::string config;
  std::string a1, a2;
  std::uint64_t terms = seq::kDefaultFibonacciTerms;
  std::uint64_t below = 0;
  std::string alpha;
  std::uint64_t n = 0;
  unsigned long k = 0;
  std::uint64_t rows = 0;
  int base = 10;
  bool census = false;
  bool values = false;
  std::string format = "text";
  int level = 5;
};

struct SimulateOptions {
  std::string kind = "mult";
  std::string noise = "lognormal:0,1";
  std::uint64_t steps = 50;
  std::uint64_t walkers = 10'000;
  int base = 10;
  std::uint64_t seed = 1;
  double start = 1.0;
  unsigned threads = 1;
  std::string format = "csv";
};

struct ExpectedOptions {
  std::string table = "probs";
  std::string k;
  int base = 10;
  std::uint64_t sample_size = 0;
  int max_j = kMaxCorrelationPosition;
};

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int k = std::stoi(text);
      return {k, k};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::logic_error&) {
    throw DomainError("bad range '" + text + "', expected K or A..B");
  }
}

Level to_level(int level) {
  if (level == 5) return Level::p05;
  if (level == 1) return Level::p01;
  throw DomainError("--level must be 5 or 1");
}

void write_report(std::ostream& out, const ReportDocument& doc, const std::string& format) {
  if (format == "json") {
    out << to_json(doc).dump(2) << '\n';
  } else if (format == "csv") {
    out << to_csv(doc);
  } else {
    out << to_text(doc);
  }
}

std::string describe_policy(const ingest::ScanPolicy& policy) {
  std::string out = policy.thousands_separators ? "separators=on" : "separators=off";
  for (const auto& s : policy.skip_shapes) out += ";skip=" + s;
  for (const auto& c : policy.columns) out += ";column=" + c;
  return out;
}

int cmd_analyze(const AnalyzeOptions& opt, std::ostream& out) {
  ingest::ScanPolicy policy;
  policy.thousands_separators = opt.separators;
  policy.skip_shapes = opt.skip_shapes;
  policy.columns = opt.columns;

  std::string mode = opt.input_format;
  if (mode == "auto") {
    const auto ends_with = [&](const char* ext) {
      const std::string e(ext);
      return opt.path.size() >= e.size() &&
             opt.path.compare(opt.path.size() - e.size(), e.size(), e) == 0;
    };
    mode = ends_with(".csv") ? "csv" : ends_with(".tsv") ? "tsv" : "text";
  }
  if (mode == "text" && !opt.columns.empty()) {
    throw DomainError("--column needs a csv or tsv input");
  }

  std::ifstream file;
  std::istream* in = &std::cin;
  if (opt.path != "-") {
    file.open(opt.path, std::ios::binary);
    if (!file) throw Error("cannot open input");
    in = &file;
  }

  std::ofstream tokens_out;
  if (!opt.tokens_path.empty()) {
    tokens_out.open(opt.tokens_path);
    if (!tokens_out) throw Error("cannot write " + opt.tokens_path);
    ingest::write_token_csv_header(tokens_out);
  }

  DigitCensus census(opt.position, opt.base);
  const ingest::TokenSink sink = [&](const ingest::NumberToken& token) {
    if (tokens_out.is_open()) ingest::write_token_csv(tokens_out, token);
    census.add(token.value);
  };
  const ingest::ScanStats stats =
      mode == "text" ? ingest::scan_stream(*in, policy, sink)
                     : ingest::read_table(*in, mode == "csv" ? ingest::TableFormat::csv
                                                             : ingest::TableFormat::tsv,
                                          policy, sink);
  census.add_exclusion(stats.excluded);

  ReportMeta meta;
  meta.input = opt.path;
  meta.policy = describe_policy(policy);
  meta.timestamp = utc_timestamp();
  const ReportDocument doc = make_report(std::move(census), std::move(meta));
  write_report(out, doc, opt.format);
  return exit_status(doc, to_level(opt.level));
}

seq::SequenceSpec spec_from_flags(const GenerateOptions& opt) {
  if (!opt.config.empty()) {
    std::ifstream in(opt.config);
    if (!in) throw Error("cannot open config " + opt.config);
    std::stringstream text;
    text << in.rdbuf();
    return seq::parse_sequence_config(text.str());
  }
  seq::SequenceSpec spec;
  spec.kind = seq::parse_kind(opt.kind);
  spec.base = opt.base;
  switch (spec.kind) {
    case seq::Kind::fibonacci:
      if (opt.a1.empty() != opt.a2.empty()) {
        throw DomainError("give both --a1 and --a2, or neither for the default seeds");
      }
      if (opt.a1.empty()) {
        spec.seeds = seq::default_fibonacci_seeds();
      } else {
        mpz_class a1, a2;
        if (a1.set_str(opt.a1, 10) != 0 || a2.set_str(opt.a2, 10) != 0) {
          throw DomainError("fibonacci seeds must be integers");
        }
        spec.seeds = {{a1, a2}};
      }
      spec.terms = opt.terms;
      break;
    case seq::Kind::primes:
      spec.bound = opt.below;
      break;
    case seq::Kind::power_alpha:
      if (opt.alpha.empty()) throw DomainError("power-alpha needs --alpha");
      std::tie(spec.alpha_num, spec.alpha_den) = seq::parse_ratio(opt.alpha);
      spec.n_max = opt.n;
      break;
    case seq::Kind::factorial:
      spec.n_max = opt.n;
      break;
    case seq::Kind::power_n:
      spec.exponent = opt.k;
      spec.n_max = opt.n;
      break;
    case seq::Kind::pascal:
      spec.rows = opt.rows;
      break;
  }
  seq::validate(spec);
  return spec;
}

std::string describe_spec(const seq::SequenceSpec& spec) {
  std::string out = std::string("generate ") + seq::to_string(spec.kind);
  switch (spec.kind) {
    case seq::Kind::fibonacci:
      for (const auto& [a1, a2] : spec.seeds) {
        out += fmt::format(" seeds=({},{})", a1.get_str(), a2.get_str());
      }
      out += fmt::format(" terms={}", spec.terms);
      break;
    case seq::Kind::primes:
      out += fmt::format(" below={}", spec.bound);
      break;
    case seq::Kind::power_alpha:
      out += fmt::format(" alpha={}/{} n={}", spec.alpha_num.get_str(), spec.alpha_den.get_str(),
                         spec.n_max);
      break;
    case seq::Kind::factorial:
      out += fmt::format(" n={}", spec.n_max);
      break;
    case seq::Kind::power_n:
      out += fmt::format(" k={} n={}", spec.exponent, spec.n_max);
      break;
    case seq::Kind::pascal:
      out += fmt::format(" rows={}", spec.rows);
      break;
  }
  return out + fmt::format(" base={}", spec.base);
}

int cmd_generate(const GenerateOptions& opt, std::ostream& out) {
  const seq::SequenceSpec spec = spec_from_flags(opt);
  auto gen = seq::make_generator(spec);
  if (opt.census) {
    ReportMeta meta;
    meta.input = describe_spec(spec);
    meta.timestamp = utc_timestamp();
    const ReportDocument doc = make_report(seq::census_of(*gen), std::move(meta));
    write_report(out, doc, opt.format);
    return exit_status(doc, to_level(opt.level));
  }
  while (gen->advance()) {
    if (opt.values) {
      out << gen->value_string() << '\n';
    } else {
      out << gen->digits(1).first() << '\n';
    }
  }
  return 0;
}

int cmd_simulate(const SimulateOptions& opt, std::ostream& out) {
  sim::ProcessSpec spec;
  spec.kind = sim::parse_process_kind(opt.kind);
  spec.noise = sim::Noise::parse(opt.noise);
  spec.steps = opt.steps;
  spec.walkers = opt.walkers;
  spec.base = opt.base;
  spec.seed = opt.seed;
  spec.initial_value = opt.start;
  spec.threads = opt.threads;
  const auto curve = sim::convergence_curve(spec);

  if (opt.format == "json") {
    nlohmann::json doc;
    doc["meta"] = {{"kind", sim::to_string(spec.kind)},
                   {"noise", spec.noise.to_string()},
                   {"steps", spec.steps},
                   {"walkers", spec.walkers},
                   {"base", spec.base},
                   {"start", spec.initial_value},
                   {"seed", spec.seed},
                   {"prng", sim::Philox4x32::kName},
                   {"tool_version", kToolVersion}};
    auto rows = nlohmann::json::array();
    for (const auto& p : curve) rows.push_back({{"step", p.step}, {"d1", round_serialized(p.d1)}});
    doc["curve"] = std::move(rows);
    out << doc.dump(2) << '\n';
    return 0;
  }
  out << fmt::format("# seed={} prng={} kind={} noise={} steps={} walkers={} base={} start={}\n",
                     spec.seed, sim::Philox4x32::kName, sim::to_string(spec.kind),
                     spec.noise.to_string(), spec.steps, spec.walkers, spec.base,
                     spec.initial_value);
  out << "step,d1\n";
  for (const auto& p : curve) out << p.step << ',' << format_serialized(p.d1) << '\n';
  return 0;
}

int cmd_expected(const ExpectedOptions& opt, std::ostream& out) {
  const std::string& table = opt.table;
  if (table == "corr") {
    out << "i,j,rho\n";
    for (int i = 1; i < opt.max_j; ++i) {
      for (int j = i + 1; j <= opt.max_j; ++j) {
        out << i << ',' << j << ',' << format_serialized(digit_correlation(i, j)) << '\n';
      }
    }
    return 0;
  }
  const auto [lo, hi] = parse_range(opt.k.empty() ? (table == "probs" ? "1" : "1..7") : opt.k);
  if (lo > hi) throw DomainError("empty digit-position range");
  if (table == "probs") {
    out << (opt.sample_size > 0 ? "k,digit,probability,expected_count\n" : "k,digit,probability\n");
    for (int k = lo; k <= hi; ++k) {
      if (k < 1 || k > kMaxPosition) throw DomainError("position out of range");
      const DigitDistribution dist = benford_distribution(k, opt.base);
      for (std::size_t i = 0; i < dist.probabilities.size(); ++i) {
        out << k << ',' << dist.first_digit() + static_cast<int>(i) << ','
            << format_serialized(dist.probabilities[i]);
        if (opt.sample_size > 0) {
          out << ',' << format_serialized(dist.probabilities[i] *
                                          static_cast<double>(opt.sample_size));
        }
        out << '\n';
      }
    }
  } else if (table == "moments") {
    out << "k,mean,variance\n";
    for (int k = lo; k <= hi; ++k) {
      const Moments m = moments(k);
      out << k << ',' << format_serialized(m.mean) << ',' << format_serialized(m.variance) << '\n';
    }
  } else if (table == "tvd") {
    out << "k,tvd\n";
    for (int k = lo; k <= hi; ++k) {
      out << k << ',' << format_serialized(tvd_from_uniform(k)) << '\n';
    }
  } else {
    throw DomainError("unknown table '" + table + "'");
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Significant-digit (Benford) analysis toolkit", "benford"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  AnalyzeOptions an;
  auto* analyze = app.add_subcommand("analyze", "Test a dataset's first-digit law conformance");
  analyze->add_option("path", an.path, "Input file (text, .csv or .tsv), or - for stdin")
      ->required();
  analyze->add_option("--column", an.columns, "Table column to read (repeatable)");
  analyze->add_option("--position", an.position, "Significant-digit position")
      ->check(CLI::Range(1, kMaxDigits));
  analyze->add_option("--base", an.base, "Digit base")->check(CLI::Range(2, 1 << 20));
  analyze->add_option("--format", an.format)->check(CLI::IsMember({"json", "csv", "text"}));
  analyze->add_option("--level", an.level, "Significance level for the exit status")
      ->check(CLI::IsMember({5, 1}));
  analyze->add_flag("--separators", an.separators, "Accept ',' thousands separators");
  analyze->add_option("--skip-shape", an.skip_shapes, "Skip tokens shaped like PATTERN (# = digit)");
  analyze->add_option("--input-format", an.input_format)
      ->check(CLI::IsMember({"auto", "text", "csv", "tsv"}));
  analyze->add_option("--tokens", an.tokens_path, "Write the token audit trail as CSV");

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Emit first digits of a mathematical series");
  generate->add_option("kind", gen.kind,
                       "fibonacci | primes | power-alpha | factorial | power-n | pascal");
  generate->add_option("--config", gen.config, "Read the series from a config file");
  generate->add_option("--a1", gen.a1, "First Fibonacci seed");
  generate->add_option("--a2", gen.a2, "Second Fibonacci seed");
  generate->add_option("--terms", gen.terms, "Fibonacci terms per series");
  generate->add_option("--below", gen.below, "Exclusive prime bound");
  generate->add_option("--alpha", gen.alpha, "alpha as p/q or a decimal");
  generate->add_option("--n", gen.n, "Largest n");
  generate->add_option("--k", gen.k, "Exponent for power-n");
  generate->add_option("--rows", gen.rows, "Pascal triangle rows");
  generate->add_option("--base", gen.base, "Digit base")->check(CLI::Range(2, 1 << 20));
  generate->add_flag("--census", gen.census, "Emit the census report instead of the stream");
  generate->add_flag("--values", gen.values, "Emit exact values instead of digits");
  generate->add_option("--format", gen.format)->check(CLI::IsMember({"json", "csv", "text"}));
  generate->add_option("--level", gen.level)->check(CLI::IsMember({5, 1}));

  SimulateOptions sm;
  auto* simulate = app.add_subcommand("simulate", "Ensemble simulation of a random process");
  simulate->add_option("--kind", sm.kind)->check(CLI::IsMember({"mult", "add"}));
  simulate->add_option("--noise", sm.noise, "FAMILY:PARAMS, e.g. lognormal:0,1");
  simulate->add_option("--steps", sm.steps);
  simulate->add_option("--walkers", sm.walkers);
  simulate->add_option("--base", sm.base)->check(CLI::Range(2, 1 << 20));
  simulate->add_option("--seed", sm.seed);
  simulate->add_option("--start", sm.start, "Initial value");
  simulate->add_option("--threads", sm.threads, "Worker threads (0 = all cores)");
  simulate->add_option("--format", sm.format)->check(CLI::IsMember({"csv", "json"}));

  ExpectedOptions ex;
  auto* expected = app.add_subcommand("expected", "Print tables of the significant-digit law");
  expected->add_option("--table", ex.table)
      ->check(CLI::IsMember({"probs", "moments", "tvd", "corr"}));
  expected->add_option("--k", ex.k, "Position or range A..B");
  expected->add_option("--base", ex.base)->check(CLI::Range(2, 1 << 20));
  expected->add_option("--sample-size", ex.sample_size);
  expected->add_option("--max-j", ex.max_j)->check(CLI::Range(2, kMaxCorrelationPosition));

  std::vector<const char*> argv{"benford"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitError;
  }

  std::string context;
  try {
    if (analyze->parsed()) {
      context = an.path;
      return cmd_analyze(an, out);
    }
    if (generate->parsed()) {
      if (gen.kind.empty() && gen.config.empty()) {
        throw DomainError("generate needs a kind or --config");
      }
      context = gen.config.empty() ? "generate " + gen.kind : gen.config;
      return cmd_generate(gen, out);
    }
    if (simulate->parsed()) {
      context = "simulate";
      return cmd_simulate(sm, out);
    }
    context = "expected";
    return cmd_expected(ex, out);
  } catch (const std::exception& e) {
    err << "error: " << context << ": " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace benford
