// anfkit: command-line front end.
//
// Exit codes: 0 success, 2 input error, 3 internal verification failure,
// 4 negative verdict from verify-flat.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "anfkit/error.hpp"
#include "anfkit/experiments.hpp"
#include "anfkit/generators.hpp"
#include "anfkit/io.hpp"
#include "anfkit/pipeline.hpp"
#include "anfkit/quadratic.hpp"
#include "anfkit/restriction.hpp"

using namespace anfkit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;
constexpr int kExitNegative = 4;

std::string read_all(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write " + path);
  out << text;
}

std::uint64_t parse_seed(const std::string& text) {
  try {
    std::size_t used = 0;
    const bool hex = text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
    const std::uint64_t v = std::stoull(hex ? text.substr(2) : text, &used, hex ? 16 : 10);
    if (used != text.size() - (hex ? 2 : 0) || text.empty() || text[0] == '-') throw std::invalid_argument(text);
    return v;
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::InvalidConfig, "seed must be a decimal or 0x-prefixed hex integer: " + text);
  }
}

// The given seed, or a fresh one reported on stderr.
std::uint64_t resolve_seed(const std::string& text) {
  if (!text.empty()) return parse_seed(text);
  std::random_device rd;
  const std::uint64_t seed = (std::uint64_t{rd()} << 32) ^ rd();
  std::cerr << "seed: " << seed << '\n';
  return seed;
}

InputFormat input_format(const std::string& name) {
  if (name == "json") return InputFormat::Json;
  if (name == "anf") return InputFormat::Anf;
  return InputFormat::Auto;
}

std::string strip_blanks(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c != ' ' && c != '\t' && c != '\r' && c != '\n') out += c;
  }
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    line = strip_blanks(line);
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

void print_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

void print_flat(const Flat& flat) {
  std::cout << "offset " << flat.offset().to_string() << '\n';
  std::cout << "basis\n";
  for (const auto& b : flat.basis()) std::cout << b.to_string() << '\n';
}

void print_verdict(const Verdict& v) {
  std::cout << "verdict " << to_string(v.kind) << " (" << (v.exhaustive ? "exhaustive" : "sampled")
            << ", " << v.points_checked << " points";
  if (!v.exhaustive) std::cout << ", seed " << v.seed;
  std::cout << ")\n";
  if (v.witness) {
    std::cout << "witness " << v.witness->first.to_string() << ' ' << v.witness->second.to_string()
              << '\n';
  }
}

struct FunctionArgs {
  std::string path;
  std::string format = "auto";
  std::optional<std::size_t> n;

  void add(CLI::App* app) {
    app->add_option("file", path, "function file: JSON container or bare ANF text; - for stdin")
        ->required();
    app->add_option("--format", format, "input format")
        ->check(CLI::IsMember({"auto", "json", "anf"}));
    app->add_option("--n", n, "variable count for bare ANF text");
  }

  FunctionInput load() const { return read_function(read_all(path), input_format(format), n); }
};

// analyze

struct AnalyzeCmd {
  FunctionArgs input;
  bool json = false;

  int run() const {
    const FunctionInput f = input.load();
    const Analysis a = analyze(f.g());
    if (json) {
      print_json(analysis_to_json(a));
      return kExitOk;
    }
    std::cout << "n " << a.n << "\nsparsity " << a.sparsity << "\ndegree " << a.degree
              << "\ncrucial " << a.crucial << "\nmax_occurrence " << a.max_occurrence
              << "\ngreedy_lower_bound " << a.greedy_lower_bound << "\noccurrences";
    for (auto o : a.occurrences) std::cout << ' ' << o;
    std::cout << '\n';
    return kExitOk;
  }
};

// find-flat

struct FindFlatCmd {
  FunctionArgs input;
  std::optional<double> epsilon;
  std::uint64_t samples = kDefaultSampleCap;
  std::string seed;
  bool json = false;

  int run() const {
    const FunctionInput f = input.load();
    PipelineOptions opts;
    opts.sample_cap = samples;
    opts.seed = seed.empty() ? kDefaultVerifySeed : parse_seed(seed);
    const FlatReport r = find_constant_flat(f, epsilon, opts);
    if (json) {
      print_json(flat_report_to_json(r));
      return kExitOk;
    }
    std::cout << "dimension " << r.flat.dimension() << "\nconstant " << (r.constant ? 1 : 0)
              << '\n';
    print_flat(r.flat);
    std::cout << "zeroed";
    for (const auto& s : r.trace) std::cout << " x" << s.var + 1;
    std::cout << "\ndickson t=" << r.dickson.t << " type=" << (r.dickson.type == FormType::I ? "I" : "II")
              << '\n';
    if (r.guaranteed_dim) std::cout << "guaranteed_dim " << *r.guaranteed_dim << '\n';
    print_verdict(r.verification);
    return kExitOk;
  }
};

// verify-flat

struct VerifyFlatCmd {
  FunctionArgs input;
  std::string flat_path;
  std::optional<int> constant;
  std::uint64_t samples = kDefaultSampleCap;
  std::string seed;
  bool json = false;

  int run() const {
    const FunctionInput f = input.load();
    const std::string text = read_all(flat_path);
    Flat flat;
    std::optional<bool> claimed;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
      const Json j = parse_json(text);
      flat = flat_from_json(j);
      if (j.contains("constant") && j.at("constant").is_number_integer()) {
        claimed = j.at("constant").get<int>() != 0;
      }
    } else {
      // Text form: the offset row, then one basis row per line.
      auto rows = lines_of(text);
      if (rows.empty()) throw Error(ErrorCode::SyntaxError, "empty flat file");
      BitVec offset = BitVec::from_string(rows[0]);
      std::vector<BitVec> basis;
      for (std::size_t i = 1; i < rows.size(); ++i) basis.push_back(BitVec::from_string(rows[i]));
      flat = Flat(std::move(offset), std::move(basis));
    }
    if (constant) claimed = *constant != 0;
    if (!claimed) throw Error(ErrorCode::InvalidConfig, "no claimed constant: pass --constant");
    const Verdict v = verify_flat(f, flat, *claimed, samples,
                                  seed.empty() ? kDefaultVerifySeed : parse_seed(seed));
    if (json) {
      print_json(verdict_to_json(v));
    } else {
      print_verdict(v);
    }
    return v.ok() ? kExitOk : kExitNegative;
  }
};

// convert

struct ConvertCmd {
  std::string from;
  std::string to;
  std::string path;
  std::optional<std::size_t> n;
  bool text = false;

  int run() const {
    const std::string body = read_all(path);
    if (from == "truth-table") {
      const TruthTable t = TruthTable::from_string(strip_blanks(body));
      if (to == "truth-table") {
        std::cout << t.to_string() << '\n';
        return kExitOk;
      }
      const Anf f = truth_table_to_anf(t);
      if (text) {
        std::cout << format_anf(f) << '\n';
      } else {
        print_json(container_to_json(FunctionInput(f)));
      }
      return kExitOk;
    }
    const FunctionInput f = read_function(body, InputFormat::Auto, n);
    if (f.bijection()) {
      throw Error(ErrorCode::InvalidConfig, "convert handles containers without a bijection only");
    }
    if (to == "truth-table") {
      std::cout << anf_to_truth_table(f.g()).to_string() << '\n';
    } else if (text) {
      std::cout << format_anf(f.g()) << '\n';
    } else {
      print_json(container_to_json(f));
    }
    return kExitOk;
  }
};

// gen

struct GenCmd {
  std::string family;
  std::size_t n = 0;
  std::size_t m = 1;
  double s = 2.5;
  double multiplier = 0.5;
  std::string seed;
  bool json = false;

  int run() const {
    Anf f;
    std::string comment = family;
    if (family == "majority") {
      f = majority(n);
      comment += " n=" + std::to_string(n);
    } else if (family == "all-ones") {
      f = all_ones_indicator(n);
      comment += " n=" + std::to_string(n);
    } else if (family == "prop6") {
      f = prop6_base();
    } else if (family == "prop6-family") {
      f = prop6_family(m);
      comment += " m=" + std::to_string(m);
    } else if (family == "complete3") {
      f = complete_degree3(n);
      comment += " n=" + std::to_string(n);
    } else if (family == "rand3-half") {
      const std::uint64_t sd = resolve_seed(seed);
      f = random_degree3_half(n, sd);
      comment += " n=" + std::to_string(n) + " seed=" + std::to_string(sd);
    } else {
      Degree3SamplerConfig cfg{n, s, multiplier, resolve_seed(seed)};
      cfg.validate();
      f = random_degree3_sparse(cfg);
      std::ostringstream c;
      c << " n=" << n << " s=" << s << " multiplier=" << multiplier << " seed=" << cfg.seed;
      comment += c.str();
    }
    if (json) {
      print_json(container_to_json(FunctionInput(f, std::nullopt, comment)));
    } else {
      std::cout << format_anf(f) << '\n';
    }
    return kExitOk;
  }
};

// oracle

struct OracleCmd {
  std::string kind;
  FunctionArgs input;
  unsigned threads = 1;
  std::optional<std::size_t> budget;
  bool json = false;

  int run() const {
    const FunctionInput in = input.load();
    if (in.bijection()) {
      throw Error(ErrorCode::InvalidConfig, "oracles take a plain ANF, not a container with a bijection");
    }
    const Anf& f = in.g();
    Json j{{"oracle", kind}, {"n", f.num_vars()}};
    if (kind == "normality") {
      const NormalityResult r = brute_force_normality(f, kDefaultNormalityCap, threads);
      j["normality"] = r.normality;
      j["witness"] = flat_to_json(r.witness);
      if (!json) {
        std::cout << "normality " << r.normality << '\n';
        print_flat(r.witness);
      }
    } else if (kind == "thickness") {
      const std::size_t t = brute_force_thickness(f);
      j["thickness"] = t;
      if (!json) std::cout << "thickness " << t << '\n';
    } else {
      const auto r = exhaustive_hitting_set(f, budget.value_or(f.num_vars()));
      if (r) {
        std::vector<std::size_t> one_based;
        for (auto v : *r) one_based.push_back(v + 1);
        j["hitting_set_size"] = r->size();
        j["variables"] = one_based;
        if (!json) {
          std::cout << "hitting_set_size " << r->size() << "\nvariables";
          for (auto v : one_based) std::cout << " x" << v;
          std::cout << '\n';
        }
      } else {
        j["hitting_set_size"] = nullptr;
        j["variables"] = nullptr;
        if (!json) std::cout << "hitting_set_size exceeds budget\n";
      }
    }
    if (json) print_json(j);
    return kExitOk;
  }
};

// experiment

struct ExperimentCmd {
  std::string kind;
  std::size_t n = 12;
  double s = 2.5;
  std::optional<double> multiplier;
  std::string sampler = "sparse";
  std::size_t trials = 1;
  std::string seed;
  std::size_t per_trial = 1;
  std::optional<std::size_t> k;
  unsigned threads = 1;
  std::string out;
  std::string csv;
  bool timing = false;
  bool json = false;

  int run() const {
    ExperimentConfig cfg;
    cfg.kind = kind == "disperser-flats"  ? ExperimentKind::DisperserFlats
               : kind == "disperser-zero" ? ExperimentKind::DisperserZeroRestrictions
                                          : ExperimentKind::SamplerStats;
    cfg.n = n;
    cfg.s = s;
    cfg.multiplier = multiplier;
    cfg.sampler = sampler == "half" ? SamplerKind::Half : SamplerKind::Sparse;
    cfg.trials = trials;
    cfg.master_seed = resolve_seed(seed);
    cfg.per_trial = per_trial;
    cfg.k = k;
    cfg.threads = threads;
    const ExperimentReport r = run_experiment(cfg);
    const Json j = experiment_report_to_json(r, timing);
    if (!out.empty()) write_file(out, j.dump(2) + "\n");
    if (!csv.empty()) write_file(csv, experiment_trials_csv(r));
    if (json) {
      print_json(j);
      return kExitOk;
    }
    std::cout << "kind " << to_string(cfg.kind) << "\nmaster_seed " << cfg.master_seed << "\ntrials "
              << r.trials.size() << "\nprobability " << r.probability << '\n';
    if (cfg.kind != ExperimentKind::SamplerStats) {
      std::cout << "k " << r.k << "\nhits " << r.total_hits << " of " << r.total_samples << "\nrate "
                << r.rate << "\nwilson95 [" << r.ci.lo << ", " << r.ci.hi << "]\n";
    }
    std::cout << "mean_sparsity " << r.sampler.mean << " (expected " << r.sampler.expected_mean
              << ", " << r.sampler.deviation_sigmas << " sigma)\nasymptotic claims are not verified at this scale\n";
    if (timing) std::cout << "wall_clock_ms " << r.wall_clock_ms << '\n';
    return kExitOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boolean function toolkit: ANF analysis, constant flats, oracles, experiments"};
  app.require_subcommand(1);

  AnalyzeCmd analyze_cmd;
  auto* analyze_app = app.add_subcommand("analyze", "sparsity, degree and crucial-term statistics");
  analyze_cmd.input.add(analyze_app);
  analyze_app->add_flag("--json", analyze_cmd.json);

  FindFlatCmd find_cmd;
  auto* find_app = app.add_subcommand("find-flat", "find and verify a flat on which f is constant");
  find_cmd.input.add(find_app);
  find_app->add_option("--epsilon", find_cmd.epsilon, "report the dimension guarantee for this epsilon");
  find_app->add_option("--samples", find_cmd.samples, "exhaustive verification up to this many points");
  find_app->add_option("--seed", find_cmd.seed, "seed for sampled verification");
  find_app->add_flag("--json", find_cmd.json);

  VerifyFlatCmd verify_cmd;
  auto* verify_app = app.add_subcommand("verify-flat", "check that f is constant on a flat");
  verify_cmd.input.add(verify_app);
  verify_app->add_option("flat", verify_cmd.flat_path, "flat as JSON or text rows")->required();
  verify_app->add_option("--constant", verify_cmd.constant, "claimed value")->check(CLI::Range(0, 1));
  verify_app->add_option("--samples", verify_cmd.samples, "exhaustive verification up to this many points");
  verify_app->add_option("--seed", verify_cmd.seed, "seed for sampled verification");
  verify_app->add_flag("--json", verify_cmd.json);

  ConvertCmd convert_cmd;
  auto* convert_app = app.add_subcommand("convert", "truth table <-> ANF");
  convert_app->add_option("--from", convert_cmd.from)
      ->required()
      ->check(CLI::IsMember({"truth-table", "anf"}));
  convert_app->add_option("--to", convert_cmd.to)->required()->check(CLI::IsMember({"truth-table", "anf"}));
  convert_app->add_option("file", convert_cmd.path)->required();
  convert_app->add_option("--n", convert_cmd.n, "variable count for bare ANF text");
  convert_app->add_flag("--text", convert_cmd.text, "bare ANF text instead of a JSON container");

  GenCmd gen_cmd;
  auto* gen_app = app.add_subcommand("gen", "generate a named function family");
  gen_app->add_option("family", gen_cmd.family)
      ->required()
      ->check(CLI::IsMember({"majority", "all-ones", "prop6", "prop6-family", "complete3", "rand3-half",
                             "rand3-sparse"}));
  gen_app->add_option("--n", gen_cmd.n);
  gen_app->add_option("--m", gen_cmd.m, "block count for prop6-family");
  gen_app->add_option("--s", gen_cmd.s);
  gen_app->add_option("--multiplier", gen_cmd.multiplier, "0.5 or 1");
  gen_app->add_option("--seed", gen_cmd.seed, "decimal or 0x hex");
  gen_app->add_flag("--json", gen_cmd.json, "JSON container with the parameters in its comment");

  OracleCmd oracle_cmd;
  auto* oracle_app = app.add_subcommand("oracle", "exact small-n oracles");
  oracle_app->add_option("kind", oracle_cmd.kind)
      ->required()
      ->check(CLI::IsMember({"normality", "thickness", "hitting-set"}));
  oracle_cmd.input.add(oracle_app);
  oracle_app->add_option("--threads", oracle_cmd.threads)->check(CLI::Range(1u, 256u));
  oracle_app->add_option("--budget", oracle_cmd.budget, "largest hitting set to search for");
  oracle_app->add_flag("--json", oracle_cmd.json);

  ExperimentCmd exp_cmd;
  auto* exp_app = app.add_subcommand("experiment", "seeded Monte-Carlo runs on random cubics");
  exp_app->add_option("kind", exp_cmd.kind)
      ->required()
      ->check(CLI::IsMember({"disperser-flats", "disperser-zero", "sampler-stats"}));
  exp_app->add_option("--n", exp_cmd.n);
  exp_app->add_option("--s", exp_cmd.s);
  exp_app->add_option("--multiplier", exp_cmd.multiplier);
  exp_app->add_option("--sampler", exp_cmd.sampler)->check(CLI::IsMember({"sparse", "half"}));
  exp_app->add_option("--trials", exp_cmd.trials);
  exp_app->add_option("--seed", exp_cmd.seed, "master seed, decimal or 0x hex");
  exp_app->add_option("--per-trial", exp_cmd.per_trial, "flats or restrictions per function");
  exp_app->add_option("--k", exp_cmd.k, "dimension under test");
  exp_app->add_option("--threads", exp_cmd.threads)->check(CLI::Range(1u, 256u));
  exp_app->add_option("--out", exp_cmd.out, "also write the JSON report here");
  exp_app->add_option("--csv", exp_cmd.csv, "write per-trial rows as CSV");
  exp_app->add_flag("--timing", exp_cmd.timing, "include wall-clock time");
  exp_app->add_flag("--json", exp_cmd.json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*analyze_app) return analyze_cmd.run();
    if (*find_app) return find_cmd.run();
    if (*verify_app) return verify_cmd.run();
    if (*convert_app) return convert_cmd.run();
    if (*gen_app) return gen_cmd.run();
    if (*oracle_app) return oracle_cmd.run();
    return exp_cmd.run();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::VerificationFailed ? kExitInternal : kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
}
