#include "anfkit/io.hpp"

#include <algorithm>
#include <sstream>

#include "anfkit/error.hpp"
#include "anfkit/restriction.hpp"

namespace anfkit {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::SyntaxError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t as_count(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    bad(std::string(what) + " must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

const std::string& as_string(const Json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + " must be a string");
  return j.get_ref<const std::string&>();
}

BitVec vector_from_json(const Json& j, std::size_t length, const char* what) {
  BitVec v = BitVec::from_string(as_string(j, what));
  if (v.size() != length) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " has length " + std::to_string(v.size()) + ", expected " +
                    std::to_string(length));
  }
  return v;
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::SyntaxError, e.what(), e.byte > 0 ? e.byte - 1 : 0);
  }
}

Json matrix_to_json(const BitMatrix& m) {
  Json rows = Json::array();
  for (const auto& r : m.to_strings()) rows.push_back(r);
  return rows;
}

BitMatrix matrix_from_json(const Json& j, std::size_t cols) {
  if (!j.is_array()) bad("matrix must be an array of row strings");
  std::vector<BitVec> rows;
  for (const auto& r : j) rows.push_back(vector_from_json(r, cols, "matrix row"));
  return BitMatrix::from_rows(std::move(rows), cols);
}

Json container_to_json(const FunctionInput& input) {
  Json j;
  j["n"] = input.num_vars();
  j["anf"] = format_anf(input.g());
  if (input.bijection()) {
    j["bijection"] = {{"matrix", matrix_to_json(input.bijection()->matrix())},
                      {"offset", input.bijection()->offset().to_string()}};
  } else {
    j["bijection"] = nullptr;
  }
  if (!input.comment().empty()) j["comment"] = input.comment();
  return j;
}

FunctionInput container_from_json(const Json& j) {
  const std::size_t n = as_count(field(j, "n"), "n");
  Anf g = parse_anf(as_string(field(j, "anf"), "anf"), n);
  std::optional<AffineMap> bijection;
  if (j.contains("bijection") && !j.at("bijection").is_null()) {
    const Json& b = j.at("bijection");
    BitMatrix m = matrix_from_json(field(b, "matrix"), n);
    if (m.rows() != n) throw Error(ErrorCode::DimensionMismatch, "bijection matrix must be n x n");
    bijection.emplace(std::move(m), vector_from_json(field(b, "offset"), n, "bijection offset"));
  }
  std::string comment;
  if (j.contains("comment")) comment = as_string(j.at("comment"), "comment");
  return FunctionInput(std::move(g), std::move(bijection), std::move(comment));
}

FunctionInput read_function(std::string_view text, InputFormat format,
                            std::optional<std::size_t> num_vars) {
  if (format == InputFormat::Auto) {
    const auto first = text.find_first_not_of(" \t\r\n");
    format = first != std::string_view::npos && text[first] == '{' ? InputFormat::Json
                                                                     : InputFormat::Anf;
  }
  if (format == InputFormat::Json) return container_from_json(parse_json(text));
  std::size_t n = 0;
  if (num_vars) {
    n = *num_vars;
  } else {
    // Largest index mentioned; the parser reports malformed text.
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] != 'x') continue;
      std::size_t j = i + 1;
      while (j < text.size() && (text[j] == ' ' || text[j] == '\t')) ++j;
      std::size_t v = 0;
      while (j < text.size() && text[j] >= '0' && text[j] <= '9' && v < 1'000'000) {
        v = v * 10 + static_cast<std::size_t>(text[j] - '0');
        ++j;
      }
      n = std::max(n, v);
    }
  }
  return FunctionInput(parse_anf(text, n));
}

Json trace_to_json(const RestrictionTrace& trace) {
  Json steps = Json::array();
  for (const auto& s : trace) {
    steps.push_back({{"var", s.var + 1}, {"crucial_before", s.crucial_before}, {"occ", s.occ}});
  }
  return steps;
}

RestrictionTrace trace_from_json(const Json& j) {
  if (!j.is_array()) bad("trace must be an array");
  RestrictionTrace trace;
  for (const auto& s : j) {
    const std::size_t var = as_count(field(s, "var"), "var");
    if (var == 0) throw Error(ErrorCode::IndexOutOfRange, "trace variables are 1-based");
    trace.push_back({var - 1, as_count(field(s, "crucial_before"), "crucial_before"),
                     as_count(field(s, "occ"), "occ")});
  }
  return trace;
}

Json dickson_to_json(const DicksonForm& d) {
  return {{"t", d.t},
          {"type", d.type == FormType::I ? "I" : "II"},
          {"c", d.c ? 1 : 0},
          {"matrix", matrix_to_json(d.map.matrix())},
          {"offset", d.map.offset().to_string()}};
}

DicksonForm dickson_from_json(const Json& j) {
  DicksonForm d;
  d.t = as_count(field(j, "t"), "t");
  const std::string& type = as_string(field(j, "type"), "type");
  if (type != "I" && type != "II") bad("type must be \"I\" or \"II\"");
  d.type = type == "I" ? FormType::I : FormType::II;
  d.c = as_count(field(j, "c"), "c") != 0;
  const std::string& offset = as_string(field(j, "offset"), "offset");
  d.map = AffineMap(matrix_from_json(field(j, "matrix"), offset.size()), BitVec::from_string(offset));
  return d;
}

Json flat_to_json(const Flat& flat) {
  Json basis = Json::array();
  for (const auto& b : flat.basis()) basis.push_back(b.to_string());
  return {{"dimension", flat.dimension()}, {"offset", flat.offset().to_string()}, {"basis", basis}};
}

Flat flat_from_json(const Json& j) {
  const std::string& offset = as_string(field(j, "offset"), "offset");
  const Json& basis = field(j, "basis");
  if (!basis.is_array()) bad("basis must be an array of vector strings");
  std::vector<BitVec> vectors;
  for (const auto& b : basis) vectors.push_back(vector_from_json(b, offset.size(), "basis vector"));
  return Flat(BitVec::from_string(offset), std::move(vectors));
}

Json verdict_to_json(const Verdict& v) {
  Json j{{"verdict", to_string(v.kind)},
         {"value", v.value ? 1 : 0},
         {"mode", v.exhaustive ? "exhaustive" : "sampled"},
         {"points", v.points_checked}};
  if (!v.exhaustive) j["seed"] = v.seed;
  if (v.witness) j["witness"] = {v.witness->first.to_string(), v.witness->second.to_string()};
  return j;
}

Json flat_report_to_json(const FlatReport& report) {
  Json j = flat_to_json(report.flat);
  j["constant"] = report.constant ? 1 : 0;
  j["trace"] = trace_to_json(report.trace);
  j["dickson"] = dickson_to_json(report.dickson);
  if (report.epsilon) j["epsilon"] = *report.epsilon;
  if (report.guaranteed_dim) j["guaranteed_dim"] = *report.guaranteed_dim;
  j["verification"] = verdict_to_json(report.verification);
  return j;
}

Json experiment_report_to_json(const ExperimentReport& report, bool include_timing) {
  const ExperimentConfig& c = report.config;
  Json config{{"kind", to_string(c.kind)},
              {"n", c.n},
              {"s", c.s},
              {"sampler", to_string(c.sampler)},
              {"multiplier", c.sampler == SamplerKind::Half ? 0.5 : c.resolved_multiplier()},
              {"trials", c.trials},
              {"master_seed", c.master_seed}};
  if (c.kind != ExperimentKind::SamplerStats) {
    config["per_trial"] = c.per_trial;
    config["k"] = report.k;
  }
  Json j{{"asymptotic_claim", true},
         {"note", "desk-scale empirical evidence only; asymptotic bounds are not verified"},
         {"config", config},
         {"probability", report.probability}};
  if (c.kind != ExperimentKind::SamplerStats) {
    j["hits"] = report.total_hits;
    j["samples"] = report.total_samples;
    j["rate"] = report.rate;
    j["wilson95"] = {report.ci.lo, report.ci.hi};
  }
  const SamplerSummary& s = report.sampler;
  j["sparsity"] = {{"mean", s.mean},
                   {"variance", s.variance},
                   {"expected_mean", s.expected_mean},
                   {"sigma_of_mean", s.sigma_of_mean},
                   {"deviation_sigmas", s.deviation_sigmas},
                   {"within_4sigma", s.within_4sigma},
                   {"above_n_pow_s", s.above_n_pow_s},
                   {"tail_rate", s.tail_rate}};
  Json trials = Json::array();
  for (std::size_t i = 0; i < report.trials.size(); ++i) {
    const auto& t = report.trials[i];
    Json row{{"trial", i}, {"seed", t.seed}, {"sparsity", t.sparsity}};
    if (c.kind != ExperimentKind::SamplerStats) {
      row["hits"] = t.hits;
      row["samples"] = t.samples;
    }
    trials.push_back(std::move(row));
  }
  j["trials"] = std::move(trials);
  if (include_timing) j["wall_clock_ms"] = report.wall_clock_ms;
  return j;
}

std::string experiment_trials_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "trial,seed,sparsity,hits,samples\n";
  for (std::size_t i = 0; i < report.trials.size(); ++i) {
    const auto& t = report.trials[i];
    out << i << ',' << t.seed << ',' << t.sparsity << ',' << t.hits << ',' << t.samples << '\n';
  }
  return out.str();
}

Analysis analyze(const Anf& f) {
  Analysis a{};
  a.n = f.num_vars();
  a.sparsity = sparsity(f);
  a.degree = degree(f);
  a.crucial = crucial_count(f);
  BitVec all(a.n);
  for (std::size_t i = 0; i < a.n; ++i) all.set(i);
  a.occurrences = occurrence_counts(f, all);
  a.max_occurrence = a.occurrences.empty() ? 0 : *std::max_element(a.occurrences.begin(), a.occurrences.end());
  a.greedy_lower_bound = a.n == 0 ? 0 : (3 * a.crucial + a.n - 1) / a.n;
  return a;
}

Json analysis_to_json(const Analysis& a) {
  return {{"n", a.n},
          {"sparsity", a.sparsity},
          {"degree", a.degree},
          {"crucial", a.crucial},
          {"occurrences", a.occurrences},
          {"max_occurrence", a.max_occurrence},
          {"greedy_lower_bound", a.greedy_lower_bound}};
}

}  // namespace anfkit
