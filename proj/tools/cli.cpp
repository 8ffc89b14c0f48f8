#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rmf/errors.hpp"
#include "rmf/euler.hpp"
#include "rmf/primes.hpp"
#include "rmf/stats.hpp"
#include "rmf/verify.hpp"

namespace rmf::cli {

namespace {

// Flags each command understands, in the order they appear in the resolved
// config.
const std::vector<std::pair<std::string, std::vector<std::string>>>& command_keys() {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> keys = {
      {"primes phi", {"x", "y"}},
      {"primes psi", {"x", "y"}},
      {"primes mertens", {"x"}},
      {"sample sum", {"x", "seed", "stream", "model"}},
      {"sample restricted", {"x", "seed", "stream", "model"}},
      {"euler eval", {"cutoff", "t", "seed", "stream", "model"}},
      {"euler meansq", {"cutoff", "model"}},
      {"euler v1", {"x", "seed", "model"}},
      {"euler v5", {"x", "seed", "model", "truncation_j", "quad"}},
      {"verify rough", {"x", "B", "W", "quad"}},
      {"verify gaussian", {"x", "seed", "n_large", "model"}},
      {"verify concentration", {"x", "trials", "seed", "model", "truncation_j", "quad"}},
      {"mc",
       {"x", "trials", "seed", "model", "truncation_j", "quad", "q_list", "tail_thresholds",
        "with_v1", "with_v5"}},
  };
  return keys;
}

const std::vector<std::string>& keys_for(const std::string& command) {
  for (const auto& [name, keys] : command_keys()) {
    if (name == command) return keys;
  }
  throw UsageError("unknown command '" + command + "'");
}

bool multi_x(const std::string& command) { return command == "mc"; }

// Integers, optionally written as 1e6.
std::uint64_t parse_count(const std::string& s, const char* what) {
  std::uint64_t v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc() && end == s.data() + s.size()) return v;
  double d = 0.0;
  auto [dend, dec] = std::from_chars(s.data(), s.data() + s.size(), d);
  if (dec == std::errc() && dend == s.data() + s.size() && std::isfinite(d) && d >= 0.0 &&
      d < 0x1.0p63 && d == std::floor(d)) {
    return static_cast<std::uint64_t>(d);
  }
  throw UsageError(std::string("invalid ") + what + " '" + s + "'");
}

void resolve(Invocation& inv) {
  auto& o = inv.opts;
  if (o.x.empty()) throw UsageError("--x needs a value");
  if (!multi_x(inv.command) && o.x.size() != 1) {
    throw UsageError(inv.command + " takes a single --x");
  }
  const double x0 = static_cast<double>(o.x.front());
  if (inv.command == "verify rough" && o.x.front() >= 16) {
    if (o.B <= 0.0) o.B = std::sqrt(std::sqrt(x0));
    if (o.W <= 0.0) o.W = default_rough_W(o.x.front());
  }
  if ((inv.command == "euler v5" || inv.command == "verify concentration") &&
      o.x.front() >= 16 && o.truncation_j < 0) {
    o.truncation_j = default_truncation_j(o.x.front());
  }
  if (inv.format == Format::Csv && inv.command != "mc") {
    throw UsageError("--format csv is only available for mc");
  }
  try {
    validate(o.quad);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
}

void put(Json& j, const std::string& key, const Options& o, bool multi) {
  if (key == "x") {
    j["x"] = multi ? Json(o.x) : Json(o.x.front());
  } else if (key == "y") {
    j["y"] = o.y;
  } else if (key == "t") {
    j["t"] = o.t;
  } else if (key == "cutoff") {
    j["cutoff"] = o.cutoff;
  } else if (key == "seed") {
    j["seed"] = o.seed;
  } else if (key == "stream") {
    j["stream"] = o.stream;
  } else if (key == "trials") {
    j["trials"] = o.trials;
  } else if (key == "model") {
    j["model"] = o.model;
  } else if (key == "truncation_j") {
    j["truncation_j"] = o.truncation_j;
  } else if (key == "quad") {
    j["quad"] = o.quad;
  } else if (key == "B") {
    j["B"] = o.B;
  } else if (key == "W") {
    j["W"] = o.W;
  } else if (key == "n_large") {
    j["n_large"] = o.n_large;
  } else if (key == "q_list") {
    j["q_list"] = o.q_list;
  } else if (key == "tail_thresholds") {
    j["tail_thresholds"] = o.tail_thresholds;
  } else if (key == "with_v1") {
    j["with_v1"] = o.with_v1;
  } else if (key == "with_v5") {
    j["with_v5"] = o.with_v5;
  }
}

void get(const Json& j, const std::string& key, Options& o) {
  if (!j.contains(key)) throw UsageError("config is missing '" + key + "'");
  const Json& v = j.at(key);
  if (key == "x") {
    o.x = v.is_array() ? v.get<std::vector<std::uint64_t>>()
                       : std::vector<std::uint64_t>{v.get<std::uint64_t>()};
  } else if (key == "y") {
    o.y = v.get<double>();
  } else if (key == "t") {
    o.t = v.get<double>();
  } else if (key == "cutoff") {
    o.cutoff = v.get<double>();
  } else if (key == "seed") {
    o.seed = v.get<std::uint64_t>();
  } else if (key == "stream") {
    o.stream = v.get<std::uint64_t>();
  } else if (key == "trials") {
    o.trials = v.get<std::uint64_t>();
  } else if (key == "model") {
    o.model = v.get<Model>();
  } else if (key == "truncation_j") {
    o.truncation_j = v.get<int>();
  } else if (key == "quad") {
    o.quad = v.get<QuadratureSpec>();
  } else if (key == "B") {
    o.B = v.get<double>();
  } else if (key == "W") {
    o.W = v.get<double>();
  } else if (key == "n_large") {
    o.n_large = v.get<std::uint64_t>();
  } else if (key == "q_list") {
    o.q_list = v.get<std::vector<double>>();
  } else if (key == "tail_thresholds") {
    o.tail_thresholds = v.get<std::vector<double>>();
  } else if (key == "with_v1") {
    o.with_v1 = v.get<bool>();
  } else if (key == "with_v5") {
    o.with_v5 = v.get<bool>();
  }
}

Json read_meta(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  // csv files carry the meta object on a leading comment line
  if (text.rfind("# ", 0) == 0) text = text.substr(2, text.find('\n') - 2);
  Json doc = Json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    // jsonl: meta is the first line
    doc = Json::parse(text.substr(0, text.find('\n')), nullptr, false);
  }
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("meta")) {
    throw UsageError("'" + path + "' is not an rmf_lab output document");
  }
  return doc.at("meta");
}

unsigned threads_from_env() {
  const char* env = std::getenv("RMF_LAB_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  const std::string s(env);
  unsigned v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) {
    throw UsageError("RMF_LAB_THREADS must be a non-negative integer, got '" + s + "'");
  }
  return v;
}

PrimeTable table_for(std::uint64_t need) {
  need = std::max<std::uint64_t>(need, 16);
  if (need > PrimeTable::kMaxLimit) {
    throw RangeError("x = " + std::to_string(need) + " exceeds the sieve capacity " +
                     std::to_string(PrimeTable::kMaxLimit));
  }
  return PrimeTable(need);
}

std::uint64_t cutoff_limit(double cutoff) {
  if (!(cutoff >= 0.0) || cutoff > static_cast<double>(PrimeTable::kMaxLimit)) {
    throw RangeError("cutoff " + std::to_string(cutoff) + " exceeds the sieve capacity " +
                     std::to_string(PrimeTable::kMaxLimit));
  }
  return static_cast<std::uint64_t>(cutoff);
}

ExperimentConfig experiment_config(const Options& o) {
  ExperimentConfig cfg;
  cfg.model = o.model;
  cfg.x_list = o.x;
  cfg.n_trials = o.trials;
  cfg.base_seed = o.seed;
  cfg.quad = o.quad;
  cfg.truncation_j = o.truncation_j;
  cfg.q_list = o.q_list;
  cfg.tail_thresholds = o.tail_thresholds;
  cfg.with_v1 = o.with_v1;
  cfg.with_v5 = o.with_v5;
  return cfg;
}

struct Output {
  Json meta;
  Json result;                 // single-object commands
  std::vector<Json> records;   // mc
  std::optional<SummaryStats> summary;
  bool failed = false;         // escalated by --strict
};

Json seeds_meta(const Invocation& inv) {
  const auto& keys = keys_for(inv.command);
  const auto& o = inv.opts;
  if (std::find(keys.begin(), keys.end(), "seed") == keys.end()) return Json::object();
  if (inv.command == "mc" || inv.command == "verify concentration") {
    return Json{{"base_seed", o.seed}, {"count", o.trials}, {"stream", 0}};
  }
  if (inv.command == "verify gaussian") {
    return Json{{"seed_small", o.seed}, {"small_stream", 0}, {"large_streams", {1, o.n_large}}};
  }
  const bool has_stream = std::find(keys.begin(), keys.end(), "stream") != keys.end();
  return Json{{"seed", o.seed}, {"stream", has_stream ? o.stream : 0}};
}

Output execute(const Invocation& inv, std::ostream& err) {
  const auto& o = inv.opts;
  const std::string& cmd = inv.command;
  Output out;
  out.meta = Json{{"tool", kToolName},
                  {"version", kVersion},
                  {"command", cmd},
                  {"config", resolved_config(inv)},
                  {"seeds", seeds_meta(inv)}};
  const std::uint64_t x = o.x.front();
  Json& r = out.result;

  if (cmd == "primes phi" || cmd == "primes psi") {
    const auto table = table_for(x);
    const RoughSmoothQuery q{static_cast<double>(x), o.y};
    r = Json{{"x", x}, {"y", o.y}};
    if (cmd == "primes phi") {
      r["phi"] = rough_count(table, q);
    } else {
      r["psi"] = smooth_count(table, q);
    }
  } else if (cmd == "primes mertens") {
    const auto table = table_for(x);
    r = Json{{"x", x}, {"value", mertens_sum(table, static_cast<double>(x))}};
  } else if (cmd == "sample sum") {
    const auto table = table_for(x);
    const RmfSampler s(o.model, o.seed, o.stream);
    const auto prefix = partial_sum_prefix(s, table, x);
    r = Json{{"x", x}, {"re", prefix[x].real()}, {"im", prefix[x].imag()}};
  } else if (cmd == "sample restricted") {
    const auto table = table_for(x);
    const RmfSampler s(o.model, o.seed, o.stream);
    const Complex v = restricted_sum(s, table, x);
    r = Json{{"x", x}, {"re", v.real()}, {"im", v.imag()}};
    if (x >= 16) {
      const Complex z = normalize_sum(v, static_cast<double>(x));
      r["normalized_re"] = z.real();
      r["normalized_im"] = z.imag();
      r["abs"] = std::abs(z);
    }
  } else if (cmd == "euler eval") {
    const auto table = table_for(cutoff_limit(o.cutoff));
    const RmfSampler s(o.model, o.seed, o.stream);
    const auto v = euler_product(s, table, o.cutoff, o.t);
    const Complex c = v.value();
    r = Json{{"cutoff", o.cutoff}, {"t", o.t},      {"log_mag", v.log_mag},
             {"phase", v.phase},   {"re", c.real()}, {"im", c.imag()}};
  } else if (cmd == "euler meansq") {
    const auto table = table_for(cutoff_limit(o.cutoff));
    r = Json{{"cutoff", o.cutoff}, {"value", mean_square_exact(table, o.model, o.cutoff)}};
  } else if (cmd == "euler v1") {
    const auto table = table_for(x);
    const RmfSampler s(o.model, o.seed, 0);
    r = Json{{"x", x},
             {"seed", o.seed},
             {"value", v1_variance(s, table, x)},
             {"expectation", v1_expectation(table, o.model, x)}};
  } else if (cmd == "euler v5") {
    const auto table = table_for(isqrt(x) + 1);
    const RmfSampler s(o.model, o.seed, 0);
    const V5Result v5 = v5_integral(s, table, x, o.quad, o.truncation_j);
    r = Json{{"x", x}, {"seed", o.seed}};
    r.update(Json(v5));
    if (!v5.converged) {
      err << "warning: V5 quadrature hit max_depth before converging\n";
      out.failed = inv.strict;
    }
  } else if (cmd == "verify rough") {
    const auto table = table_for(x);
    const auto rep = rough_integral_three_ways(table, x, o.B, o.W, o.quad, inv.threads);
    r = Json(rep);
    if (!rep.converged) {
      err << "warning: rough integral quadrature hit max_depth before converging\n";
      out.failed = inv.strict;
    }
  } else if (cmd == "verify gaussian") {
    const auto table = table_for(x);
    r = Json(conditional_gaussianity(table, x, o.seed, o.n_large, o.model, inv.threads));
  } else if (cmd == "verify concentration") {
    const auto table = table_for(x);
    r = Json(concentration_experiment(table, x, o.trials, o.quad, o.model, o.truncation_j,
                                      o.seed, inv.threads));
  } else if (cmd == "mc") {
    const auto cfg = experiment_config(o);
    validate(cfg);
    const auto table = table_for(*std::max_element(o.x.begin(), o.x.end()));
    const auto records = run_trials(cfg, table, inv.threads);
    std::size_t errors = 0;
    for (const auto& rec : records) {
      out.records.emplace_back(rec);
      if (rec.error) ++errors;
    }
    if (errors > 0) {
      err << "warning: " << errors << " trial(s) failed\n";
      out.failed = inv.strict;
    }
    out.summary = summarize(cfg, records);
    r = Json(*out.summary);
  } else {
    throw UsageError("unknown command '" + cmd + "'");
  }
  return out;
}

void write_csv(const Output& o, std::ostream& os) {
  os << "# " << Json{{"meta", o.meta}}.dump() << '\n';
  os << "x,q,moment,stderr\n";
  const auto num = [](double v) { return Json(v).dump(); };
  for (const auto& m : o.summary->moments) {
    os << m.x << ',' << num(m.q) << ',' << num(m.value) << ',' << num(m.std_err) << '\n';
  }
  os << "\nx,y,tailfreq\n";
  for (const auto& t : o.summary->tail_frequencies) {
    os << t.x << ',' << num(t.y) << ',' << num(t.frequency) << '\n';
  }
}

void write(const Invocation& inv, const Output& o, std::ostream& os) {
  switch (inv.format) {
    case Format::Json: {
      Json doc{{"meta", o.meta}};
      if (inv.command == "mc") {
        doc["summary"] = o.result;
        doc["records"] = o.records;
      } else {
        doc["result"] = o.result;
      }
      os << doc.dump(2) << '\n';
      break;
    }
    case Format::Jsonl:
      os << Json{{"meta", o.meta}}.dump() << '\n';
      if (inv.command == "mc") {
        for (const auto& rec : o.records) os << rec.dump() << '\n';
      } else {
        os << o.result.dump() << '\n';
      }
      break;
    case Format::Csv:
      write_csv(o, os);
      break;
  }
}

}  // namespace

Json resolved_config(const Invocation& inv) {
  Json j = Json::object();
  for (const auto& key : keys_for(inv.command)) put(j, key, inv.opts, multi_x(inv.command));
  return j;
}

void apply_config(Invocation& inv, const Json& meta) {
  if (!meta.contains("command") || !meta.contains("config")) {
    throw UsageError("config document has no command/config metadata");
  }
  inv.command = meta.at("command").get<std::string>();
  inv.opts = Options{};
  try {
    for (const auto& key : keys_for(inv.command)) get(meta.at("config"), key, inv.opts);
  } catch (const Json::exception& e) {
    throw UsageError(std::string("bad config value: ") + e.what());
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
}

Invocation parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Monte Carlo and quadrature laboratory for random multiplicative functions",
               kToolName};
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  Invocation inv;
  Options& o = inv.opts;
  std::vector<std::string> x_raw;
  std::string model_raw = "steinhaus";
  std::string format_raw = "json";
  std::string out_path;
  std::string config_path;
  std::optional<unsigned> threads;

  app.add_option("--out", out_path, "output file (default: standard output)");
  app.add_option("--format", format_raw, "json, jsonl or csv (csv: mc only)")
      ->check(CLI::IsMember({"json", "jsonl", "csv"}))
      ->capture_default_str();
  app.add_option("--threads", threads, "worker threads, 0 = auto (fallback: RMF_LAB_THREADS)");
  app.add_flag("--strict", inv.strict, "exit 1 when quadrature or a trial is flagged");
  app.add_option("--config", config_path, "re-run the command recorded in an emitted document")
      ->check(CLI::ExistingFile);

  // option builders shared between subcommands
  auto add_x = [&](CLI::App* s, bool many, const char* def) {
    auto* opt = s->add_option("--x", x_raw, many ? "scales x (repeatable; 1e6 notation ok)"
                                                 : "scale x (1e6 notation ok)");
    opt->default_str(def);
    if (!many) opt->expected(1);
  };
  auto add_seed = [&](CLI::App* s) {
    s->add_option("--seed", o.seed, "seed (base seed for multi-trial runs)")->capture_default_str();
  };
  auto add_stream = [&](CLI::App* s) {
    s->add_option("--stream", o.stream, "sampler stream")->capture_default_str();
  };
  auto add_model = [&](CLI::App* s) {
    s->add_option("--model", model_raw, "steinhaus or rademacher")
        ->check(CLI::IsMember({"steinhaus", "rademacher"}))
        ->capture_default_str();
  };
  auto add_trials = [&](CLI::App* s) {
    s->add_option("--trials", o.trials, "number of seeds")->capture_default_str();
  };
  auto add_j = [&](CLI::App* s) {
    s->add_option("--truncation-j", o.truncation_j,
                  "Euler product truncation level, -1 = default for x")
        ->capture_default_str();
  };
  auto add_quad = [&](CLI::App* s) {
    s->add_option("--quad-T", o.quad.T, "integration half-width, 0 = default for x")
        ->capture_default_str();
    s->add_option("--quad-tol", o.quad.rel_tol, "relative tolerance")->capture_default_str();
    s->add_option("--quad-abs-tol", o.quad.abs_tol, "absolute tolerance")->capture_default_str();
    s->add_option("--quad-depth", o.quad.max_depth, "maximum bisection depth")
        ->capture_default_str();
  };
  auto add_cutoff = [&](CLI::App* s) {
    s->add_option("--cutoff", o.cutoff, "product over p <= cutoff")->capture_default_str();
  };

  std::vector<std::pair<CLI::App*, std::string>> leaves;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc,
                  const std::string& full) {
    auto* s = parent->add_subcommand(name, desc);
    leaves.emplace_back(s, full);
    return s;
  };

  auto* primes = app.add_subcommand("primes", "sieve-based counting functions");
  primes->require_subcommand(1);
  auto* phi = leaf(primes, "phi", "rough count Phi(x, y)", "primes phi");
  auto* psi = leaf(primes, "psi", "smooth count Psi(x, y)", "primes psi");
  for (auto* s : {phi, psi}) {
    add_x(s, false, "1000000");
    s->add_option("--y", o.y, "threshold y")->capture_default_str();
  }
  add_x(leaf(primes, "mertens", "sum of 1/p over p <= x", "primes mertens"), false, "1000000");

  auto* sample = app.add_subcommand("sample", "single realizations");
  sample->require_subcommand(1);
  for (auto* s : {leaf(sample, "sum", "S(x) = sum of f(n), n <= x", "sample sum"),
                  leaf(sample, "restricted", "sum of f(n) over n <= x with P(n) > sqrt(x)",
                       "sample restricted")}) {
    add_x(s, false, "1000000");
    add_seed(s);
    add_stream(s);
    add_model(s);
  }

  auto* euler = app.add_subcommand("euler", "random Euler products");
  euler->require_subcommand(1);
  auto* eval = leaf(euler, "eval", "F(1/2 + it) for one realization", "euler eval");
  add_cutoff(eval);
  eval->add_option("--t", o.t, "imaginary part t")->capture_default_str();
  add_seed(eval);
  add_stream(eval);
  add_model(eval);
  auto* meansq = leaf(euler, "meansq", "exact E|F(1/2 + it)|^2", "euler meansq");
  add_cutoff(meansq);
  add_model(meansq);
  auto* v1 = leaf(euler, "v1", "empirical conditional variance V1", "euler v1");
  add_x(v1, false, "1000000");
  add_seed(v1);
  add_model(v1);
  auto* v5 = leaf(euler, "v5", "Euler product integral V5", "euler v5");
  add_x(v5, false, "1000000");
  add_seed(v5);
  add_model(v5);
  add_j(v5);
  add_quad(v5);

  auto* verify = app.add_subcommand("verify", "numerical checks");
  verify->require_subcommand(1);
  auto* rough = leaf(verify, "rough", "rough-number Perron integral, three ways", "verify rough");
  add_x(rough, false, "1000000");
  rough->add_option("--B", o.B, "sieve threshold B, 0 = x^(1/4)")->capture_default_str();
  rough->add_option("--W", o.W, "window W, 0 = max(4, (log log x)^2)")->capture_default_str();
  add_quad(rough);
  auto* gauss = leaf(verify, "gaussian", "conditional Gaussianity, KS distances", "verify gaussian");
  add_x(gauss, false, "1000000");
  add_seed(gauss);
  gauss->add_option("--n-large", o.n_large, "large-prime resamples")->capture_default_str();
  add_model(gauss);
  auto* conc = leaf(verify, "concentration", "V1 against V5 over seeds", "verify concentration");
  add_x(conc, false, "1000000");
  add_trials(conc);
  add_seed(conc);
  add_model(conc);
  add_j(conc);
  add_quad(conc);

  auto* mc = leaf(&app, "mc", "Monte Carlo trials with summary statistics", "mc");
  add_x(mc, true, "1000000");
  add_trials(mc);
  add_seed(mc);
  add_model(mc);
  add_j(mc);
  add_quad(mc);
  mc->add_option("--q", o.q_list, "moment exponents in (0, 2)")->capture_default_str();
  mc->add_option("--tail", o.tail_thresholds, "tail thresholds >= 1")->capture_default_str();
  mc->add_flag("--with-v1", o.with_v1, "also compute V1 per trial");
  mc->add_flag("--with-v5", o.with_v5, "also compute V5 per trial");

  app.require_subcommand(0, 1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    throw UsageError(app.help(), 0);
  } catch (const CLI::CallForAllHelp& e) {
    throw UsageError(app.help("", CLI::AppFormatMode::All), 0);
  } catch (const CLI::CallForVersion& e) {
    throw UsageError(std::string(kToolName) + " " + kVersion, 0);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  for (const auto& [s, full] : leaves) {
    if (s->parsed()) inv.command = full;
  }

  if (!config_path.empty()) {
    if (!inv.command.empty()) throw UsageError("--config cannot be combined with a subcommand");
    apply_config(inv, read_meta(config_path));
  } else {
    if (inv.command.empty()) throw UsageError("a subcommand is required; see --help");
    o.model = parse_model(model_raw);
    if (!x_raw.empty()) {
      o.x.clear();
      for (const auto& s : x_raw) o.x.push_back(parse_count(s, "--x"));
    }
  }

  if (!out_path.empty()) inv.out_path = out_path;
  inv.format = format_raw == "jsonl" ? Format::Jsonl
               : format_raw == "csv" ? Format::Csv
                                     : Format::Json;
  inv.threads = threads ? *threads : threads_from_env();
  resolve(inv);
  return inv;
}

int run(const Invocation& inv, std::ostream& out, std::ostream& err) {
  Output result;
  try {
    result = execute(inv, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  if (inv.out_path) {
    std::ofstream file(*inv.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open '" << *inv.out_path << "' for writing\n";
      return 1;
    }
    write(inv, result, file);
    file.flush();
    if (!file) {
      err << "error: write to '" << *inv.out_path << "' failed\n";
      return 1;
    }
  } else {
    write(inv, result, out);
  }
  return result.failed ? 1 : 0;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Invocation inv;
  try {
    inv = parse_args(args);
  } catch (const UsageError& e) {
    (e.exit_code() == 0 ? out : err) << e.what() << '\n';
    return e.exit_code();
  }
  return run(inv, out, err);
}

}  // namespace rmf::cli
