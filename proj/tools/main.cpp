// zdim: construct integer sets, estimate their counting dimension and run
// the scaling-parameter experiments. Exit codes: 0 ok, 1 assertion failed,
// 2 usage error, 3 data error.

#include <omp.h>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "app.hpp"
#include "zdim/arithmetic.hpp"
#include "zdim/zset_io.hpp"

using namespace zdim;
using namespace zdim::app;

namespace {

struct Context;

struct Command {
  CLI::App* app = nullptr;
  std::map<std::string, std::string> params;
  std::map<std::string, bool> flags;
  std::vector<std::string> param_names, flag_names;
  std::function<int(Context&)> run;
};

struct Context {
  ExperimentConfig config;
  bool force = false;
  std::vector<std::filesystem::path> inputs, outputs;

  std::optional<std::string> get(const std::string& name) const {
    auto it = config.params.find(name);
    if (it == config.params.end() || it->second.empty()) return std::nullopt;
    return it->second;
  }
  std::string need(const std::string& name) const {
    if (auto v = get(name)) return *v;
    throw UsageError("missing --" + name + " for " + config.command);
  }
  bool flag(const std::string& name) const {
    auto it = config.flags.find(name);
    return it != config.flags.end() && it->second;
  }
  Rational rational(const std::string& name, std::optional<Rational> fallback = std::nullopt) const {
    auto v = get(name);
    if (!v) {
      if (fallback) return *fallback;
      need(name);
    }
    try {
      return parse_rational(*v);
    } catch (const std::invalid_argument&) {
      throw UsageError("--" + name + " expects a rational such as 3/2, got '" + *v + "'");
    }
  }
  Integer integer(const std::string& name, std::optional<Integer> fallback = std::nullopt) const {
    const Rational r = rational(name, fallback ? std::optional<Rational>(Rational(*fallback)) : std::nullopt);
    if (r.get_den() != 1) throw UsageError("--" + name + " expects an integer");
    return r.get_num();
  }
  std::uint64_t count(const std::string& name, std::uint64_t fallback) const {
    const Integer z = integer(name, Integer(static_cast<unsigned long>(fallback)));
    if (z < 0 || !z.fits_ulong_p()) throw UsageError("--" + name + " must be a nonnegative integer");
    return z.get_ui();
  }
  IntegerSet load(const std::string& name) {
    const std::filesystem::path p = need(name);
    inputs.push_back(p);
    return load_zset(p);
  }
  void save(const std::string& name, const IntegerSet& s) {
    const std::filesystem::path p = need(name);
    std::ostringstream os;
    write_zset(os, s);
    write_text(p, os.str(), force);
    outputs.push_back(p);
  }
  /// JSON goes to --json when given, else stdout.
  void emit(const Json& j) {
    const std::string text = j.dump(2) + "\n";
    if (auto p = get("json")) {
      write_text(*p, text, force);
      outputs.emplace_back(*p);
    } else {
      std::cout << text;
    }
  }
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  return out;
}

std::vector<Integer> integer_list(const Context& c, const std::string& name) {
  std::vector<Integer> out;
  for (const auto& tok : split(c.need(name), ',')) {
    try {
      out.emplace_back(tok);
    } catch (const std::invalid_argument&) {
      throw UsageError("--" + name + " expects comma-separated integers, got '" + tok + "'");
    }
  }
  return out;
}

/// Interval "lo,hi" meaning (lo, hi]; defaults to the set's hull.
Interval interval_arg(const Context& c, const std::string& name, const IntegerSet& fallback) {
  auto v = c.get(name);
  if (!v) {
    if (fallback.empty()) throw DataError("empty set has no hull");
    return fallback.hull();
  }
  const auto parts = split(*v, ',');
  if (parts.size() != 2) throw UsageError("--" + name + " expects lo,hi for the interval (lo,hi]");
  try {
    return Interval(Integer(parts[0]), Integer(parts[1]));
  } catch (const std::invalid_argument& e) {
    throw UsageError("--" + name + ": " + e.what());
  }
}

ScanSchedule schedule_arg(const Context& c) {
  ScanSchedule s;
  s.pair_budget = c.count("budget", s.pair_budget);
  if (c.get("min-length")) s.min_length = c.integer("min-length");
  return s;
}

Json set_summary(const IntegerSet& s, const std::string& path) {
  Json j = report_header("set");
  j["path"] = path;
  j["size"] = s.size();
  j["min"] = s.empty() ? Json() : Json(to_string(s.front()));
  j["max"] = s.empty() ? Json() : Json(to_string(s.back()));
  j["provenance"] = s.provenance();
  return j;
}

// ------------------------------------------------------------- subcommands

int run_construct(Context& c) {
  const std::string kind = c.need("kind");
  c.need("out");
  IntegerSet s;
  Json extra = Json::object();
  if (kind == "power") {
    c.need("nmax");
    s = power_set(c.rational("alpha"), c.count("nmax", 0));
  } else if (kind == "polynomial") {
    s = polynomial_set(integer_list(c, "coeffs"), c.integer("n-lo"), c.integer("n-hi"));
  } else if (kind == "cantor") {
    const std::uint32_t base = static_cast<std::uint32_t>(c.count("base", 0));
    if (base < 2) throw UsageError("--base must be at least 2");
    std::vector<std::uint32_t> digits;
    if (c.get("digits"))
      for (const auto& d : integer_list(c, "digits")) digits.push_back(static_cast<std::uint32_t>(d.get_ui()));
    const std::string m = c.get("matrix").value_or("full");
    std::optional<TransitionMatrix> matrix;
    if (m == "full") {
      matrix = TransitionMatrix::full(digits.empty() ? base : digits.size());
    } else {
      c.inputs.emplace_back(m);
      matrix = load_matrix(m);
    }
    c.need("depth");
    const std::size_t depth = c.count("depth", 0);
    const CantorSet cs = cantor_set(CantorSpec{*matrix, base, digits, depth});
    s = cs.set;
    extra["words"] = cs.words;
    extra["nilpotent"] = cs.nilpotent;
  } else if (kind == "ip") {
    s = ip_set(IPParameters{integer_list(c, "k"), integer_list(c, "d")});
  } else if (kind == "walk") {
    c.need("steps");
    s = random_walk_zeros(c.count("seed", 0), c.count("steps", 0));
  } else if (kind == "example2") {
    c.need("depth");
    s = zero_density_full_dim(c.count("depth", 0));
  } else if (kind == "resonant") {
    c.need("depth");
    s = integer_resonant_set(c.rational("alpha"), c.count("depth", 0));
  } else if (kind == "noncompatible") {
    NoncompatibleParams p;
    p.alpha = c.rational("alpha", p.alpha);
    p.beta = c.rational("beta", p.beta);
    p.depth = c.count("depth", p.depth);
    p.growth_factor = c.integer("growth", p.growth_factor);
    p.block_count = c.count("block-count", p.block_count);
    c.need("out-f");
    const NoncompatiblePair pair = noncompatible_pair(p);
    s = pair.e;
    c.save("out-f", pair.f);
    Json mu = Json::array(), nu = Json::array();
    for (std::size_t i = 0; i < pair.mu.size(); ++i) {
      mu.push_back(to_string(pair.mu[i]));
      nu.push_back(to_string(pair.nu[i]));
    }
    extra["mu"] = mu;
    extra["nu"] = nu;
    extra["f_size"] = pair.f.size();
  } else {
    throw UsageError("unknown --kind '" + kind +
                     "' (power, polynomial, cantor, ip, walk, example2, noncompatible, resonant)");
  }
  c.save("out", s);
  Json j = set_summary(s, c.need("out"));
  j["kind"] = "construct:" + kind;
  for (const auto& [k, v] : extra.items()) j[k] = v;
  c.emit(j);
  return 0;
}

int run_perron(Context& c) {
  const std::string m = c.need("matrix");
  c.inputs.emplace_back(m);
  const TransitionMatrix a = load_matrix(m);
  Json j = report_header("perron");
  j["irreducible"] = a.irreducible();
  j["perron"] = to_json(perron(a, c.count("terms", 40)));
  c.emit(j);
  return 0;
}

int run_measure(Context& c) {
  const IntegerSet e = c.load("set");
  const ScanSchedule sched = schedule_arg(c);
  const int modes = c.flag("dim") + c.flag("density") + (c.get("alpha") ? 1 : 0);
  if (modes > 1) throw UsageError("choose one of --dim, --alpha, --density");
  Json j = report_header("measure");
  j["size"] = e.size();
  j["min_length"] = e.empty() ? Json() : Json(to_string(effective_min_length(e, sched)));
  if (c.get("alpha")) {
    j["alpha_measure"] = to_json(alpha_measure_estimate(e, c.rational("alpha"), sched));
  } else if (c.flag("density")) {
    j["density"] = to_json(density_estimate(e, sched));
  } else {
    if (e.size() < 2) throw DataError("degenerate set: dimension needs at least 2 elements");
    j["dimension"] = to_json(dimension_estimate(e, sched));
  }
  c.emit(j);
  return 0;
}

SumsetOptions sumset_arg(const Context& c) { return SumsetOptions{c.count("max-pairs", SumsetOptions{}.max_pairs)}; }

int run_sum(Context& c) {
  const IntegerSet a = c.load("a"), b = c.load("b");
  const Rational lam = c.rational("lambda", Rational(1));
  IntegerSet s = lam == 1 ? sumset(a, b, sumset_arg(c)) : sum_scaled(a, b, lam, sumset_arg(c));
  s.set_provenance("sum lambda=" + to_string(lam) + " of [" + a.provenance() + "] and [" + b.provenance() + "]");
  c.save("out", s);
  c.emit(set_summary(s, c.need("out")));
  return 0;
}

int run_scale(Context& c) {
  const IntegerSet a = c.load("a");
  const Rational lam = c.rational("lambda");
  IntegerSet s = floor_scale(a, lam);
  s.set_provenance("scale lambda=" + to_string(lam) + " of [" + a.provenance() + "]");
  c.save("out", s);
  c.emit(set_summary(s, c.need("out")));
  return 0;
}

int run_star(Context& c) {
  const IntegerSet e = c.load("e"), f = c.load("f");
  StarProduct p = star(e, f);
  p.set.set_provenance("star of [" + e.provenance() + "] by [" + f.provenance() + "]");
  c.save("out", p.set);
  Json j = set_summary(p.set, c.need("out"));
  j["skipped"] = p.skipped;
  c.emit(j);
  return 0;
}

int run_thin(Context& c) {
  const IntegerSet f = c.load("set");
  const Interval i = interval_arg(c, "interval", f);
  const ThinningTrace t = dyadic_thin(f, i, c.rational("alpha"));
  if (c.get("out")) c.save("out", t.final_set);
  Json j = report_header("thin");
  j["interval"] = to_json(i);
  j["thinning"] = to_json(t);
  c.emit(j);
  return 0;
}

int run_diagnose(Context& c) {
  const IntegerSet e = c.load("set");
  Json j = report_header("diagnose");
  j["regularity"] = to_json(regularity_diagnostic(e, schedule_arg(c)));
  const Rational c_min = c.rational("c-min", Rational(1, 4));
  const UniversalityReport u = universality_check(e, c_min);
  j["universality"] = {{"dimension", decimal(u.dimension)}, {"c_min", to_string(u.c_min)}, {"universal", u.universal}};
  if (c.get("other")) {
    const IntegerSet f = c.load("other");
    const CompatibilityReport r = compatibility_check(e, f, c.rational("band", Rational(4)), c_min);
    Json pairs = Json::array();
    for (std::size_t k = 0; k < r.pairs.size(); ++k) {
      if (!r.pairs[k]) continue;
      const auto& p = *r.pairs[k];
      pairs.push_back({{"rung", to_string(r.rungs[k])},
                       {"I", to_json(p.i)},
                       {"J", to_json(p.j)},
                       {"count_e", p.count_e},
                       {"count_f", p.count_f},
                       {"length_ratio", to_string(p.length_ratio)}});
    }
    j["compatibility"] = {{"dim_e", decimal(r.dim_e)}, {"dim_f", decimal(r.dim_f)}, {"found", r.found()},
                          {"rungs", r.rungs.size()}, {"pairs", pairs}};
  }
  c.emit(j);
  return 0;
}

int run_collide(Context& c) {
  const IntegerSet e = c.load("a"), f = c.load("b");
  const Interval i = interval_arg(c, "i", e), jw = interval_arg(c, "j", f);
  const IntegerSet ei = e.restrict_to(i), fj = f.restrict_to(jw);
  Json j = report_header("collide");
  j["I"] = to_json(i);
  j["J"] = to_json(jw);
  if (c.get("lambda")) {
    CollisionOptions o;
    o.max_pairs = c.count("max-pairs", o.max_pairs);
    o.keep_histogram = !c.flag("no-histogram");
    j["collisions"] = to_json(collision_stats(ei, fj, c.rational("lambda"), o));
  }
  if (c.get("lambda-min") || c.get("lambda-max")) {
    const LambdaWindow w(c.rational("lambda-min"), c.rational("lambda-max"));
    j["double_counting"] = to_json(delta_exact(ei, fj, w));
  }
  if (!j.contains("collisions") && !j.contains("double_counting"))
    throw UsageError("collide needs --lambda and/or --lambda-min/--lambda-max");
  c.emit(j);
  return 0;
}

int run_sweep(Context& c) {
  const IntegerSet e = c.load("a"), f = c.load("b");
  const LambdaWindow w(c.rational("lambda-min"), c.rational("lambda-max"));
  SweepOptions o;
  o.samples = c.count("samples", o.samples);
  o.seed = c.count("seed", o.seed);
  o.threshold = to_high(c.rational("threshold", Rational(3, 5)));
  o.max_pairs = c.count("max-pairs", o.max_pairs);
  o.schedule = schedule_arg(c);
  o.collisions = !c.flag("no-collisions");
  const MatchedPair pair{interval_arg(c, "i", e), interval_arg(c, "j", f)};
  const SweepReport r = sweep(e, f, w, {pair}, o);
  Json j = report_header("sweep");
  j["I"] = to_json(pair.i);
  j["J"] = to_json(pair.j);
  const Json body = to_json(r);
  for (const auto& [k, v] : body.items()) j[k] = v;
  c.emit(j);
  if (c.get("assert-threshold")) {
    const double need = c.rational("assert-threshold").get_d();
    if (r.summary.fraction_above < need) {
      std::cerr << "assertion failed: fraction_above " << r.summary.fraction_above << " < " << need << "\n";
      return 1;
    }
  }
  return 0;
}

// ----------------------------------------------------------------- wiring

void add_param(Command& cmd, const std::string& name, const std::string& desc, bool positional = false) {
  cmd.param_names.push_back(name);
  auto& slot = cmd.params[name];
  if (positional)
    cmd.app->add_option(name, slot, desc)->required();
  else
    cmd.app->add_option("--" + name, slot, desc);
}

void add_flag(Command& cmd, const std::string& name, const std::string& desc) {
  cmd.flag_names.push_back(name);
  cmd.app->add_flag("--" + name, cmd.flags[name], desc);
}

ExperimentConfig config_of(const std::string& name, const Command& cmd) {
  ExperimentConfig c;
  c.command = name;
  for (const auto& [k, v] : cmd.params)
    if (!v.empty()) c.params[k] = v;
  for (const auto& [k, v] : cmd.flags) c.flags[k] = v;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zdim: counting dimension of integer sets and their scaled sums"};
  app.set_version_flag("--version", tool_version());
  int threads = 0;
  bool force = false;
  std::string config_path, save_config, manifest_path;
  app.add_option("--threads", threads, "cap on worker threads (output is identical for any value)");
  app.add_flag("--force", force, "overwrite existing output files");
  app.add_option("--config", config_path, "run the command stored in a JSON config");
  app.add_option("--save-config", save_config, "write this invocation as a JSON config");
  app.add_option("--manifest", manifest_path, "write a run manifest (config hash, file digests, wall time)");
  app.require_subcommand(0, 1);

  std::map<std::string, Command> cmds;
  auto make = [&](const std::string& name, const std::string& desc, std::function<int(Context&)> run) -> Command& {
    Command& c = cmds[name];
    c.app = app.add_subcommand(name, desc);
    c.run = std::move(run);
    return c;
  };

  {
    Command& c = make("construct", "build a set and write it as .zset", run_construct);
    add_param(c, "kind", "power|polynomial|cantor|ip|walk|example2|noncompatible|resonant");
    add_param(c, "out", "output .zset path");
    add_param(c, "alpha", "exponent alpha (power, resonant, noncompatible)");
    add_param(c, "beta", "exponent beta (noncompatible)");
    add_param(c, "nmax", "number of terms (power)");
    add_param(c, "coeffs", "coefficients, leading first (polynomial)");
    add_param(c, "n-lo", "first argument (polynomial)");
    add_param(c, "n-hi", "last argument (polynomial)");
    add_param(c, "matrix", "'full' or a matrix file (cantor)");
    add_param(c, "base", "base a (cantor)");
    add_param(c, "digits", "digit of each matrix index (cantor)");
    add_param(c, "depth", "depth (cantor, example2, resonant, noncompatible)");
    add_param(c, "k", "k_1,...,k_n (ip)");
    add_param(c, "d", "d_1,...,d_n (ip)");
    add_param(c, "seed", "seed (walk)");
    add_param(c, "steps", "walk length (walk)");
    add_param(c, "growth", "growth factor (noncompatible)");
    add_param(c, "block-count", "elements per block (noncompatible)");
    add_param(c, "out-f", "second output path (noncompatible)");
    add_param(c, "json", "write the summary here instead of stdout");
  }
  {
    Command& c = make("perron", "Perron eigenvalue and word counts of a transition matrix", run_perron);
    add_param(c, "matrix", "matrix file", true);
    add_param(c, "terms", "number of word counts (default 40)");
    add_param(c, "json", "report path");
  }
  {
    Command& c = make("measure", "dimension, alpha-measure or density estimate", run_measure);
    add_param(c, "set", ".zset file", true);
    add_flag(c, "dim", "counting dimension (default)");
    add_flag(c, "density", "upper Banach density");
    add_param(c, "alpha", "counting alpha-measure at this exponent");
    add_param(c, "budget", "pair-scan budget");
    add_param(c, "min-length", "shortest admissible witness (default ceil(sqrt(hull)))");
    add_param(c, "json", "report path");
  }
  {
    Command& c = make("sum", "A + floor(lambda B)", run_sum);
    add_param(c, "a", "first .zset", true);
    add_param(c, "b", "second .zset", true);
    add_param(c, "lambda", "scaling (default 1)");
    add_param(c, "max-pairs", "size guard on |A||B|");
    add_param(c, "out", "output .zset");
    add_param(c, "json", "summary path");
  }
  {
    Command& c = make("scale", "floor(lambda A)", run_scale);
    add_param(c, "a", "input .zset", true);
    add_param(c, "lambda", "positive rational");
    add_param(c, "out", "output .zset");
    add_param(c, "json", "summary path");
  }
  {
    Command& c = make("star", "E * F = {x_n : n in F}", run_star);
    add_param(c, "e", "E .zset", true);
    add_param(c, "f", "F .zset (indices)", true);
    add_param(c, "out", "output .zset");
    add_param(c, "json", "summary path");
  }
  {
    Command& c = make("thin", "dyadic thinning until the sup-ratio is at most 2", run_thin);
    add_param(c, "set", "input .zset", true);
    add_param(c, "alpha", "exponent");
    add_param(c, "interval", "lo,hi for (lo,hi] (default hull)");
    add_param(c, "out", "thinned .zset");
    add_param(c, "json", "report path");
  }
  {
    Command& c = make("diagnose", "regularity, universality and compatibility diagnostics", run_diagnose);
    add_param(c, "set", "input .zset", true);
    add_param(c, "other", "second set for the compatibility check");
    add_param(c, "band", "allowed length ratio (default 4)");
    add_param(c, "c-min", "counting constant floor (default 1/4)");
    add_param(c, "budget", "pair-scan budget");
    add_param(c, "min-length", "shortest admissible witness");
    add_param(c, "json", "report path");
  }
  {
    Command& c = make("collide", "collision statistics and the double-counting identity", run_collide);
    add_param(c, "a", "E .zset", true);
    add_param(c, "b", "F .zset", true);
    add_param(c, "i", "lo,hi of I (default hull of E)");
    add_param(c, "j", "lo,hi of J (default hull of F)");
    add_param(c, "lambda", "collision histogram at this lambda");
    add_param(c, "lambda-min", "delta over [lambda-min, lambda-max]");
    add_param(c, "lambda-max", "delta over [lambda-min, lambda-max]");
    add_param(c, "max-pairs", "size guard");
    add_flag(c, "no-histogram", "omit s(m)");
    add_param(c, "json", "report path");
  }
  {
    Command& c = make("sweep", "dimension of E + floor(lambda F) over random lambda", run_sweep);
    add_param(c, "a", "E .zset", true);
    add_param(c, "b", "F .zset", true);
    add_param(c, "lambda-min", "window lower end");
    add_param(c, "lambda-max", "window upper end");
    add_param(c, "samples", "number of lambda draws (default 100)");
    add_param(c, "seed", "seed (default 0)");
    add_param(c, "threshold", "dimension threshold (default 3/5)");
    add_param(c, "assert-threshold", "exit 1 unless fraction_above reaches this");
    add_param(c, "i", "lo,hi of I (default hull of E)");
    add_param(c, "j", "lo,hi of J (default hull of F)");
    add_param(c, "budget", "pair-scan budget");
    add_param(c, "min-length", "shortest admissible witness");
    add_param(c, "max-pairs", "size guard");
    add_flag(c, "no-collisions", "skip collision energy");
    add_param(c, "json", "report path");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (threads > 0) omp_set_num_threads(threads);
    Context ctx;
    ctx.force = force;
    const Command* cmd = nullptr;
    if (!config_path.empty()) {
      if (!app.get_subcommands().empty()) throw UsageError("--config replaces the subcommand; give one or the other");
      std::ifstream in(config_path);
      if (!in) throw DataError("cannot open " + config_path);
      Json j;
      try {
        j = Json::parse(in);
      } catch (const Json::parse_error& e) {
        throw DataError(config_path + ": " + e.what());
      }
      const std::string name = j.value("command", "");
      auto it = cmds.find(name);
      if (it == cmds.end()) throw UsageError("config names unknown command '" + name + "'");
      cmd = &it->second;
      ctx.config = ExperimentConfig::from_json(j, cmd->param_names, cmd->flag_names);
    } else {
      if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return 2;
      }
      const std::string name = app.get_subcommands().front()->get_name();
      cmd = &cmds.at(name);
      ctx.config = config_of(name, *cmd);
    }
    if (!save_config.empty()) write_text(save_config, ctx.config.to_json().dump(2) + "\n", force);

    const auto t0 = std::chrono::steady_clock::now();
    const int code = cmd->run(ctx);
    if (!manifest_path.empty()) {
      RunManifest m;
      m.config_sha256 = ctx.config.digest();
      m.tool_version = tool_version();
      for (const auto& p : ctx.inputs) m.inputs.push_back({p.string(), sha256_file(p)});
      for (const auto& p : ctx.outputs) m.outputs.push_back({p.string(), sha256_file(p)});
      m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      write_text(manifest_path, m.to_json().dump(2) + "\n", force);
    }
    return code;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (!app.get_subcommands().empty()) std::cerr << app.get_subcommands().front()->help();
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  }
}
