#include "app.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <memory>
#include <set>
#include <sstream>

#ifndef ZDIM_VERSION
#define ZDIM_VERSION "0.0.0"
#endif

namespace zdim::app {

std::string tool_version() { return ZDIM_VERSION; }

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 || EVP_DigestFinal_ex(ctx.get(), md, &len) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return sha256_hex(buf.str());
}

void write_text(const std::filesystem::path& path, const std::string& text, bool force) {
  if (!force && std::filesystem::exists(path))
    throw UsageError(path.string() + " exists; pass --force to overwrite");
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << text;
  }
  std::filesystem::rename(tmp, path);
}

// ------------------------------------------------------------------ config

Json ExperimentConfig::to_json() const {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  Json p = Json::object();
  for (const auto& [k, v] : params) p[k] = v;
  j["params"] = p;
  Json f = Json::object();
  for (const auto& [k, v] : flags) f[k] = v;
  j["flags"] = f;
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const Json& j, const std::vector<std::string>& known_params,
                                             const std::vector<std::string>& known_flags) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  const std::set<std::string> top{"schema", "command", "params", "flags"};
  for (const auto& [k, v] : j.items())
    if (!top.count(k)) throw UsageError("unknown config field '" + k + "'");
  if (!j.contains("schema") || j["schema"] != kSchema) throw UsageError(std::string("config schema must be ") + kSchema);
  if (!j.contains("command") || !j["command"].is_string()) throw UsageError("config needs a command");
  ExperimentConfig c;
  c.command = j["command"].get<std::string>();
  const std::set<std::string> kp(known_params.begin(), known_params.end());
  const std::set<std::string> kf(known_flags.begin(), known_flags.end());
  if (j.contains("params")) {
    for (const auto& [k, v] : j["params"].items()) {
      if (!kp.count(k)) throw UsageError("unknown parameter '" + k + "' for " + c.command);
      if (!v.is_string()) throw UsageError("parameter '" + k + "' must be a string");
      c.params[k] = v.get<std::string>();
    }
  }
  if (j.contains("flags")) {
    for (const auto& [k, v] : j["flags"].items()) {
      if (!kf.count(k)) throw UsageError("unknown flag '" + k + "' for " + c.command);
      if (!v.is_boolean()) throw UsageError("flag '" + k + "' must be true or false");
      c.flags[k] = v.get<bool>();
    }
  }
  return c;
}

std::string ExperimentConfig::digest() const { return sha256_hex(to_json().dump()); }

Json RunManifest::to_json() const {
  Json j;
  j["schema"] = kSchema;
  j["tool_version"] = tool_version;
  j["config_sha256"] = config_sha256;
  auto files = [](const std::vector<FileDigest>& v) {
    Json a = Json::array();
    for (const auto& f : v) a.push_back({{"path", f.path}, {"sha256", f.sha256}});
    return a;
  };
  j["inputs"] = files(inputs);
  j["outputs"] = files(outputs);
  j["wall_seconds"] = wall_seconds;
  return j;
}

// ----------------------------------------------------------------- reports

std::string decimal(const HighFloat& x, int digits) { return x.str(digits); }

Json report_header(const std::string& kind) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = kind;
  j["precision"] = {{"decimal_digits", 17}, {"internal_bits", 128}};
  return j;
}

Json to_json(const Interval& i) { return {{"lo", to_string(i.lo())}, {"hi", to_string(i.hi())}}; }

Json to_json(const DimensionEstimate& d) {
  Json j;
  j["alpha_hat"] = decimal(d.alpha_hat);
  j["alpha_exact"] = d.alpha_exact ? Json(to_string(*d.alpha_exact)) : Json();
  j["witness"] = to_json(d.witness);
  j["count"] = d.count;
  j["pairs_scanned"] = d.pairs_scanned;
  j["subsampled"] = d.subsampled;
  return j;
}

Json to_json(const MeasureEstimate& m) {
  Json j;
  j["alpha"] = to_string(m.alpha);
  j["value"] = decimal(m.value);
  j["value_exact"] = m.value_exact ? Json(to_string(*m.value_exact)) : Json();
  j["witness"] = m.witness ? to_json(*m.witness) : Json();
  j["count"] = m.count;
  j["pairs_scanned"] = m.pairs_scanned;
  j["subsampled"] = m.subsampled;
  return j;
}

Json to_json(const PerronReport& p) {
  Json j;
  j["eigenvalue"] = decimal(p.eigenvalue);
  Json counts = Json::array();
  for (const auto& c : p.word_counts) counts.push_back(to_string(c));
  j["word_counts"] = counts;
  j["ratio_bounds"] = {{"min", decimal(p.ratio_min)}, {"max", decimal(p.ratio_max)}};
  j["iterations"] = p.iterations;
  j["ratio_estimated"] = p.ratio_estimated;
  return j;
}

Json to_json(const ThinningTrace& t) {
  Json j;
  j["initial_s"] = decimal(t.initial_s);
  j["initial_size"] = t.initial_size;
  Json steps = Json::array();
  for (const auto& s : t.steps) steps.push_back({{"size", s.size}, {"s", decimal(s.s)}});
  j["steps"] = steps;
  j["final_size"] = t.final_set.size();
  j["final_s"] = decimal(t.final_s);
  j["stalled"] = t.stalled;
  return j;
}

Json to_json(const RegularityReport& r) {
  Json j;
  j["dimension"] = to_json(r.dimension);
  j["measure"] = to_json(r.measure);
  Json rungs = Json::array();
  for (const auto& g : r.rungs)
    rungs.push_back({{"length", to_string(g.length)}, {"count", g.count}, {"lo", to_string(g.lo)},
                     {"ratio", decimal(g.ratio)}});
  j["rungs"] = rungs;
  j["slope"] = decimal(r.slope);
  j["trend"] = to_string(r.trend);
  return j;
}

Json to_json(const CollisionReport& c) {
  Json j;
  j["lambda"] = to_string(c.lambda);
  j["pairs"] = c.total;
  j["N"] = to_string(c.pair_count);
  j["S"] = c.distinct;
  j["cs_bound"] = to_string(c.cs_bound);
  Json hist = Json::array();
  for (const auto& [m, s] : c.histogram) hist.push_back({{"m", to_string(m)}, {"s", s}});
  j["s"] = hist;
  return j;
}

Json to_json(const DeltaReport& d) {
  Json j;
  j["delta"] = to_string(d.exact_value);
  j["per_pair_terms"] = d.per_pair_terms;
  j["quadrature"] = to_string(d.quadrature_value);
  j["quadrature_decimal"] = decimal(d.quadrature_high);
  j["breakpoints"] = d.breakpoint_count;
  j["identity_holds"] = d.exact_value == d.quadrature_value;
  return j;
}

Json to_json(const SweepReport& s) {
  Json j;
  j["lambda_window"] = {{"lo", to_string(s.window_lo)}, {"hi", to_string(s.window_hi)}};
  j["threshold"] = decimal(s.threshold);
  j["seed"] = s.seed;
  Json recs = Json::array();
  for (const auto& r : s.records) {
    Json x;
    x["lambda"] = to_string(r.lambda);
    x["pair_index"] = r.pair_index;
    x["alpha_hat"] = decimal(r.dimension);
    x["witness"] = to_json(r.witness);
    x["S"] = r.distinct;
    x["target_length"] = to_string(r.target_length);
    x["N"] = r.energy ? Json(to_string(*r.energy)) : Json();
    x["cs_bound"] = r.cs_bound ? Json(to_string(*r.cs_bound)) : Json();
    x["above"] = r.above;
    recs.push_back(x);
  }
  j["records"] = recs;
  const SweepSummary& m = s.summary;
  j["summary"] = {{"count", m.count},
                  {"above", m.above},
                  {"fraction_above", m.fraction_above},
                  {"min", decimal(m.min)},
                  {"median", decimal(m.median)},
                  {"max", decimal(m.max)}};
  return j;
}

}  // namespace zdim::app
