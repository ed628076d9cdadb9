#pragma once

// Front-end plumbing shared by the zdim tool and its tests: experiment
// configs, run manifests and JSON renderings of library results.

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "zdim/estimators.hpp"
#include "zdim/generators.hpp"
#include "zdim/marstrand.hpp"
#include "zdim/regularity.hpp"

namespace zdim::app {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "zdim/1";

/// Bad command-line or config input (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable or inconsistent data (exit code 3).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One subcommand invocation: its name plus every parameter as text.
struct ExperimentConfig {
  std::string command;
  std::map<std::string, std::string> params;
  std::map<std::string, bool> flags;

  Json to_json() const;
  /// Rejects a wrong schema tag and fields outside `known_params`/`known_flags`.
  static ExperimentConfig from_json(const Json& j, const std::vector<std::string>& known_params,
                                    const std::vector<std::string>& known_flags);
  std::string digest() const;  // SHA-256 of the canonical JSON text
  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct FileDigest {
  std::string path;
  std::string sha256;
};

struct RunManifest {
  std::string config_sha256;
  std::string tool_version;
  std::vector<FileDigest> inputs;
  std::vector<FileDigest> outputs;
  double wall_seconds = 0;
  Json to_json() const;
};

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);
std::string tool_version();

/// Writes text atomically enough for reports: temp file then rename.
void write_text(const std::filesystem::path& path, const std::string& text, bool force);

Json to_json(const Interval& i);
Json to_json(const DimensionEstimate& d);
Json to_json(const MeasureEstimate& m);
Json to_json(const PerronReport& p);
Json to_json(const ThinningTrace& t);
Json to_json(const RegularityReport& r);
Json to_json(const CollisionReport& c);
Json to_json(const DeltaReport& d);
Json to_json(const SweepReport& s);

/// Decimal rendering of a float summary; exact values use "p/q" strings.
std::string decimal(const HighFloat& x, int digits = 17);

/// Fields shared by every report.
Json report_header(const std::string& kind);

}  // namespace zdim::app
