#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bathsense/discrimination.hpp"
#include "bathsense/probes.hpp"
#include "bathsense/spectral.hpp"

namespace bathsense {

/// Syntax or validation failure in a configuration. Every problem found is
/// listed in `issues()`; syntax problems carry "line N:" prefixes.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  std::vector<std::string> issues_;
};

enum class Spacing { linear, log };

/// A grid axis: `x = 1.5`, `x = [0.5, 1, 2]`, `x = lin(0, 10, 21)` or
/// `x = log(0.01, 10, 31)`.
struct Range {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 1;
  Spacing spacing = Spacing::linear;
  std::vector<double> explicit_values;  // non-empty for list syntax

  std::vector<double> values() const;
};

struct SweepConfig {
  ProbeKind probe = ProbeKind::qubit;
  PreparationLabel prep = PreparationLabel::max_coherent;
  double s = 1.0;
  double omega_c = 1.0;
  double omega0 = 1.0;
  double T1 = 0.0;
  Range T2;
  Range t;
  double z1 = 0.5;
  double z2 = 0.5;
  QuadratureSettings quadrature;
  GainKind eta = GainKind::eta;
  PhaseTreatment phase = PhaseTreatment::skip;
  std::size_t workers = 1;
  /// Temperatures for the spectral (`gamma`) command only.
  Range T;
};

/// Raw `key = value` entries with their source lines, later entries
/// replacing earlier ones.
class ConfigDocument {
 public:
  struct Entry {
    std::string value;
    int line = 0;  // 0 for command-line overrides
  };

  /// Parses the text format: one `key = value` per line, `#` starts a
  /// comment, blank lines ignored. Throws ConfigError listing every
  /// malformed or duplicated line.
  static ConfigDocument parse(std::string_view text);

  void set(const std::string& key, std::string value);
  const Entry* find(const std::string& key) const;
  const std::map<std::string, Entry>& entries() const noexcept { return entries_; }

 private:
  std::map<std::string, Entry> entries_;
};

/// Which keys a command needs.
enum class ConfigUse {
  sweep,     // probe, s, omega_c, T1, T2, t
  spectral,  // s, omega_c, t and the temperature axis T (default 0)
};

/// Validates a document and fills defaults (omega0 1, prep max_coherent,
/// priors 1/2, rel_tol 1e-10, eta by probe kind). `workers` comes from the
/// document, else `default_workers`. Throws ConfigError listing every issue.
SweepConfig build_config(const ConfigDocument& doc, ConfigUse use, std::size_t default_workers);

/// parse, then BATHSENSE_WORKERS, then build with workers defaulting to the
/// available parallelism.
SweepConfig parse_config(std::string_view text, ConfigUse use = ConfigUse::sweep);

/// std::thread::hardware_concurrency(), at least 1.
std::size_t default_worker_count();

/// Copies BATHSENSE_WORKERS (when set) into the document's `workers` key.
void apply_worker_environment(ConfigDocument& doc);

Range parse_range(std::string_view text);

}  // namespace bathsense
