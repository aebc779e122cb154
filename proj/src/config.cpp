#include "bathsense/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <set>
#include <thread>

namespace bathsense {

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
  std::string out = "invalid configuration";
  for (const auto& i : issues) out += "\n  " + i;
  return out;
}

std::string_view trim(std::string_view s) {
  const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() || !std::isfinite(v))
    throw std::invalid_argument("expected a finite number, got '" + std::string(text) + "'");
  return v;
}

std::size_t parse_count(std::string_view text) {
  text = trim(text);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw std::invalid_argument("expected a non-negative integer count, got '" + std::string(text) +
                                "'");
  return v;
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = s.find(',', start);
    parts.push_back(trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "probe",    "prep",    "s",   "omega_c", "omega0",           "T1",         "T2",
      "t",        "T",       "z1",  "z2",      "rel_tol",          "abs_tol",    "omega_max_factor",
      "max_panels", "eta",   "xi",  "workers",
  };
  return keys;
}

GainKind default_gain(ProbeKind probe, PreparationLabel prep) {
  switch (probe) {
    case ProbeKind::qubit: return GainKind::eta;
    case ProbeKind::qutrit:
      return prep == PreparationLabel::qutrit_qubit_like ? GainKind::eta2 : GainKind::eta3;
    case ProbeKind::two_qubit_register: return GainKind::eta4;
  }
  return GainKind::eta;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

std::vector<double> Range::values() const {
  if (!explicit_values.empty()) return explicit_values;
  if (count == 0) return {};
  if (count == 1) return {min};
  std::vector<double> out(count);
  const double last = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / last;
    if (spacing == Spacing::linear)
      out[i] = min + (max - min) * f;
    else
      out[i] = std::exp(std::log(min) + (std::log(max) - std::log(min)) * f);
  }
  out.front() = min;
  out.back() = max;
  return out;
}

Range parse_range(std::string_view text) {
  text = trim(text);
  Range r;
  if (text.empty()) throw std::invalid_argument("empty value");
  if (text.front() == '[') {
    if (text.back() != ']') throw std::invalid_argument("list must end with ']'");
    const std::string_view body = trim(text.substr(1, text.size() - 2));
    if (body.empty()) throw std::invalid_argument("list must not be empty");
    for (std::string_view part : split_commas(body)) r.explicit_values.push_back(parse_number(part));
    r.count = r.explicit_values.size();
    r.min = *std::min_element(r.explicit_values.begin(), r.explicit_values.end());
    r.max = *std::max_element(r.explicit_values.begin(), r.explicit_values.end());
    return r;
  }
  const auto open = text.find('(');
  if (open != std::string_view::npos) {
    const std::string_view fn = trim(text.substr(0, open));
    if (fn == "lin")
      r.spacing = Spacing::linear;
    else if (fn == "log")
      r.spacing = Spacing::log;
    else
      throw std::invalid_argument("unknown range form '" + std::string(fn) + "' (expected lin or log)");
    if (text.back() != ')') throw std::invalid_argument("range must end with ')'");
    const auto args = split_commas(text.substr(open + 1, text.size() - open - 2));
    if (args.size() != 3) throw std::invalid_argument("range needs (min, max, count)");
    r.min = parse_number(args[0]);
    r.max = parse_number(args[1]);
    r.count = parse_count(args[2]);
    return r;
  }
  r.min = r.max = parse_number(text);
  return r;
}

ConfigDocument ConfigDocument::parse(std::string_view text) {
  ConfigDocument doc;
  std::vector<std::string> issues;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string prefix = "line " + std::to_string(line_no) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      issues.push_back(prefix + "expected 'key = value', got '" + std::string(line) + "'");
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) {
      issues.push_back(prefix + "missing key before '='");
      continue;
    }
    if (value.empty()) {
      issues.push_back(prefix + "missing value for '" + key + "'");
      continue;
    }
    if (const auto* prev = doc.find(key)) {
      issues.push_back(prefix + "duplicate key '" + key + "' (first set on line " +
                       std::to_string(prev->line) + ")");
      continue;
    }
    doc.entries_[key] = Entry{value, line_no};
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return doc;
}

void ConfigDocument::set(const std::string& key, std::string value) {
  entries_[key] = Entry{std::move(value), 0};
}

const ConfigDocument::Entry* ConfigDocument::find(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

SweepConfig build_config(const ConfigDocument& doc, ConfigUse use, std::size_t default_workers) {
  SweepConfig cfg;
  std::vector<std::string> issues;

  const auto where = [&](const std::string& key) {
    const auto* e = doc.find(key);
    if (e == nullptr || e->line == 0) return key + ": ";
    return "line " + std::to_string(e->line) + ": " + key + ": ";
  };
  // Runs `read` on the entry's value if present, recording any exception.
  const auto with = [&](const std::string& key, bool required,
                        const std::function<void(const std::string&)>& read) {
    const auto* e = doc.find(key);
    if (e == nullptr) {
      if (required) issues.push_back(key + ": required key is missing");
      return false;
    }
    try {
      read(e->value);
      return true;
    } catch (const std::exception& ex) {
      issues.push_back(where(key) + ex.what());
      return false;
    }
  };
  const auto number = [&](const std::string& key, bool required, double& dst) {
    return with(key, required, [&](const std::string& v) { dst = parse_number(v); });
  };
  const auto range = [&](const std::string& key, bool required, Range& dst, bool nonnegative) {
    if (!with(key, required, [&](const std::string& v) { dst = parse_range(v); })) return;
    if (dst.count == 0) issues.push_back(where(key) + "count must be >= 1");
    if (dst.min > dst.max) issues.push_back(where(key) + "min must be <= max");
    if (dst.spacing == Spacing::log && dst.explicit_values.empty() && !(dst.min > 0.0))
      issues.push_back(where(key) + "log spacing requires min > 0");
    if (nonnegative && dst.min < 0.0) issues.push_back(where(key) + "values must be >= 0");
  };

  // Keys belonging to the other command are accepted and ignored so one file
  // can drive every subcommand.
  for (const auto& [key, entry] : doc.entries())
    if (!known_keys().contains(key)) issues.push_back(where(key) + "unknown key");

  const bool sweep = use == ConfigUse::sweep;
  bool have_probe = false;
  bool have_prep = false;
  if (sweep) {
    have_probe = with("probe", true, [&](const std::string& v) { cfg.probe = probe_kind_from_string(v); });
    have_prep = with("prep", false, [&](const std::string& v) {
      cfg.prep = preparation_label_from_string(v);
      if (cfg.prep == PreparationLabel::custom)
        throw std::invalid_argument("custom preparations are not available from configs");
    });
  }

  if (number("s", true, cfg.s) && !(cfg.s > 0.0)) issues.push_back(where("s") + "must be > 0");
  if (number("omega_c", true, cfg.omega_c) && !(cfg.omega_c > 0.0))
    issues.push_back(where("omega_c") + "must be > 0");
  range("t", true, cfg.t, true);

  if (sweep) {
    if (number("omega0", false, cfg.omega0) && !(cfg.omega0 > 0.0))
      issues.push_back(where("omega0") + "must be > 0");
    if (number("T1", true, cfg.T1) && cfg.T1 < 0.0) issues.push_back(where("T1") + "must be >= 0");
    range("T2", true, cfg.T2, true);
    const bool z1 = number("z1", false, cfg.z1);
    const bool z2 = number("z2", false, cfg.z2);
    if (z1 && !z2) cfg.z2 = 1.0 - cfg.z1;
    if (z2 && !z1) cfg.z1 = 1.0 - cfg.z2;
    if (!(cfg.z1 >= 0.0 && cfg.z1 <= 1.0 && cfg.z2 >= 0.0 && cfg.z2 <= 1.0) ||
        std::abs(cfg.z1 + cfg.z2 - 1.0) > 1e-12)
      issues.push_back("z1, z2: priors must lie in [0, 1] and sum to 1");
    if (have_probe && have_prep) {
      try {
        (void)Preparation::named(cfg.probe, cfg.prep);
      } catch (const std::exception& ex) {
        issues.push_back(where("prep") + ex.what());
      }
    }
    cfg.eta = default_gain(cfg.probe, cfg.prep);
    with("eta", false, [&](const std::string& v) { cfg.eta = gain_kind_from_string(v); });
  } else {
    cfg.T = Range{};
    range("T", false, cfg.T, true);
  }

  number("rel_tol", false, cfg.quadrature.rel_tol);
  number("abs_tol", false, cfg.quadrature.abs_tol);
  number("omega_max_factor", false, cfg.quadrature.omega_max_factor);
  with("max_panels", false, [&](const std::string& v) { cfg.quadrature.max_panels = parse_count(v); });
  try {
    cfg.quadrature.validate();
  } catch (const std::exception& ex) {
    issues.push_back(std::string("quadrature: ") + ex.what());
  }

  cfg.phase = PhaseTreatment::skip;
  with("xi", false, [&](const std::string& v) {
    if (v == "compute")
      cfg.phase = PhaseTreatment::compute;
    else if (v != "skip")
      throw std::invalid_argument("expected compute or skip, got '" + v + "'");
  });

  cfg.workers = default_workers;
  if (with("workers", false, [&](const std::string& v) { cfg.workers = parse_count(v); }) &&
      cfg.workers == 0)
    issues.push_back(where("workers") + "must be >= 1");

  if (!issues.empty()) throw ConfigError(std::move(issues));
  return cfg;
}

std::size_t default_worker_count() {
  return std::max(1u, std::thread::hardware_concurrency());
}

void apply_worker_environment(ConfigDocument& doc) {
  if (const char* env = std::getenv("BATHSENSE_WORKERS"); env != nullptr && *env != '\0')
    doc.set("workers", env);
}

SweepConfig parse_config(std::string_view text, ConfigUse use) {
  ConfigDocument doc = ConfigDocument::parse(text);
  apply_worker_environment(doc);
  return build_config(doc, use, default_worker_count());
}

}  // namespace bathsense
