// Command-line front end: single evaluations, grid sweeps, time optimization
// and POVM dumps, all driven by the key = value config format.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "bathsense/config.hpp"
#include "bathsense/errors.hpp"
#include "bathsense/sweep.hpp"

namespace {

using namespace bathsense;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

constexpr const char* kFooter =
    "Units: k_B = hbar = 1. Frequencies (omega_c, omega0), temperatures (T, T1, T2)\n"
    "and inverse times (1/t) are all expressed in one common unit.\n"
    "Ranges: 1.5 | [0.5, 1, 2] | lin(min, max, count) | log(min, max, count).\n"
    "Workers: --workers, else BATHSENSE_WORKERS, else the config, else all cores.\n"
    "Exit codes: 0 success, 2 configuration error, 3 numerical failure.";

struct KeyFlag {
  const char* key;
  const char* flags;
  const char* help;
};

constexpr KeyFlag kKeyFlags[] = {
    {"probe", "--probe", "qubit | qutrit | register"},
    {"prep", "--prep",
     "max_coherent | qutrit_qubit_like | bell_phi_plus | bell_phi_minus | bell_psi_plus | "
     "bell_psi_minus"},
    {"s", "--s", "spectral exponent (s < 1 sub-Ohmic, 1 Ohmic, > 1 super-Ohmic)"},
    {"omega_c", "--omega-c,--omega_c", "bath cutoff frequency"},
    {"omega0", "--omega0", "probe frequency"},
    {"T1", "--T1", "first bath temperature"},
    {"T2", "--T2", "second bath temperature (range)"},
    {"t", "--t", "interaction time (range; optimize searches up to its max)"},
    {"T", "--T", "temperature axis of the gamma command (range)"},
    {"z1", "--z1", "prior of T1"},
    {"z2", "--z2", "prior of T2"},
    {"rel_tol", "--rel-tol,--rel_tol", "quadrature relative tolerance"},
    {"abs_tol", "--abs-tol,--abs_tol", "quadrature absolute tolerance"},
    {"omega_max_factor", "--omega-max-factor,--omega_max_factor", "truncation in units of omega_c"},
    {"max_panels", "--max-panels,--max_panels", "quadrature panel budget"},
    {"eta", "--eta", "gain factor: eta | eta3 | eta2 | eta_c | eta4 | eta42"},
    {"xi", "--xi", "phase function: compute | skip"},
    {"workers", "--workers", "worker threads"},
};

struct CommandLine {
  std::string config_path;
  std::string out_path;
  std::map<std::string, std::string> overrides;
};

void add_common(CLI::App* cmd, CommandLine& cl) {
  cmd->add_option("--config,-c", cl.config_path, "key = value configuration file");
  cmd->add_option("--out,-o", cl.out_path, "write output here instead of standard output");
  for (const KeyFlag& kf : kKeyFlags) {
    cmd->add_option_function<std::string>(
        kf.flags, [&cl, key = std::string(kf.key)](const std::string& v) { cl.overrides[key] = v; },
        kf.help);
  }
}

ConfigDocument load_document(const CommandLine& cl) {
  ConfigDocument doc;
  if (!cl.config_path.empty()) {
    std::ifstream in(cl.config_path);
    if (!in) throw ConfigError({"cannot read config file '" + cl.config_path + "'"});
    std::ostringstream text;
    text << in.rdbuf();
    doc = ConfigDocument::parse(text.str());
  }
  apply_worker_environment(doc);
  for (const auto& [key, value] : cl.overrides) doc.set(key, value);
  return doc;
}

void require_single_point(const SweepConfig& cfg) {
  std::vector<std::string> issues;
  if (cfg.T2.values().size() != 1) issues.push_back("T2: this command takes a single value");
  if (cfg.t.values().size() != 1) issues.push_back("t: this command takes a single value");
  if (!issues.empty()) throw ConfigError(std::move(issues));
}

nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_povm(std::ostream& os, const SweepConfig& cfg) {
  const double T2 = cfg.T2.values().front();
  const double t = cfg.t.values().front();
  const ProbeSpec probe = build_probe(cfg.probe, cfg.omega0);
  const Scenario sc{probe, Preparation::named(cfg.probe, cfg.prep), SpectralParams(cfg.s, cfg.omega_c),
                    cfg.T1, T2, cfg.z1, cfg.z2, t};
  const DiscriminationOutput out = nonequilibrium_error(sc, cfg.quadrature, cfg.phase, true);
  const HelstromResult& h = *out.povm;
  nlohmann::json j;
  j["probe"] = std::string(to_string(cfg.probe));
  j["prep"] = std::string(to_string(cfg.prep));
  j["s"] = cfg.s;
  j["omega_c"] = cfg.omega_c;
  j["omega0"] = cfg.omega0;
  j["T1"] = cfg.T1;
  j["T2"] = T2;
  j["t"] = t;
  j["z1"] = cfg.z1;
  j["z2"] = cfg.z2;
  j["gamma1"] = out.gamma1;
  j["gamma2"] = out.gamma2;
  j["xi"] = out.xi;
  j["p_neq"] = out.p_neq;
  j["p_eq"] = out.p_eq;
  j["lambda_eigenvalues"] = std::vector<double>(h.lambda_eigenvalues.begin(), h.lambda_eigenvalues.end());
  // Matrices are row-major lists of [re, im] pairs in the energy basis.
  j["pi1"] = matrix_json(h.povm_projector_1);
  j["pi2"] = matrix_json(h.povm_projector_2());
  os << j.dump(2) << '\n';
}

int run(const std::string& command, const CommandLine& cl) {
  ConfigDocument doc = load_document(cl);
  const bool spectral = command == "gamma";
  if ((spectral || command == "povm") && doc.find("xi") == nullptr) doc.set("xi", "compute");
  const SweepConfig cfg =
      build_config(doc, spectral ? ConfigUse::spectral : ConfigUse::sweep, default_worker_count());
  if (command == "perr" || command == "povm") require_single_point(cfg);

  std::ofstream file;
  if (!cl.out_path.empty()) {
    file.open(cl.out_path, std::ios::binary);
    if (!file) throw ConfigError({"cannot open output file '" + cl.out_path + "'"});
  }
  std::ostream& os = cl.out_path.empty() ? std::cout : file;

  if (command == "gamma") {
    write_gamma_csv(os, run_gamma(cfg));
  } else if (command == "perr" || command == "sweep") {
    write_sweep_csv(os, run_sweep(cfg));
  } else if (command == "optimize") {
    if (!(cfg.t.max > 0.0)) throw ConfigError({"t: optimize needs a positive search bound"});
    write_optimize_csv(os, run_optimize(cfg));
  } else {
    write_povm(os, cfg);
  }
  os.flush();
  if (!os) {
    std::cerr << "error: failed writing output\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermometry by quantum state discrimination with dephasing probes"};
  app.footer(kFooter);
  app.require_subcommand(1, 1);

  CommandLine cl;
  const std::pair<const char*, const char*> commands[] = {
      {"gamma", "decoherence exponent Gamma(t|T) and phase xi(t) over the (T, t) grid"},
      {"perr", "error probabilities for one scenario (single T2 and t)"},
      {"sweep", "error probabilities and gain factor over the (T2, t) grid"},
      {"optimize", "optimal interaction time per T2, searching (0, max t]"},
      {"povm", "optimal measurement projectors for one scenario, as JSON"},
  };
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help), cl);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, cl);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error:\n";
    for (const auto& issue : e.issues()) std::cerr << "  " << issue << '\n';
    return kExitConfig;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << " (error estimate " << e.error_estimate()
              << ")\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
