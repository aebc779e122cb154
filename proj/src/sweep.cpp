#include "bathsense/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <thread>

#include "bathsense/errors.hpp"

namespace bathsense {

namespace {

Scenario scenario_for(const SweepConfig& cfg, double T2, double t) {
  const ProbeSpec probe = build_probe(cfg.probe, cfg.omega0);
  return Scenario{probe,  Preparation::named(cfg.probe, cfg.prep), SpectralParams(cfg.s, cfg.omega_c),
                  cfg.T1, T2,
                  cfg.z1, cfg.z2,
                  t};
}

[[noreturn]] void rethrow_at(const NumericalFailure& e, const std::string& where) {
  throw NumericalFailure(where + ": " + e.what(), e.error_estimate());
}

}  // namespace

void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& task) {
  if (n == 0) return;
  workers = std::clamp<std::size_t>(workers, 1, n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};

  const auto drain = [&] {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };

  if (workers == 1) {
    drain();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(drain);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
  const std::vector<double> T2s = cfg.T2.values();
  const std::vector<double> ts = cfg.t.values();
  const std::string probe_name(to_string(cfg.probe));
  const std::string prep_name(to_string(cfg.prep));
  const std::string eta_name(to_string(cfg.eta));

  std::vector<SweepRecord> rows(T2s.size() * ts.size());
  parallel_for(rows.size(), cfg.workers, [&](std::size_t k) {
    const double T2 = T2s[k / ts.size()];
    const double t = ts[k % ts.size()];
    try {
      const Scenario sc = scenario_for(cfg, T2, t);
      const DiscriminationOutput out = nonequilibrium_error(sc, cfg.quadrature, cfg.phase);
      const double eta = named_gain(cfg.eta, {cfg.omega0, cfg.T1, T2, out.gamma1, out.gamma2});
      rows[k] = SweepRecord{probe_name, prep_name, cfg.s,      cfg.omega_c, cfg.omega0,
                            cfg.T1,     T2,        t,          out.gamma1,  out.gamma2,
                            out.p_eq,   out.p_neq, eta_name,   eta};
    } catch (const NumericalFailure& e) {
      rethrow_at(e, "grid point T2=" + format_double(T2) + ", t=" + format_double(t));
    }
  });
  return rows;
}

std::vector<OptimizeRecord> run_optimize(const SweepConfig& cfg) {
  const std::vector<double> T2s = cfg.T2.values();
  const double t_max = cfg.t.max;
  const std::string probe_name(to_string(cfg.probe));
  const std::string prep_name(to_string(cfg.prep));

  std::vector<OptimizeRecord> rows(T2s.size());
  parallel_for(rows.size(), cfg.workers, [&](std::size_t k) {
    const double T2 = T2s[k];
    try {
      const TimeOptimum opt = optimize_time(scenario_for(cfg, T2, 0.0), t_max, cfg.quadrature);
      rows[k] = OptimizeRecord{probe_name, prep_name, cfg.s,  cfg.omega_c, cfg.omega0,
                               cfg.T1,     T2,        opt.t_star, opt.p_star};
    } catch (const NumericalFailure& e) {
      rethrow_at(e, "optimizing T2=" + format_double(T2));
    }
  });
  return rows;
}

std::vector<GammaRecord> run_gamma(const SweepConfig& cfg) {
  const std::vector<double> Ts = cfg.T.values();
  const std::vector<double> ts = cfg.t.values();
  const SpectralParams bath(cfg.s, cfg.omega_c);

  std::vector<GammaRecord> rows(Ts.size() * ts.size());
  parallel_for(rows.size(), cfg.workers, [&](std::size_t k) {
    const double T = Ts[k / ts.size()];
    const double t = ts[k % ts.size()];
    try {
      const QuadratureResult g = decoherence_exponent(bath, t, T, cfg.quadrature);
      QuadratureResult x;
      if (cfg.phase == PhaseTreatment::compute) x = phase_function(bath, t, cfg.quadrature);
      rows[k] = GammaRecord{cfg.s, cfg.omega_c, T, t, g.value, g.error, x.value, x.error};
    } catch (const NumericalFailure& e) {
      rethrow_at(e, "T=" + format_double(T) + ", t=" + format_double(t));
    }
  });
  return rows;
}

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRecord> rows) {
  os << "probe,prep,s,omega_c,omega0,T1,T2,t,gamma1,gamma2,p_eq,p_neq,eta_name,eta_value\n";
  for (const SweepRecord& r : rows) {
    os << r.probe << ',' << r.prep;
    for (double v : {r.s, r.omega_c, r.omega0, r.T1, r.T2, r.t, r.gamma1, r.gamma2, r.p_eq, r.p_neq})
      os << ',' << format_double(v);
    os << ',' << r.eta_name << ',' << format_double(r.eta_value) << '\n';
  }
}

void write_optimize_csv(std::ostream& os, std::span<const OptimizeRecord> rows) {
  os << "probe,prep,s,omega_c,omega0,T1,T2,t_star,p_star\n";
  for (const OptimizeRecord& r : rows) {
    os << r.probe << ',' << r.prep;
    for (double v : {r.s, r.omega_c, r.omega0, r.T1, r.T2, r.t_star, r.p_star})
      os << ',' << format_double(v);
    os << '\n';
  }
}

void write_gamma_csv(std::ostream& os, std::span<const GammaRecord> rows) {
  os << "s,omega_c,T,t,gamma,gamma_err,xi,xi_err\n";
  for (const GammaRecord& r : rows) {
    os << format_double(r.s);
    for (double v : {r.omega_c, r.T, r.t, r.gamma, r.gamma_err, r.xi, r.xi_err})
      os << ',' << format_double(v);
    os << '\n';
  }
}

}  // namespace bathsense
