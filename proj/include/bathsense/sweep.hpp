#pragma once

#include <cstddef>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "bathsense/config.hpp"

namespace bathsense {

struct SweepRecord {
  std::string probe;
  std::string prep;
  double s;
  double omega_c;
  double omega0;
  double T1;
  double T2;
  double t;
  double gamma1;
  double gamma2;
  double p_eq;
  double p_neq;
  std::string eta_name;
  double eta_value;
};

struct OptimizeRecord {
  std::string probe;
  std::string prep;
  double s;
  double omega_c;
  double omega0;
  double T1;
  double T2;
  double t_star;
  double p_star;
};

struct GammaRecord {
  double s;
  double omega_c;
  double T;
  double t;
  double gamma;
  double gamma_err;
  double xi;
  double xi_err;
};

/// Runs `task(i)` for i in [0, n) on `workers` threads. Tasks are claimed in
/// index order; after a failure no new tasks start and the exception of the
/// lowest failing index is rethrown.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& task);

/// Every (T2, t) grid point, ordered by T2 index then t index. A quadrature
/// failure is rethrown as NumericalFailure naming the grid point.
std::vector<SweepRecord> run_sweep(const SweepConfig& cfg);

/// optimize_time per T2 value, searching t in (0, max of the t range].
std::vector<OptimizeRecord> run_optimize(const SweepConfig& cfg);

/// Gamma and xi over the (T, t) grid, ordered by T index then t index.
std::vector<GammaRecord> run_gamma(const SweepConfig& cfg);

/// 17 significant digits, locale-independent; -0 is written as 0.
std::string format_double(double v);

void write_sweep_csv(std::ostream& os, std::span<const SweepRecord> rows);
void write_optimize_csv(std::ostream& os, std::span<const OptimizeRecord> rows);
void write_gamma_csv(std::ostream& os, std::span<const GammaRecord> rows);

}  // namespace bathsense
