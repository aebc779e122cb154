#include "bathsense/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bathsense {

namespace {

constexpr double kJacobiThreshold = 1e-13;
constexpr int kMaxSweeps = 64;

void require_square_small(const Matrix& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() < 1 || m.rows() > kMaxDim)
    throw std::invalid_argument(std::string(who) + ": expected a square matrix of dimension 1..4");
}

}  // namespace

DensityMatrix DensityMatrix::from_matrix(const Matrix& m) {
  require_square_small(m, "DensityMatrix");
  if (m.rows() < 2) throw std::invalid_argument("DensityMatrix: dimension must be 2..4");
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > kHermiticityTol)
        throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  if (std::abs(m.trace() - Complex(1.0)) > kTraceTol)
    throw std::invalid_argument("DensityMatrix: trace differs from 1");
  const Eigensystem es = hermitian_eigensystem(m, kHermiticityTol);
  if (es.values.minCoeff() < kPositivityFloor)
    throw std::invalid_argument("DensityMatrix: matrix has a negative eigenvalue");
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> amplitudes) {
  const auto n = static_cast<Eigen::Index>(amplitudes.size());
  if (n < 2 || n > kMaxDim) throw std::invalid_argument("DensityMatrix::pure: dimension must be 2..4");
  Eigen::Matrix<Complex, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1> psi(n);
  for (Eigen::Index i = 0; i < n; ++i) psi(i) = amplitudes[static_cast<std::size_t>(i)];
  if (std::abs(psi.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("DensityMatrix::pure: amplitudes are not normalized");
  return from_matrix(psi * psi.adjoint());
}

EnergySpectrum::EnergySpectrum(std::vector<double> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) throw std::invalid_argument("EnergySpectrum: no levels");
  if (levels_.size() > static_cast<std::size_t>(kMaxDim))
    throw std::invalid_argument("EnergySpectrum: more than 4 levels");
  for (double e : levels_)
    if (!std::isfinite(e)) throw std::invalid_argument("EnergySpectrum: non-finite level");
  if (!std::is_sorted(levels_.begin(), levels_.end()))
    throw std::invalid_argument("EnergySpectrum: levels must be sorted ascending");
}

Eigensystem hermitian_eigensystem(const Matrix& m, double tol) {
  require_square_small(m, "hermitian_eigensystem");
  const Eigen::Index n = m.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol)
        throw std::invalid_argument("hermitian_eigensystem: matrix is not Hermitian");

  Matrix a = 0.5 * (m + m.adjoint());
  Matrix v = Matrix::Identity(n, n);
  const double scale = a.norm();

  for (int sweep = 0; sweep < kMaxSweeps && scale > 0.0; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= kJacobiThreshold * scale) break;

    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        const Complex phase = a(p, q) / mag;
        const Complex phase_c = std::conj(phase);
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // a <- U^dagger a U with U = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on (p, q).
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - s * phase_c * akq;
          a(k, q) = s * akp + c * phase_c * akq;
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp - s * phase_c * vkq;
          v(k, q) = s * vkp + c * phase_c * vkq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() < a(y, y).real(); });

  Eigensystem out{RealVector(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.values(k) = a(src, src).real();
    out.vectors.col(k) = v.col(src);
  }
  return out;
}

Matrix hadamard_product(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("hadamard_product: shape mismatch");
  return a.cwiseProduct(b);
}

DensityMatrix gibbs_state(const EnergySpectrum& spectrum, double temperature) {
  if (std::isnan(temperature) || temperature < 0.0)
    throw std::domain_error("gibbs_state: temperature must be >= 0");
  const auto& levels = spectrum.levels();
  const int n = spectrum.size();
  if (n < 2) throw std::invalid_argument("gibbs_state: need at least two levels");
  const double e0 = spectrum.ground();

  std::vector<double> weights(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const double gap = levels[k] - e0;
    if (temperature == 0.0) {
      weights[k] = gap == 0.0 ? 1.0 : 0.0;
    } else {
      weights[k] = std::exp(-gap / temperature);
    }
  }
  const double z = std::accumulate(weights.begin(), weights.end(), 0.0);

  Matrix rho = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) rho(k, k) = weights[static_cast<std::size_t>(k)] / z;
  return DensityMatrix::from_matrix(rho);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
  const Eigensystem es = hermitian_eigensystem(a.matrix() - b.matrix());
  return 0.5 * es.values.cwiseAbs().sum();
}

Matrix HelstromResult::povm_projector_2() const {
  return Matrix::Identity(povm_projector_1.rows(), povm_projector_1.cols()) - povm_projector_1;
}

HelstromResult helstrom_from_lambda(const Matrix& lambda, double z1, double z2) {
  if (!(z1 >= 0.0 && z2 >= 0.0) || std::abs(z1 + z2 - 1.0) > 1e-12)
    throw std::invalid_argument("helstrom: priors must be nonnegative and sum to 1");
  const Eigensystem es = hermitian_eigensystem(lambda);
  const Eigen::Index n = lambda.rows();

  HelstromResult out;
  out.lambda_eigenvalues = es.values;
  out.povm_projector_1 = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    if (es.values(k) <= 0.0) out.povm_projector_1 += es.vectors.col(k) * es.vectors.col(k).adjoint();

  const double p = 0.5 * (1.0 - es.values.cwiseAbs().sum());
  out.p_error = std::clamp(p, 0.0, std::min(z1, z2));
  return out;
}

HelstromResult helstrom(const DensityMatrix& a, const DensityMatrix& b, double z1, double z2) {
  if (a.dim() != b.dim()) throw std::invalid_argument("helstrom: dimension mismatch");
  return helstrom_from_lambda(z2 * b.matrix() - z1 * a.matrix(), z1, z2);
}

}  // namespace bathsense
