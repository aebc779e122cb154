#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace bathsense {

using Complex = std::complex<double>;

constexpr int kMaxDim = 4;

/// Dense complex matrix of dimension at most 4 (inline storage, no heap).
using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;
using RealMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;
using RealVector = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

/// Hermitian, unit-trace, positive semidefinite state of dimension 2..4.
class DensityMatrix {
 public:
  static constexpr double kHermiticityTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kPositivityFloor = -1e-10;

  /// Validates the invariants; throws std::invalid_argument on violation.
  static DensityMatrix from_matrix(const Matrix& m);

  /// |psi><psi| for a normalized amplitude vector (norm within 1e-12).
  static DensityMatrix pure(std::span<const Complex> amplitudes);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

 private:
  explicit DensityMatrix(const Matrix& m) : m_(m) {}
  Matrix m_;
};

/// Energies E_n (k_B = hbar = 1), possibly degenerate, sorted ascending.
class EnergySpectrum {
 public:
  /// Throws std::invalid_argument if empty, unsorted, non-finite or larger than kMaxDim.
  explicit EnergySpectrum(std::vector<double> levels);

  const std::vector<double>& levels() const noexcept { return levels_; }
  int size() const noexcept { return static_cast<int>(levels_.size()); }
  double ground() const noexcept { return levels_.front(); }

 private:
  std::vector<double> levels_;
};

struct Eigensystem {
  RealVector values;  // ascending
  Matrix vectors;     // column k pairs with values(k)
};

/// Cyclic complex Jacobi diagonalization. Throws std::invalid_argument when
/// |m - m^dagger| exceeds `tol` in any entry or the dimension exceeds 4.
Eigensystem hermitian_eigensystem(const Matrix& m, double tol = 1e-12);

/// Throws std::invalid_argument on shape mismatch.
Matrix hadamard_product(const Matrix& a, const Matrix& b);

/// Diagonal Boltzmann state exp(-(E_n - E_0)/T) / Z. T = 0 gives the uniform
/// mixture over the ground subspace; T = +inf gives the maximally mixed
/// state. Throws std::domain_error for negative or NaN T.
DensityMatrix gibbs_state(const EnergySpectrum& spectrum, double temperature);

/// (1/2) sum |eig(a - b)|. Throws std::invalid_argument on dimension mismatch.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

struct HelstromResult {
  double p_error = 0.5;
  RealVector lambda_eigenvalues;  // of z2 b - z1 a, ascending
  Matrix povm_projector_1;        // outcome "state a": eigenspace with lambda <= 0

  Matrix povm_projector_2() const;
};

/// Minimum-error discrimination of `a` (prior z1) against `b` (prior z2):
/// Lambda = z2 b - z1 a, p_e = (1 - tr|Lambda|) / 2. Zero eigenvalues are
/// assigned to the first projector. Throws std::invalid_argument on dimension
/// mismatch or priors that are negative or do not sum to 1 (within 1e-12).
HelstromResult helstrom(const DensityMatrix& a, const DensityMatrix& b, double z1 = 0.5,
                        double z2 = 0.5);

/// Same, starting from an already-built Lambda operator.
HelstromResult helstrom_from_lambda(const Matrix& lambda, double z1, double z2);

}  // namespace bathsense
