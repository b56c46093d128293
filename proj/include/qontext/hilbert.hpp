#pragma once

// Finite-dimensional complex linear algebra on Eigen dense types: rank-1
// projectors, observables assembled from spectral data, Kronecker products,
// partial traces, and marginal statistics of joint projective measurements
// (including the no-signaling consistency check between contexts).
//
// Construction tolerance for the validated carriers is 1e-12; density
// operators additionally tolerate eigenvalues down to -1e-10.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qontext::hilbert {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kConstructionTol = 1e-12;
inline constexpr double kEigenvalueFloor = -1e-10;

struct ZeroVectorError : std::runtime_error {
  ZeroVectorError() : std::runtime_error("cannot build a projector from the zero vector") {}
};

struct IncompleteMeasurementError : std::runtime_error {
  explicit IncompleteMeasurementError(const std::string& message) : std::runtime_error(message) {}
};

struct DimensionMismatchError : std::runtime_error {
  explicit DimensionMismatchError(const std::string& message) : std::runtime_error(message) {}
};

// Square matrix with P*P = P and P = P^dagger within 1e-12.
class Projector {
 public:
  explicit Projector(Matrix m);

  const Matrix& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  Matrix mat_;
};

// Hermitian, unit trace, eigenvalues >= -1e-10.
class DensityOperator {
 public:
  explicit DensityOperator(Matrix m);

  const Matrix& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  Matrix mat_;
};

// Projectors on a common dimension with vanishing pairwise products that
// resolve the identity.
class ProjectiveMeasurement {
 public:
  explicit ProjectiveMeasurement(std::vector<Projector> projectors);

  const std::vector<Projector>& projectors() const { return projectors_; }
  std::size_t outcomes() const { return projectors_.size(); }
  Eigen::Index dim() const { return projectors_.front().dim(); }

 private:
  std::vector<Projector> projectors_;
};

// v v^dagger / |v|^2. Throws ZeroVectorError.
Projector projector_from_vector(const Vector& v);

// Sum of value_i * P_i over a complete projective measurement; Hermitian by
// construction. Throws IncompleteMeasurementError when the projectors do not
// resolve the identity.
Matrix observable_from_spectrum(const std::vector<std::pair<double, Projector>>& spectrum);

// Kronecker product, row-major blocks:
// out((i*rows_b + k), (j*cols_b + l)) = a(i,j) * b(k,l).
Matrix tensor(const Matrix& a, const Matrix& b);

enum class Subsystem { first, second };

// Reduced state on the kept tensor factor of a dimA x dimB bipartition.
DensityOperator partial_trace(const DensityOperator& rho, Eigen::Index dim_a, Eigen::Index dim_b,
                              Subsystem keep);

// p(i) = sum_j tr(rho (P^A_i tensor P^B_j)): outcome distribution of the A
// measurement under the joint measurement (A, B).
std::vector<double> marginal_distribution(const DensityOperator& rho,
                                          const ProjectiveMeasurement& meas_a,
                                          const ProjectiveMeasurement& meas_b);

struct NoSignalingResult {
  bool consistent = false;
  // Worst disagreement across: A-marginal under B vs under B2, and either
  // against tr(rho_1 P^A_i) from the partial trace.
  double max_deviation = 0.0;
  std::vector<double> marginal_b;
  std::vector<double> marginal_b2;
  std::vector<double> reduced_prediction;
};

NoSignalingResult no_signaling_check(const DensityOperator& rho,
                                     const ProjectiveMeasurement& meas_a,
                                     const ProjectiveMeasurement& meas_b,
                                     const ProjectiveMeasurement& meas_b2, double tol);

// Matrix file format: `mat <rows> <cols>` then row-major re,im pairs,
// whitespace separated; '#' comments ignored.
Matrix read_matrix(std::istream& in);
Matrix load_matrix(const std::string& path);
void write_matrix(std::ostream& out, const Matrix& m);

}  // namespace qontext::hilbert
