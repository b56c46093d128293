#include "qontext/hilbert.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

namespace qontext::hilbert {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols())
    throw std::invalid_argument(std::string(what) + " must be square, got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

double hermiticity_deviation(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

Projector::Projector(Matrix m) : mat_(std::move(m)) {
  require_square(mat_, "projector");
  if (hermiticity_deviation(mat_) > kConstructionTol)
    throw std::invalid_argument("projector is not Hermitian within 1e-12");
  if ((mat_ * mat_ - mat_).cwiseAbs().maxCoeff() > kConstructionTol)
    throw std::invalid_argument("projector is not idempotent within 1e-12");
}

DensityOperator::DensityOperator(Matrix m) : mat_(std::move(m)) {
  require_square(mat_, "density operator");
  if (hermiticity_deviation(mat_) > kConstructionTol)
    throw std::invalid_argument("density operator is not Hermitian within 1e-12");
  if (std::abs(mat_.trace() - std::complex<double>(1.0, 0.0)) > kConstructionTol)
    throw std::invalid_argument("density operator trace differs from 1 by more than 1e-12");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(mat_, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < kEigenvalueFloor)
    throw std::invalid_argument("density operator has an eigenvalue below -1e-10");
}

ProjectiveMeasurement::ProjectiveMeasurement(std::vector<Projector> projectors)
    : projectors_(std::move(projectors)) {
  if (projectors_.empty()) throw IncompleteMeasurementError("measurement has no projectors");
  const Eigen::Index n = projectors_.front().dim();
  Matrix sum = Matrix::Zero(n, n);
  for (const Projector& p : projectors_) {
    if (p.dim() != n)
      throw DimensionMismatchError("measurement mixes dimensions " + std::to_string(n) + " and " +
                                   std::to_string(p.dim()));
    sum += p.matrix();
  }
  for (std::size_t i = 0; i < projectors_.size(); ++i)
    for (std::size_t j = i + 1; j < projectors_.size(); ++j)
      if ((projectors_[i].matrix() * projectors_[j].matrix()).cwiseAbs().maxCoeff() >
          kConstructionTol)
        throw IncompleteMeasurementError("projectors " + std::to_string(i) + " and " +
                                         std::to_string(j) + " do not annihilate each other");
  if ((sum - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > kConstructionTol)
    throw IncompleteMeasurementError("projectors do not resolve the identity within 1e-12");
}

Projector projector_from_vector(const Vector& v) {
  const double norm2 = v.squaredNorm();
  if (norm2 == 0.0) throw ZeroVectorError{};
  return Projector((v * v.adjoint()) / norm2);
}

Matrix observable_from_spectrum(const std::vector<std::pair<double, Projector>>& spectrum) {
  std::vector<Projector> projectors;
  projectors.reserve(spectrum.size());
  for (const auto& entry : spectrum) projectors.push_back(entry.second);
  const ProjectiveMeasurement meas{std::move(projectors)};  // validates completeness
  Matrix obs = Matrix::Zero(meas.dim(), meas.dim());
  for (const auto& [value, projector] : spectrum) obs += value * projector.matrix();
  return obs;
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

DensityOperator partial_trace(const DensityOperator& rho, Eigen::Index dim_a, Eigen::Index dim_b,
                              Subsystem keep) {
  if (dim_a < 1 || dim_b < 1 || rho.dim() != dim_a * dim_b)
    throw DimensionMismatchError("state dimension " + std::to_string(rho.dim()) +
                                 " is not " + std::to_string(dim_a) + "*" + std::to_string(dim_b));
  const Matrix& m = rho.matrix();
  if (keep == Subsystem::first) {
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (Eigen::Index i = 0; i < dim_a; ++i)
      for (Eigen::Index j = 0; j < dim_a; ++j)
        for (Eigen::Index k = 0; k < dim_b; ++k) out(i, j) += m(i * dim_b + k, j * dim_b + k);
    return DensityOperator(std::move(out));
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (Eigen::Index k = 0; k < dim_b; ++k)
    for (Eigen::Index l = 0; l < dim_b; ++l)
      for (Eigen::Index i = 0; i < dim_a; ++i) out(k, l) += m(i * dim_b + k, i * dim_b + l);
  return DensityOperator(std::move(out));
}

std::vector<double> marginal_distribution(const DensityOperator& rho,
                                          const ProjectiveMeasurement& meas_a,
                                          const ProjectiveMeasurement& meas_b) {
  if (rho.dim() != meas_a.dim() * meas_b.dim())
    throw DimensionMismatchError("state dimension " + std::to_string(rho.dim()) +
                                 " does not match measurement dimensions " +
                                 std::to_string(meas_a.dim()) + "*" + std::to_string(meas_b.dim()));
  std::vector<double> probabilities;
  probabilities.reserve(meas_a.outcomes());
  for (const Projector& pa : meas_a.projectors()) {
    double p = 0.0;
    for (const Projector& pb : meas_b.projectors())
      p += (rho.matrix() * tensor(pa.matrix(), pb.matrix())).trace().real();
    probabilities.push_back(p);
  }
  return probabilities;
}

NoSignalingResult no_signaling_check(const DensityOperator& rho,
                                     const ProjectiveMeasurement& meas_a,
                                     const ProjectiveMeasurement& meas_b,
                                     const ProjectiveMeasurement& meas_b2, double tol) {
  if (meas_b.dim() != meas_b2.dim())
    throw DimensionMismatchError("alternative contexts act on different dimensions " +
                                 std::to_string(meas_b.dim()) + " and " +
                                 std::to_string(meas_b2.dim()));
  NoSignalingResult result;
  result.marginal_b = marginal_distribution(rho, meas_a, meas_b);
  result.marginal_b2 = marginal_distribution(rho, meas_a, meas_b2);

  const DensityOperator reduced =
      partial_trace(rho, meas_a.dim(), meas_b.dim(), Subsystem::first);
  result.reduced_prediction.reserve(meas_a.outcomes());
  for (const Projector& pa : meas_a.projectors())
    result.reduced_prediction.push_back((reduced.matrix() * pa.matrix()).trace().real());

  double dev = 0.0;
  for (std::size_t i = 0; i < meas_a.outcomes(); ++i) {
    dev = std::max(dev, std::abs(result.marginal_b[i] - result.marginal_b2[i]));
    dev = std::max(dev, std::abs(result.marginal_b[i] - result.reduced_prediction[i]));
    dev = std::max(dev, std::abs(result.marginal_b2[i] - result.reduced_prediction[i]));
  }
  result.max_deviation = dev;
  result.consistent = dev <= tol;
  return result;
}

Matrix read_matrix(std::istream& in) {
  // Token stream with '#'-to-end-of-line comments.
  std::string raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::string cleaned;
  cleaned.reserve(raw.size());
  bool in_comment = false;
  for (char ch : raw) {
    if (ch == '#') in_comment = true;
    if (ch == '\n') in_comment = false;
    cleaned.push_back(in_comment ? ' ' : ch);
  }
  std::istringstream ts(cleaned);
  std::string tag;
  Eigen::Index rows = 0, cols = 0;
  if (!(ts >> tag) || tag != "mat" || !(ts >> rows >> cols) || rows < 1 || cols < 1)
    throw std::invalid_argument("matrix file must start with 'mat <rows> <cols>'");
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      std::string tok;
      if (!(ts >> tok))
        throw std::invalid_argument("matrix file ends after " +
                                    std::to_string(i * cols + j) + " of " +
                                    std::to_string(rows * cols) + " entries");
      const auto comma = tok.find(',');
      if (comma == std::string::npos)
        throw std::invalid_argument("matrix entry '" + tok + "' is not 're,im'");
      try {
        m(i, j) = {std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1))};
      } catch (const std::exception&) {
        throw std::invalid_argument("bad matrix entry '" + tok + "'");
      }
    }
  }
  std::string extra;
  if (ts >> extra) throw std::invalid_argument("trailing content '" + extra + "' in matrix file");
  return m;
}

Matrix load_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open matrix file '" + path + "'");
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const Matrix& m) {
  out << "mat " << m.rows() << ' ' << m.cols() << '\n';
  char buf[64];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", m(i, j).real(), m(i, j).imag());
      out << buf << (j + 1 == m.cols() ? "" : " ");
    }
    out << '\n';
  }
}

}  // namespace qontext::hilbert
