#include <doctest.h>

#include <complex>
#include <cstdlib>
#include <random>
#include <sstream>

#include "qontext/hilbert.hpp"

using namespace qontext::hilbert;

namespace {

std::string data_path(const std::string& name) {
  const char* dir = std::getenv("QONTEXT_DATA_DIR");
  return (dir != nullptr ? std::string(dir) : std::string("data")) + "/" + name;
}

Vector random_vector(Eigen::Index n, std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = {gauss(rng), gauss(rng)};
  return v;
}

Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = {gauss(rng), gauss(rng)};
  return m;
}

DensityOperator random_state(Eigen::Index n, std::mt19937& rng) {
  const Matrix g = random_matrix(n, n, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  // Symmetrize away the last bits of rounding.
  rho = ((rho + rho.adjoint()) / 2.0).eval();
  return DensityOperator(std::move(rho));
}

// Measurement from the columns of a random unitary (QR of a Ginibre matrix).
ProjectiveMeasurement random_basis_measurement(Eigen::Index n, std::mt19937& rng) {
  const Eigen::HouseholderQR<Matrix> qr(random_matrix(n, n, rng));
  const Matrix q = qr.householderQ();
  std::vector<Projector> projectors;
  projectors.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    projectors.push_back(projector_from_vector(q.col(i)));
  return ProjectiveMeasurement{std::move(projectors)};
}

DensityOperator bell_state() {
  Vector psi = Vector::Zero(4);
  psi(0) = 1.0 / std::sqrt(2.0);
  psi(3) = 1.0 / std::sqrt(2.0);
  return DensityOperator(psi * psi.adjoint());
}

ProjectiveMeasurement z_measurement() {
  Vector e0 = Vector::Zero(2), e1 = Vector::Zero(2);
  e0(0) = 1.0;
  e1(1) = 1.0;
  return ProjectiveMeasurement{{projector_from_vector(e0), projector_from_vector(e1)}};
}

ProjectiveMeasurement x_measurement() {
  Vector plus(2), minus(2);
  plus << 1.0, 1.0;
  minus << 1.0, -1.0;
  return ProjectiveMeasurement{{projector_from_vector(plus), projector_from_vector(minus)}};
}

}  // namespace

TEST_CASE("rank-1 projectors from vectors") {
  Vector e1 = Vector::Zero(3);
  e1(0) = 1.0;
  const Projector p = projector_from_vector(e1);
  Matrix expected = Matrix::Zero(3, 3);
  expected(0, 0) = 1.0;
  CHECK((p.matrix() - expected).cwiseAbs().maxCoeff() == 0.0);

  Vector diag(2);
  diag << 1.0, 1.0;
  const Projector half = projector_from_vector(diag);
  CHECK(half.matrix()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(half.matrix()(0, 1).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(half.matrix()(1, 0).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(half.matrix()(1, 1).real() == doctest::Approx(0.5).epsilon(1e-15));

  CHECK_THROWS_AS(projector_from_vector(Vector::Zero(3)), ZeroVectorError);
}

TEST_CASE("projector invariants hold for many random vectors") {
  std::mt19937 rng(71);
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 5);
    const Projector p = projector_from_vector(random_vector(n, rng));
    CHECK((p.matrix() * p.matrix() - p.matrix()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((p.matrix() - p.matrix().adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("observables from spectral data") {
  std::vector<std::pair<double, Projector>> spectrum;
  for (int i = 0; i < 3; ++i) {
    Vector e = Vector::Zero(3);
    e(i) = 1.0;
    spectrum.emplace_back(i + 1.0, projector_from_vector(e));
  }
  const Matrix obs = observable_from_spectrum(spectrum);
  Matrix expected = Matrix::Zero(3, 3);
  expected(0, 0) = 1.0;
  expected(1, 1) = 2.0;
  expected(2, 2) = 3.0;
  CHECK((obs - expected).cwiseAbs().maxCoeff() <= 1e-15);

  for (auto& [value, projector] : spectrum) value = 1.0;
  CHECK((observable_from_spectrum(spectrum) - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <=
        1e-15);

  spectrum.pop_back();  // no longer resolves the identity
  CHECK_THROWS_AS(observable_from_spectrum(spectrum), IncompleteMeasurementError);
}

TEST_CASE("Kronecker products") {
  CHECK((tensor(Matrix::Identity(2, 2), Matrix::Identity(2, 2)) - Matrix::Identity(4, 4))
            .cwiseAbs()
            .maxCoeff() == 0.0);

  Matrix d(2, 2);
  d << 1.0, 0.0, 0.0, 2.0;
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 1.0;
  expected(1, 1) = 1.0;
  expected(2, 2) = 2.0;
  expected(3, 3) = 2.0;
  CHECK((tensor(d, Matrix::Identity(2, 2)) - expected).cwiseAbs().maxCoeff() == 0.0);

  // Index convention: out(i*rb+k, j*cb+l) = a(i,j) b(k,l).
  std::mt19937 rng(73);
  const Matrix a = random_matrix(2, 3, rng);
  const Matrix b = random_matrix(3, 2, rng);
  const Matrix t = tensor(a, b);
  REQUIRE(t.rows() == 6);
  REQUIRE(t.cols() == 6);
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 3; ++j)
      for (Eigen::Index k = 0; k < 3; ++k)
        for (Eigen::Index l = 0; l < 2; ++l)
          CHECK(std::abs(t(i * 3 + k, j * 2 + l) - a(i, j) * b(k, l)) == 0.0);

  // Associativity up to nothing at all: shapes already line up.
  const Matrix c = random_matrix(2, 2, rng);
  CHECK((tensor(tensor(a, b), c) - tensor(a, tensor(b, c))).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("partial trace of the Bell state is maximally mixed") {
  const DensityOperator reduced = partial_trace(bell_state(), 2, 2, Subsystem::first);
  CHECK((reduced.matrix() - Matrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("partial trace recovers both factors of a product state") {
  std::mt19937 rng(79);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityOperator rho_a = random_state(2, rng);
    const DensityOperator rho_b = random_state(3, rng);
    const DensityOperator joint{tensor(rho_a.matrix(), rho_b.matrix())};
    const DensityOperator back_a = partial_trace(joint, 2, 3, Subsystem::first);
    const DensityOperator back_b = partial_trace(joint, 2, 3, Subsystem::second);
    CHECK((back_a.matrix() - rho_a.matrix()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((back_b.matrix() - rho_b.matrix()).cwiseAbs().maxCoeff() <= 1e-12);
  }
  CHECK_THROWS_AS(partial_trace(random_state(4, rng), 3, 2, Subsystem::first),
                  DimensionMismatchError);
}

TEST_CASE("marginal distributions") {
  std::mt19937 rng(83);

  // Maximally mixed state: uniform outcomes for any basis measurement.
  const DensityOperator mixed{Matrix::Identity(4, 4) / 4.0};
  const auto uniform = marginal_distribution(mixed, z_measurement(), z_measurement());
  REQUIRE(uniform.size() == 2);
  CHECK(uniform[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(uniform[1] == doctest::Approx(0.5).epsilon(1e-12));

  // Product states factorize.
  const DensityOperator rho_a = random_state(2, rng);
  const DensityOperator rho_b = random_state(2, rng);
  const DensityOperator joint{tensor(rho_a.matrix(), rho_b.matrix())};
  const ProjectiveMeasurement meas = random_basis_measurement(2, rng);
  const auto marginal = marginal_distribution(joint, meas, x_measurement());
  for (std::size_t i = 0; i < meas.outcomes(); ++i) {
    const double direct = (rho_a.matrix() * meas.projectors()[i].matrix()).trace().real();
    CHECK(marginal[i] == doctest::Approx(direct).epsilon(1e-12));
  }

  // Bell state under Z tensor Z: even odds for the first party.
  const auto bell = marginal_distribution(bell_state(), z_measurement(), z_measurement());
  CHECK(bell[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(bell[1] == doctest::Approx(0.5).epsilon(1e-12));

  // Distributions are normalized and nonnegative.
  for (int trial = 0; trial < 30; ++trial) {
    const DensityOperator rho = random_state(4, rng);
    const auto p = marginal_distribution(rho, random_basis_measurement(2, rng),
                                         random_basis_measurement(2, rng));
    double total = 0.0;
    for (double x : p) {
      CHECK(x >= -1e-12);
      total += x;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("no-signaling on the Bell state") {
  const auto result = no_signaling_check(bell_state(), z_measurement(), z_measurement(),
                                         x_measurement(), 1e-12);
  CHECK(result.consistent);
  CHECK(result.max_deviation < 1e-12);
}

TEST_CASE("identical contexts agree exactly") {
  std::mt19937 rng(89);
  const DensityOperator rho = random_state(4, rng);
  const ProjectiveMeasurement a = random_basis_measurement(2, rng);
  const ProjectiveMeasurement b = random_basis_measurement(2, rng);
  const auto result = no_signaling_check(rho, a, b, b, 0.0);
  CHECK(result.consistent);
  CHECK(result.max_deviation == 0.0);
}

TEST_CASE("marginals ignore the remote context for random states") {
  std::mt19937 rng(97);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityOperator rho = random_state(4, rng);
    const auto result =
        no_signaling_check(rho, random_basis_measurement(2, rng),
                           random_basis_measurement(2, rng), random_basis_measurement(2, rng),
                           1e-9);
    CHECK(result.consistent);
    CHECK(result.max_deviation <= 1e-9);
  }
}

TEST_CASE("alternative contexts of different dimension are rejected") {
  std::mt19937 rng(103);
  const DensityOperator rho = random_state(4, rng);
  CHECK_THROWS_AS(no_signaling_check(rho, random_basis_measurement(2, rng),
                                     random_basis_measurement(2, rng),
                                     random_basis_measurement(3, rng), 1e-9),
                  DimensionMismatchError);
}

TEST_CASE("equal-rank measurements on the maximally mixed state are uniform") {
  // Four outcomes on the first factor, a trivial one-dimensional second factor.
  const DensityOperator mixed{Matrix::Identity(4, 4) / 4.0};
  std::vector<Projector> basis;
  for (int i = 0; i < 4; ++i) {
    Vector e = Vector::Zero(4);
    e(i) = 1.0;
    basis.push_back(projector_from_vector(e));
  }
  const ProjectiveMeasurement meas_a{std::move(basis)};
  const ProjectiveMeasurement trivial{{Projector{Matrix::Identity(1, 1)}}};
  const auto p = marginal_distribution(mixed, meas_a, trivial);
  REQUIRE(p.size() == 4);
  for (double x : p) CHECK(x == doctest::Approx(0.25).epsilon(1e-12));

  // Two rank-2 projectors behave the same way.
  Matrix top = Matrix::Zero(4, 4), bottom = Matrix::Zero(4, 4);
  top(0, 0) = top(1, 1) = 1.0;
  bottom(2, 2) = bottom(3, 3) = 1.0;
  const ProjectiveMeasurement halves{{Projector{top}, Projector{bottom}}};
  const auto q = marginal_distribution(mixed, halves, trivial);
  REQUIRE(q.size() == 2);
  for (double x : q) CHECK(x == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("density operator validation") {
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = 1.0;  // not Hermitian
  CHECK_THROWS_AS(DensityOperator{bad}, std::invalid_argument);

  CHECK_THROWS_AS(DensityOperator{Matrix::Identity(2, 2)}, std::invalid_argument);  // trace 2

  Matrix negative = Matrix::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityOperator{negative}, std::invalid_argument);
}

TEST_CASE("measurement validation") {
  Vector e0 = Vector::Zero(2), e1 = Vector::Zero(2);
  e0(0) = 1.0;
  e1(1) = 1.0;
  // Overlapping projectors cannot form a measurement.
  Vector skew(2);
  skew << 1.0, 1.0;
  CHECK_THROWS_AS(
      ProjectiveMeasurement({projector_from_vector(e0), projector_from_vector(skew)}),
      IncompleteMeasurementError);
  // A lone projector does not resolve the identity.
  CHECK_THROWS_AS(ProjectiveMeasurement{std::vector<Projector>{projector_from_vector(e0)}},
                  IncompleteMeasurementError);
}

TEST_CASE("matrix files round-trip") {
  std::mt19937 rng(101);
  const Matrix m = random_matrix(3, 4, rng);
  std::stringstream buf;
  write_matrix(buf, m);
  const Matrix back = read_matrix(buf);
  CHECK((m - back).cwiseAbs().maxCoeff() == 0.0);  // %.17g is exact for doubles

  const Matrix bell = load_matrix(data_path("bell.mat"));
  CHECK((bell - bell_state().matrix()).cwiseAbs().maxCoeff() <= 1e-15);

  std::stringstream bad1("mat 2\n");
  CHECK_THROWS_AS(read_matrix(bad1), std::invalid_argument);
  std::stringstream bad2("mat 2 2\n1,0 0,0\n0,0\n");
  CHECK_THROWS_AS(read_matrix(bad2), std::invalid_argument);
  std::stringstream bad3("mat 1 1\nnope\n");
  CHECK_THROWS_AS(read_matrix(bad3), std::invalid_argument);
  std::stringstream bad4("mat 1 1\n1,0 extra\n");
  CHECK_THROWS_AS(read_matrix(bad4), std::invalid_argument);
}
