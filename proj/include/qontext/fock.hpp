#pragma once

// n-particle tensor spaces over a d-dimensional single-particle space, the
// symmetrizing / antisymmetrizing projectors (1/n!-normalized permutation
// sums), boson/fermion sector dimensions, and the two-fermion position-space
// density with its interference decomposition.
//
// States are dense amplitude vectors indexed big-endian: the first particle
// is the most significant base-d digit. Total dimension is capped at 4096.

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qontext::fock {

struct GridMismatchError : std::runtime_error {
  GridMismatchError() : std::runtime_error("wavefunctions live on different grids") {}
};

struct NParticleSpace {
  int single_dim = 0;
  int particles = 0;
  Eigen::Index total_dim = 0;

  // Throws std::invalid_argument unless d >= 1, n >= 0 and d^n <= 4096.
  static NParticleSpace make(int d, int n);

  friend bool operator==(const NParticleSpace&, const NParticleSpace&) = default;
};

enum class Sector { none, symmetric, antisymmetric };

struct SymmetrizedState {
  NParticleSpace space;
  Eigen::VectorXcd amplitudes;
  Sector sector = Sector::none;

  // Unit-norm copy (the projector normalization 1/n! generally shrinks
  // states). Throws std::domain_error on the zero state.
  SymmetrizedState normalized() const;
};

// |v_1> tensor ... tensor |v_n>, sector none. Factor count and sizes must
// match the space.
SymmetrizedState product_state(const NParticleSpace& space,
                               const std::vector<Eigen::VectorXcd>& factors);

// Relabels particles: output slot k carries what input slot perm[k] carried.
// perm must be a permutation of 0..n-1.
Eigen::VectorXcd apply_particle_permutation(const NParticleSpace& space,
                                            const Eigen::VectorXcd& amplitudes,
                                            const std::vector<int>& perm);

// Sign of a permutation by inversion counting.
int permutation_sign(const std::vector<int>& perm);

// (1/n!) sum over all particle permutations (signed for the antisymmetric
// case). Idempotent; annihilates states orthogonal to the target sector.
SymmetrizedState symmetrize(const SymmetrizedState& v);
SymmetrizedState antisymmetrize(const SymmetrizedState& v);

// The projectors as dense matrices on the full d^n space.
Eigen::MatrixXd symmetrizer_matrix(int d, int n);
Eigen::MatrixXd antisymmetrizer_matrix(int d, int n);

// Worst deviation from the sector's transposition rule over all adjacent
// transpositions (symmetric: swap leaves amplitudes fixed; antisymmetric:
// swap negates them). Zero for sector none.
double sector_deviation(const SymmetrizedState& state);

// (C(d+n-1, n), C(d, n)): dimensions of the symmetric and antisymmetric
// sectors, equal to the ranks of the corresponding projectors.
std::pair<long long, long long> sector_dimensions(int d, int n);

enum class Statistics { boson, fermion };

// Per-particle-number sector dimensions of the Fock space truncated at nmax,
// n = 0..nmax; the 0-particle sector is the scalars (dimension 1).
std::vector<long long> fock_truncation(int d, int nmax, Statistics statistics);

// Uniformly sampled complex wavefunction of one coordinate.
struct GridWavefunction {
  double origin = 0.0;
  double spacing = 0.0;
  Eigen::VectorXcd values;

  Eigen::Index size() const { return values.size(); }
  double point(Eigen::Index i) const { return origin + spacing * static_cast<double>(i); }
  // Trapezoidal-quadrature norm.
  double norm() const;

  bool same_grid(const GridWavefunction& other) const;
};

// Unit-norm Gaussian centered at `center` whose probability density has
// standard deviation sigma.
GridWavefunction gaussian_packet(double center, double sigma, double origin, double spacing,
                                 Eigen::Index count);

// |psi(x,y)|^2 of the antisymmetrized two-particle state of psi_a, psi_b,
// split as density = direct_ab + direct_ba - interference with
//   direct_ab(i,j)    = |psi_a(x_i) psi_b(x_j)|^2 / 2
//   direct_ba(i,j)    = |psi_b(x_i) psi_a(x_j)|^2 / 2
//   interference(i,j) = Re(psi_a(x_i) psi_b(x_j) conj(psi_b(x_i) psi_a(x_j)))
// The diagonal of `density` vanishes: two fermions never sit at one point.
struct TwoFermionDensity {
  Eigen::MatrixXd direct_ab;
  Eigen::MatrixXd direct_ba;
  Eigen::MatrixXd interference;
  Eigen::MatrixXd density;
};

TwoFermionDensity two_fermion_density(const GridWavefunction& psi_a,
                                      const GridWavefunction& psi_b);

// Trapezoidal integral of |interference| over the plane divided by the
// integral of the density, computed without materializing the grids.
double interference_fraction(const GridWavefunction& psi_a, const GridWavefunction& psi_b);

// Interference fraction of two unit-norm Gaussians of width sigma placed at
// +/- separation/2, per separation. Grid policy: spacing sigma/64, extent
// +/-(separation/2 + 8 sigma). Separations must be positive and strictly
// ascending; the fraction strictly decreases along the curve.
std::vector<std::pair<double, double>> overlap_decay_curve(double sigma,
                                                           const std::vector<double>& separations);

}  // namespace qontext::fock
