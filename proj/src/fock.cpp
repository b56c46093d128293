#include "qontext/fock.hpp"

#include <cmath>
#include <numbers>

namespace qontext::fock {

namespace {

constexpr Eigen::Index kMaxTotalDim = 4096;

std::vector<Eigen::Index> slot_strides(const NParticleSpace& space) {
  // Big-endian: stride of slot k is d^(n-1-k).
  std::vector<Eigen::Index> strides(static_cast<std::size_t>(space.particles));
  Eigen::Index s = 1;
  for (int k = space.particles - 1; k >= 0; --k) {
    strides[static_cast<std::size_t>(k)] = s;
    s *= space.single_dim;
  }
  return strides;
}

template <typename Scalar>
Eigen::Vector<Scalar, Eigen::Dynamic> swap_slots(const NParticleSpace& space,
                                                 const std::vector<Eigen::Index>& strides,
                                                 const Eigen::Vector<Scalar, Eigen::Dynamic>& in,
                                                 int p, int q) {
  const int d = space.single_dim;
  Eigen::Vector<Scalar, Eigen::Dynamic> out(in.size());
  const Eigen::Index sp = strides[static_cast<std::size_t>(p)];
  const Eigen::Index sq = strides[static_cast<std::size_t>(q)];
  for (Eigen::Index idx = 0; idx < in.size(); ++idx) {
    const Eigen::Index dp = (idx / sp) % d;
    const Eigen::Index dq = (idx / sq) % d;
    const Eigen::Index swapped = idx + (dq - dp) * sp + (dp - dq) * sq;
    out(swapped) = in(idx);
  }
  return out;
}

// (1/n!) sum_P (sign^P) P, evaluated through the coset factorization
// S_k = union over i of (i k) S_{k-1}: each pass k mixes slot k into the
// already projected first k-1 slots at cost O(k d^n), so the full projector
// costs O(n^2 d^n) instead of O(n! d^n).
template <typename Scalar>
Eigen::Vector<Scalar, Eigen::Dynamic> permutation_projector_apply(
    const NParticleSpace& space, Eigen::Vector<Scalar, Eigen::Dynamic> cur, bool antisymmetric) {
  const std::vector<Eigen::Index> strides = slot_strides(space);
  for (int k = 2; k <= space.particles; ++k) {
    Eigen::Vector<Scalar, Eigen::Dynamic> next = cur;  // the i == k (identity) coset
    for (int i = 1; i < k; ++i) {
      const auto swapped = swap_slots<Scalar>(space, strides, cur, i - 1, k - 1);
      if (antisymmetric)
        next -= swapped;
      else
        next += swapped;
    }
    cur = next / static_cast<double>(k);
  }
  return cur;
}

Eigen::MatrixXd projector_matrix(int d, int n, bool antisymmetric) {
  const NParticleSpace space = NParticleSpace::make(d, n);
  Eigen::MatrixXd m(space.total_dim, space.total_dim);
  for (Eigen::Index j = 0; j < space.total_dim; ++j) {
    Eigen::VectorXd basis = Eigen::VectorXd::Zero(space.total_dim);
    basis(j) = 1.0;
    m.col(j) = permutation_projector_apply<double>(space, std::move(basis), antisymmetric);
  }
  return m;
}

long long binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long result = 1;
  for (long long i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

}  // namespace

NParticleSpace NParticleSpace::make(int d, int n) {
  if (d < 1) throw std::invalid_argument("single-particle dimension must be >= 1");
  if (n < 0) throw std::invalid_argument("particle number must be >= 0");
  Eigen::Index total = 1;
  for (int k = 0; k < n; ++k) {
    total *= d;
    if (total > kMaxTotalDim)
      throw std::invalid_argument("total dimension d^n exceeds the cap of 4096");
  }
  return NParticleSpace{d, n, total};
}

SymmetrizedState SymmetrizedState::normalized() const {
  const double n = amplitudes.norm();
  if (n == 0.0) throw std::domain_error("cannot normalize the zero state");
  return SymmetrizedState{space, amplitudes / n, sector};
}

SymmetrizedState product_state(const NParticleSpace& space,
                               const std::vector<Eigen::VectorXcd>& factors) {
  if (static_cast<int>(factors.size()) != space.particles)
    throw std::invalid_argument("expected " + std::to_string(space.particles) +
                                " factors, got " + std::to_string(factors.size()));
  Eigen::VectorXcd amplitudes = Eigen::VectorXcd::Constant(1, 1.0);
  for (const Eigen::VectorXcd& f : factors) {
    if (f.size() != space.single_dim)
      throw std::invalid_argument("factor dimension does not match the single-particle space");
    Eigen::VectorXcd next(amplitudes.size() * f.size());
    for (Eigen::Index i = 0; i < amplitudes.size(); ++i)
      next.segment(i * f.size(), f.size()) = amplitudes(i) * f;
    amplitudes = std::move(next);
  }
  return SymmetrizedState{space, std::move(amplitudes), Sector::none};
}

Eigen::VectorXcd apply_particle_permutation(const NParticleSpace& space,
                                            const Eigen::VectorXcd& amplitudes,
                                            const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != space.particles)
    throw std::invalid_argument("permutation length does not match particle count");
  if (amplitudes.size() != space.total_dim)
    throw std::invalid_argument("amplitude vector does not match the space dimension");
  const std::vector<Eigen::Index> strides = slot_strides(space);
  const int d = space.single_dim;
  Eigen::VectorXcd out(amplitudes.size());
  for (Eigen::Index idx = 0; idx < amplitudes.size(); ++idx) {
    Eigen::Index src = 0;
    for (int slot = 0; slot < space.particles; ++slot) {
      const Eigen::Index digit =
          (idx / strides[static_cast<std::size_t>(slot)]) % d;
      src += digit * strides[static_cast<std::size_t>(perm[static_cast<std::size_t>(slot)])];
    }
    out(idx) = amplitudes(src);
  }
  return out;
}

int permutation_sign(const std::vector<int>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

SymmetrizedState symmetrize(const SymmetrizedState& v) {
  return SymmetrizedState{
      v.space, permutation_projector_apply<std::complex<double>>(v.space, v.amplitudes, false),
      Sector::symmetric};
}

SymmetrizedState antisymmetrize(const SymmetrizedState& v) {
  return SymmetrizedState{
      v.space, permutation_projector_apply<std::complex<double>>(v.space, v.amplitudes, true),
      Sector::antisymmetric};
}

Eigen::MatrixXd symmetrizer_matrix(int d, int n) { return projector_matrix(d, n, false); }

Eigen::MatrixXd antisymmetrizer_matrix(int d, int n) { return projector_matrix(d, n, true); }

double sector_deviation(const SymmetrizedState& state) {
  if (state.sector == Sector::none || state.space.particles < 2) return 0.0;
  const std::vector<Eigen::Index> strides = slot_strides(state.space);
  const double sign = state.sector == Sector::symmetric ? 1.0 : -1.0;
  double worst = 0.0;
  for (int k = 0; k + 1 < state.space.particles; ++k) {
    const Eigen::VectorXcd swapped =
        swap_slots<std::complex<double>>(state.space, strides, state.amplitudes, k, k + 1);
    worst = std::max(worst, (swapped - sign * state.amplitudes).cwiseAbs().maxCoeff());
  }
  return worst;
}

std::pair<long long, long long> sector_dimensions(int d, int n) {
  if (d < 1) throw std::invalid_argument("single-particle dimension must be >= 1");
  if (n < 0) throw std::invalid_argument("particle number must be >= 0");
  return {binomial(d + n - 1, n), binomial(d, n)};
}

std::vector<long long> fock_truncation(int d, int nmax, Statistics statistics) {
  if (nmax < 0) throw std::invalid_argument("nmax must be >= 0");
  std::vector<long long> dims;
  dims.reserve(static_cast<std::size_t>(nmax) + 1);
  for (int n = 0; n <= nmax; ++n) {
    const auto [sym, antisym] = sector_dimensions(d, n);
    dims.push_back(statistics == Statistics::boson ? sym : antisym);
  }
  return dims;
}

double GridWavefunction::norm() const {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < size(); ++i) {
    const double w = (i == 0 || i + 1 == size()) ? 0.5 : 1.0;
    sum += w * std::norm(values(i));
  }
  return std::sqrt(sum * spacing);
}

bool GridWavefunction::same_grid(const GridWavefunction& other) const {
  return origin == other.origin && spacing == other.spacing && size() == other.size();
}

GridWavefunction gaussian_packet(double center, double sigma, double origin, double spacing,
                                 Eigen::Index count) {
  if (sigma <= 0.0) throw std::invalid_argument("sigma must be positive");
  if (spacing <= 0.0 || count < 2) throw std::invalid_argument("grid needs spacing > 0, count >= 2");
  GridWavefunction psi{origin, spacing, Eigen::VectorXcd(count)};
  const double amplitude = std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.25);
  for (Eigen::Index i = 0; i < count; ++i) {
    const double x = psi.point(i) - center;
    psi.values(i) = amplitude * std::exp(-x * x / (4.0 * sigma * sigma));
  }
  return psi;
}

TwoFermionDensity two_fermion_density(const GridWavefunction& psi_a,
                                      const GridWavefunction& psi_b) {
  if (!psi_a.same_grid(psi_b)) throw GridMismatchError{};
  const Eigen::Index m = psi_a.size();
  TwoFermionDensity out{Eigen::MatrixXd(m, m), Eigen::MatrixXd(m, m), Eigen::MatrixXd(m, m),
                        Eigen::MatrixXd(m, m)};
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const std::complex<double> a_i = psi_a.values(i), b_i = psi_b.values(i);
      const std::complex<double> a_j = psi_a.values(j), b_j = psi_b.values(j);
      out.direct_ab(i, j) = 0.5 * std::norm(a_i * b_j);
      out.direct_ba(i, j) = 0.5 * std::norm(b_i * a_j);
      out.interference(i, j) = (a_i * b_j * std::conj(b_i * a_j)).real();
      out.density(i, j) = out.direct_ab(i, j) + out.direct_ba(i, j) - out.interference(i, j);
    }
  }
  return out;
}

double interference_fraction(const GridWavefunction& psi_a, const GridWavefunction& psi_b) {
  if (!psi_a.same_grid(psi_b)) throw GridMismatchError{};
  const Eigen::Index m = psi_a.size();
  double numerator = 0.0;
  double denominator = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double wi = (i == 0 || i + 1 == m) ? 0.5 : 1.0;
    const std::complex<double> a_i = psi_a.values(i), b_i = psi_b.values(i);
    for (Eigen::Index j = 0; j < m; ++j) {
      const double w = wi * ((j == 0 || j + 1 == m) ? 0.5 : 1.0);
      const std::complex<double> a_j = psi_a.values(j), b_j = psi_b.values(j);
      const double direct = 0.5 * (std::norm(a_i * b_j) + std::norm(b_i * a_j));
      const double interference = (a_i * b_j * std::conj(b_i * a_j)).real();
      numerator += w * std::abs(interference);
      denominator += w * (direct - interference);
    }
  }
  return numerator / denominator;
}

std::vector<std::pair<double, double>> overlap_decay_curve(double sigma,
                                                           const std::vector<double>& separations) {
  if (sigma <= 0.0) throw std::invalid_argument("sigma must be positive");
  for (std::size_t i = 0; i < separations.size(); ++i) {
    if (separations[i] <= 0.0) throw std::invalid_argument("separations must be positive");
    if (i > 0 && separations[i] <= separations[i - 1])
      throw std::invalid_argument("separations must be strictly ascending");
  }
  std::vector<std::pair<double, double>> curve;
  curve.reserve(separations.size());
  const double spacing = sigma / 64.0;
  for (double s : separations) {
    const double half_width = s / 2.0 + 8.0 * sigma;
    const auto half_count = static_cast<Eigen::Index>(std::ceil(half_width / spacing));
    const double origin = -spacing * static_cast<double>(half_count);
    const Eigen::Index count = 2 * half_count + 1;
    const GridWavefunction a = gaussian_packet(-s / 2.0, sigma, origin, spacing, count);
    const GridWavefunction b = gaussian_packet(s / 2.0, sigma, origin, spacing, count);
    curve.emplace_back(s, interference_fraction(a, b));
  }
  return curve;
}

}  // namespace qontext::fock
