#include "entcap/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "entcap/rng.hpp"

namespace entcap {

namespace {

constexpr double kStateTol = 1e-10;

long long narrow128(__int128 v, const char* what) {
  if (v > static_cast<__int128>(0x7fffffffffffffffLL) ||
      v < -static_cast<__int128>(0x7fffffffffffffffLL) - 1) {
    throw Error(errc::validation_error,
                std::string(what) + " overflows 64-bit rational arithmetic");
  }
  return static_cast<long long>(v);
}

// C(n, k), exact.
long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;  // exact at every step
  }
  return narrow128(r, "binomial coefficient");
}

void check_density_like(const ComplexMatrix& m, errc code, const char* what) {
  if (!m.all_finite()) {
    throw Error(code, std::string(what) + " has non-finite entries");
  }
  if (!m.is_hermitian(kStateTol)) {
    std::ostringstream os;
    os << what << " is not Hermitian (defect " << m.hermiticity_defect()
       << ")";
    throw Error(code, os.str());
  }
  const cplx tr = m.trace();
  if (std::abs(tr - cplx(1.0, 0.0)) > kStateTol) {
    std::ostringstream os;
    os << what << " has trace " << tr.real() << " + " << tr.imag()
       << "i, expected 1";
    throw Error(code, os.str());
  }
}

}  // namespace

Rational::Rational(long long n, long long d) {
  if (d == 0) {
    throw Error(errc::validation_error, "rational with zero denominator");
  }
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const long long g = std::gcd(n < 0 ? -n : n, d);
  num = g > 1 ? n / g : n;
  den = g > 1 ? d / g : d;
}

Rational Rational::operator+(const Rational& rhs) const {
  const __int128 n = static_cast<__int128>(num) * rhs.den +
                     static_cast<__int128>(rhs.num) * den;
  const __int128 d = static_cast<__int128>(den) * rhs.den;
  return Rational(narrow128(n, "rational sum"), narrow128(d, "rational sum"));
}

Rational Rational::operator*(const Rational& rhs) const {
  // Cross-reduce first so intermediates stay small.
  const Rational a(num, rhs.den);
  const Rational b(rhs.num, den);
  const __int128 n = static_cast<__int128>(a.num) * b.num;
  const __int128 d = static_cast<__int128>(a.den) * b.den;
  return Rational(narrow128(n, "rational product"),
                  narrow128(d, "rational product"));
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, BipartiteDims dims)
    : matrix_(std::move(matrix)), dims_(dims) {
  if (dims_.d_a == 0 || dims_.d_b == 0) {
    throw Error(errc::bad_dimension, "subsystem dimensions must be positive");
  }
  if (matrix_.dim() != dims_.total()) {
    std::ostringstream os;
    os << "matrix dimension " << matrix_.dim() << " != d_A*d_B = "
       << dims_.total();
    throw Error(errc::dimension_mismatch, os.str());
  }
  check_density_like(matrix_, errc::invalid_state, "state");
  HermitianSpectrum es = eig_hermitian(matrix_);
  spectrum_ = std::move(es.eigenvalues);
  if (spectrum_.front() < -kStateTol) {
    std::ostringstream os;
    os << "state has eigenvalue " << spectrum_.front() << " below -1e-10";
    throw Error(errc::invalid_state, os.str());
  }
  marginal_a_ = partial_trace(matrix_, dims_, Subsystem::b);
  marginal_b_ = partial_trace(matrix_, dims_, Subsystem::a);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return entropy_from_spectrum(rho.spectrum());
}

MaxCorrelatedCoeffs::MaxCorrelatedCoeffs(ComplexMatrix alpha_in)
    : alpha(std::move(alpha_in)) {
  if (alpha.dim() < 2) {
    throw Error(errc::invalid_coefficients,
                "coefficient matrix must be at least 2x2");
  }
  check_density_like(alpha, errc::invalid_coefficients, "coefficient matrix");
  const HermitianSpectrum es = eig_hermitian(alpha);
  if (es.eigenvalues.front() < -kStateTol) {
    std::ostringstream os;
    os << "coefficient matrix has eigenvalue " << es.eigenvalues.front()
       << " below -1e-10";
    throw Error(errc::invalid_coefficients, os.str());
  }
}

DensityMatrix max_entangled(std::size_t d) {
  if (d < 2) {
    throw Error(errc::bad_dimension, "maximally entangled state needs d >= 2");
  }
  ComplexMatrix m(d * d);
  const double inv_d = 1.0 / static_cast<double>(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      m(i * d + i, j * d + j) = inv_d;
    }
  }
  return DensityMatrix(std::move(m), {d, d});
}

DensityMatrix isotropic(double fidelity, std::size_t d) {
  if (d < 2) {
    throw Error(errc::bad_dimension, "isotropic state needs d >= 2");
  }
  const double n = static_cast<double>(d) * static_cast<double>(d);
  const double f_min = 1.0 / n;
  if (!(fidelity >= f_min - 1e-12) || !(fidelity <= 1.0 + 1e-12)) {
    std::ostringstream os;
    os << "fidelity " << fidelity << " outside [1/d^2, 1] = [" << f_min
       << ", 1]";
    throw Error(errc::fidelity_out_of_range, os.str());
  }
  const double p = (fidelity - f_min) / (1.0 - f_min);
  const std::size_t dim = d * d;
  ComplexMatrix m(dim);
  const double background = (1.0 - p) / n;
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = background;
  const double top = p / static_cast<double>(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      m(i * d + i, j * d + j) += top;
    }
  }
  return DensityMatrix(std::move(m), {d, d});
}

DensityMatrix max_correlated(const MaxCorrelatedCoeffs& coeffs) {
  const std::size_t d = coeffs.alpha.dim();
  ComplexMatrix m(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      m(i * d + i, j * d + j) = coeffs.alpha(i, j);
    }
  }
  return DensityMatrix(std::move(m), {d, d});
}

DensityMatrix bell_diagonal(const std::array<double, 4>& p) {
  double sum = 0.0;
  for (double pk : p) {
    if (!(pk >= 0.0)) {
      throw Error(errc::invalid_probabilities,
                  "Bell weights must be non-negative");
    }
    sum += pk;
  }
  if (std::abs(sum - 1.0) > kStateTol) {
    std::ostringstream os;
    os << "Bell weights sum to " << sum << ", expected 1";
    throw Error(errc::invalid_probabilities, os.str());
  }
  // Basis order (Phi+, Phi-, Psi+, Psi-); index = 2a + b.
  static const int support[4][2] = {{0, 3}, {0, 3}, {1, 2}, {1, 2}};
  static const double sign[4] = {1.0, -1.0, 1.0, -1.0};
  ComplexMatrix m(4);
  for (int k = 0; k < 4; ++k) {
    const int u = support[k][0];
    const int v = support[k][1];
    const double w = p[static_cast<std::size_t>(k)] * 0.5;
    m(u, u) += w;
    m(v, v) += w;
    m(u, v) += w * sign[k];
    m(v, u) += w * sign[k];
  }
  return DensityMatrix(std::move(m), {2, 2});
}

EisertParams eisert_params(int j_max) {
  if (j_max < 1) {
    throw Error(errc::bad_j, "spin quantum number must be >= 1");
  }
  EisertParams out;
  out.j_max = j_max;
  out.n_pairs = 2 * j_max;
  const int n = out.n_pairs;
  const long long pow4 = narrow128(static_cast<__int128>(1) << (2 * j_max),
                                   "weight denominator");
  Rational total(0, 1);
  for (int j = 0; j <= j_max; ++j) {
    const __int128 numer =
        static_cast<__int128>(2 * j + 1) * binomial(n + 1, j_max - j);
    if (numer % (n + 1) != 0) {
      throw Error(errc::validation_error, "multiplicity is not an integer");
    }
    const long long d_j = narrow128(numer / (n + 1), "multiplicity");
    out.multiplicities.push_back(d_j);
    const Rational p_j(2 * j + 1, narrow128(static_cast<__int128>(d_j) * pow4,
                                            "weight denominator"));
    out.probabilities.push_back(p_j);
    total = total + Rational(d_j, 1) * Rational(d_j, 1) * p_j;
  }
  if (!(total == Rational(1, 1))) {
    throw Error(errc::validation_error, "block weights do not sum to 1");
  }
  return out;
}

DensityMatrix eisert_state_explicit(int j_max) {
  if (j_max != 1 && j_max != 2) {
    throw Error(errc::unsupported_j,
                "explicit construction is implemented for j_max in {1, 2}");
  }
  const int n = 2 * j_max;
  const std::size_t d = static_cast<std::size_t>(1) << n;  // 2^N per side

  // All bit-permutation maps on indices 0..d-1.
  std::vector<int> slot(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) slot[static_cast<std::size_t>(k)] = k;
  std::vector<std::vector<std::size_t>> maps;
  do {
    std::vector<std::size_t> map(d);
    for (std::size_t i = 0; i < d; ++i) {
      std::size_t out = 0;
      for (int k = 0; k < n; ++k) {
        const std::size_t bit =
            (i >> (n - 1 - slot[static_cast<std::size_t>(k)])) & 1u;
        out |= bit << (n - 1 - k);
      }
      map[i] = out;
    }
    maps.push_back(std::move(map));
  } while (std::next_permutation(slot.begin(), slot.end()));

  // (1/N!) sum_pi (I ox U_pi) P_+ (I ox U_pi)^dagger
  //   = (1/(N! d)) sum_pi sum_ab |a, pi(a)><b, pi(b)|
  ComplexMatrix m(d * d);
  const double w = 1.0 / (static_cast<double>(maps.size()) *
                          static_cast<double>(d));
  for (const auto& map : maps) {
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) {
        m(a * d + map[a], b * d + map[b]) += w;
      }
    }
  }
  return DensityMatrix(std::move(m), {d, d});
}

DensityMatrix random_density(std::size_t d_a, std::size_t d_b,
                             std::size_t rank, std::uint64_t seed) {
  if (d_a == 0 || d_b == 0) {
    throw Error(errc::bad_dimension, "subsystem dimensions must be positive");
  }
  const std::size_t n = d_a * d_b;
  if (rank < 1 || rank > n) {
    std::ostringstream os;
    os << "rank " << rank << " outside [1, " << n << "]";
    throw Error(errc::bad_rank, os.str());
  }
  Rng rng(seed);
  std::vector<cplx> g(n * rank);
  for (auto& z : g) z = rng.next_complex_normal();

  // rho = G G^dagger / Tr(G G^dagger); fill the upper triangle and
  // mirror so hermiticity is exact.
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      cplx acc(0.0, 0.0);
      for (std::size_t k = 0; k < rank; ++k) {
        acc += g[i * rank + k] * std::conj(g[j * rank + k]);
      }
      m(i, j) = acc;
      if (j != i) m(j, i) = std::conj(acc);
    }
  }
  double tr = 0.0;
  for (std::size_t i = 0; i < n; ++i) tr += m(i, i).real();
  if (!(tr > 0.0)) {
    throw Error(errc::validation_error, "degenerate random draw");
  }
  m *= cplx(1.0 / tr, 0.0);
  return DensityMatrix(std::move(m), {d_a, d_b});
}

DensityMatrix random_pure(std::size_t d_a, std::size_t d_b,
                          std::uint64_t seed) {
  if (d_a == 0 || d_b == 0) {
    throw Error(errc::bad_dimension, "subsystem dimensions must be positive");
  }
  const std::size_t n = d_a * d_b;
  Rng rng(seed);
  std::vector<cplx> v(n);
  double norm_sq = 0.0;
  for (auto& z : v) {
    z = rng.next_complex_normal();
    norm_sq += std::norm(z);
  }
  if (!(norm_sq > 0.0)) {
    throw Error(errc::validation_error, "degenerate random draw");
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (auto& z : v) z *= inv;
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      m(i, j) = v[i] * std::conj(v[j]);
      if (j != i) m(j, i) = std::conj(m(i, j));
    }
  }
  return DensityMatrix(std::move(m), {d_a, d_b});
}

}  // namespace entcap
