// Constructors and validators for the bipartite state families the
// toolkit works with, plus seeded random-state generation.

#ifndef ENTCAP_STATES_HPP
#define ENTCAP_STATES_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "entcap/matcore.hpp"

namespace entcap {

// Reduced fraction with positive denominator. Only has to cover the
// small combinatorics of the spin-multiplet weights, but every
// operation checks for int64 overflow anyway.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d);

  Rational operator+(const Rational& rhs) const;
  Rational operator*(const Rational& rhs) const;
  bool operator==(const Rational& rhs) const {
    return num == rhs.num && den == rhs.den;
  }
  double to_double() const { return static_cast<double>(num) / den; }
};

// Validated bipartite density matrix. Construction enforces
// hermiticity within 1e-10, eigenvalues >= -1e-10, and unit trace
// within 1e-10; the spectrum found during validation and both
// marginals are kept.
class DensityMatrix {
public:
  DensityMatrix(ComplexMatrix matrix, BipartiteDims dims);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const BipartiteDims& dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return matrix_.dim(); }

  // Ascending eigenvalues, from the validation pass.
  const std::vector<double>& spectrum() const noexcept { return spectrum_; }

  // rho^A = Tr_B rho and rho^B = Tr_A rho
  const ComplexMatrix& marginal_a() const noexcept { return marginal_a_; }
  const ComplexMatrix& marginal_b() const noexcept { return marginal_b_; }

private:
  ComplexMatrix matrix_;
  BipartiteDims dims_;
  std::vector<double> spectrum_;
  ComplexMatrix marginal_a_;
  ComplexMatrix marginal_b_;
};

double von_neumann_entropy(const DensityMatrix& rho);

// Spin-multiplet bookkeeping for the ordered-pairs-with-lost-order
// family: multiplicities d_j and weights p_j for j = 0..j_max, exact.
//   d_j = (2j+1)/(2j_max+1) * C(2j_max+1, j_max-j)
//   p_j = (2j+1) / (d_j 2^(2 j_max))
// and sum_j d_j^2 p_j = 1 holds as a rational identity.
struct EisertParams {
  int j_max = 0;
  int n_pairs = 0;  // 2 j_max
  std::vector<long long> multiplicities;
  std::vector<Rational> probabilities;
};

// Coefficient matrix of a maximally correlated state
// rho = sum_ij alpha(i,j) |ii><jj|. alpha must itself be a valid
// density matrix (checked on construction).
struct MaxCorrelatedCoeffs {
  explicit MaxCorrelatedCoeffs(ComplexMatrix alpha);
  ComplexMatrix alpha;
};

// |psi_+(C^d)> = d^{-1/2} sum_i |ii>, as a projector.
DensityMatrix max_entangled(std::size_t d);

// rho(F, d) = p P_+ + (1-p) I/d^2 with p = (F - 1/d^2)/(1 - 1/d^2),
// so that Tr[rho P_+] = F. Requires 1/d^2 <= F <= 1.
DensityMatrix isotropic(double fidelity, std::size_t d);

DensityMatrix max_correlated(const MaxCorrelatedCoeffs& coeffs);

// Mixture of the four Bell states in the fixed order
// (Phi+, Phi-, Psi+, Psi-).
DensityMatrix bell_diagonal(const std::array<double, 4>& p);

EisertParams eisert_params(int j_max);

// The lost-order state built explicitly: 2 j_max shared singlet-free
// pairs regrouped into P_+(C^(2^N)) and averaged over all permutations
// of Bob's qubit factors. Supported for j_max in {1, 2} (dims 16, 256).
DensityMatrix eisert_state_explicit(int j_max);

// rho = G G^dagger / Tr(G G^dagger) with G an n x rank matrix of iid
// standard complex normals drawn from Rng(seed), filled row-major.
DensityMatrix random_density(std::size_t d_a, std::size_t d_b,
                             std::size_t rank, std::uint64_t seed);

DensityMatrix random_pure(std::size_t d_a, std::size_t d_b,
                          std::uint64_t seed);

}  // namespace entcap

#endif  // ENTCAP_STATES_HPP
