// Dense complex linear algebra and entropy primitives.
//
// Everything in this layer is self-contained: a flat row-major complex
// matrix type, a cyclic Jacobi eigensolver for Hermitian matrices, the
// bipartite index maps (partial trace / partial transpose), and the
// spectral entropy functions built on top of them.
//
// Bipartite index convention, fixed globally: a composite index is
// i = a*d_B + b, i.e. subsystem A is the slower-varying block.

#ifndef ENTCAP_MATCORE_HPP
#define ENTCAP_MATCORE_HPP

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace entcap {

using cplx = std::complex<double>;

enum class errc {
  not_hermitian,
  dimension_mismatch,
  bad_dimension,
  fidelity_out_of_range,
  invalid_coefficients,
  invalid_probabilities,
  invalid_state,
  invalid_ensemble,
  bad_j,
  unsupported_j,
  bad_rank,
  singular_sigma,
  no_convergence,
  parse_error,
  validation_error,
  bad_range,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

// Dense square complex matrix, row-major.
class ComplexMatrix {
public:
  ComplexMatrix() : dim_(0) {}
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  static ComplexMatrix identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * dim_ + j];
  }

  cplx* data() noexcept { return data_.data(); }
  const cplx* data() const noexcept { return data_.data(); }

  ComplexMatrix dagger() const;
  ComplexMatrix transpose() const;
  cplx trace() const;
  double frobenius_norm() const;
  double max_abs() const;

  bool all_finite() const;
  // max_ij |m(i,j) - conj(m(j,i))| <= tol
  bool is_hermitian(double tol) const;
  double hermiticity_defect() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cplx scalar);

private:
  std::size_t dim_;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(cplx scalar, ComplexMatrix m);
ComplexMatrix operator*(double scalar, ComplexMatrix m);

// A B A^dagger without forming the intermediate twice.
ComplexMatrix conjugate_by(const ComplexMatrix& a, const ComplexMatrix& b);

// max_ij |a(i,j) - b(i,j)|
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

struct BipartiteDims {
  std::size_t d_a;
  std::size_t d_b;
  std::size_t total() const noexcept { return d_a * d_b; }
};

enum class Subsystem { a, b };

// Eigensystem of a Hermitian matrix: ascending eigenvalues, matching
// unit eigenvectors as the columns of a unitary matrix.
struct HermitianSpectrum {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

// Kronecker product; subsystem A (the left factor) indexes the slower block.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Cyclic Jacobi diagonalisation. Requires hermiticity within 1e-10
// (max-abs of m - m^dagger), throws errc::not_hermitian otherwise.
// Stops once the off-diagonal Frobenius norm falls below
// 1e-12 * max(1, ||m||_F); at most 100 sweeps.
HermitianSpectrum eig_hermitian(const ComplexMatrix& m);

// sum_k lambda_k v_k v_k^dagger, with the upper triangle mirrored so
// the result is exactly Hermitian; zero eigenvalues are skipped.
ComplexMatrix from_spectrum(const ComplexMatrix& eigenvectors,
                            const std::vector<double>& eigenvalues);

ComplexMatrix partial_trace(const ComplexMatrix& m, const BipartiteDims& dims,
                            Subsystem over);

// Transpose on subsystem B. Involutive, trace- and hermiticity-preserving.
ComplexMatrix partial_transpose(const ComplexMatrix& m,
                                const BipartiteDims& dims);

// Sum of singular values. Hermitian inputs take the |eigenvalue| path;
// anything else goes through the spectrum of m^dagger m.
double trace_norm(const ComplexMatrix& m);

// -sum_k lambda_k log2 lambda_k with 0 log 0 = 0. Eigenvalues in
// [-1e-10, 0) are treated as exact zeros (round-off); anything below
// -1e-10 is the caller's validation problem, not ours.
double entropy_from_spectrum(const std::vector<double>& eigenvalues);

// S(rho) = -Tr(rho log2 rho) in bits, for a density-matrix-like input.
double von_neumann_entropy(const ComplexMatrix& rho);

// S(rho||sigma) = Tr[rho (log2 rho - log2 sigma)] in bits. Returns
// +infinity when rho has support (eigenvalue threshold 1e-10) on the
// null space of sigma.
double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma);

}  // namespace entcap

#endif  // ENTCAP_MATCORE_HPP
