#include "entcap/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace entcap {

namespace {
constexpr double kHermitianTol = 1e-10;
constexpr double kSupportTol = 1e-10;
}  // namespace

const char* errc_name(errc code) {
  switch (code) {
    case errc::not_hermitian: return "NotHermitian";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::bad_dimension: return "BadDimension";
    case errc::fidelity_out_of_range: return "FidelityOutOfRange";
    case errc::invalid_coefficients: return "InvalidCoefficients";
    case errc::invalid_probabilities: return "InvalidProbabilities";
    case errc::invalid_state: return "InvalidState";
    case errc::invalid_ensemble: return "InvalidEnsemble";
    case errc::bad_j: return "BadJ";
    case errc::unsupported_j: return "UnsupportedJ";
    case errc::bad_rank: return "BadRank";
    case errc::singular_sigma: return "SingularSigma";
    case errc::no_convergence: return "NoConvergence";
    case errc::parse_error: return "ParseError";
    case errc::validation_error: return "ValidationError";
    case errc::bad_range: return "BadRange";
  }
  return "UnknownError";
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::dagger() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (const cplx& z : data_) sum += std::norm(z);
  return std::sqrt(sum);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool ComplexMatrix::all_finite() const {
  for (const cplx& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

double ComplexMatrix::hermiticity_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      worst = std::max(worst,
                       std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return worst;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  return hermiticity_defect() <= tol;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scalar) {
  for (cplx& z : data_) z *= scalar;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
  lhs += rhs;
  return lhs;
}

ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
  lhs -= rhs;
  return lhs;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  const std::size_t n = lhs.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = lhs(i, k);
      if (aik == cplx(0.0)) continue;
      const cplx* brow = rhs.data() + k * n;
      cplx* orow = out.data() + i * n;
      for (std::size_t j = 0; j < n; ++j) orow[j] += aik * brow[j];
    }
  }
  return out;
}

ComplexMatrix operator*(cplx scalar, ComplexMatrix m) {
  m *= scalar;
  return m;
}

ComplexMatrix operator*(double scalar, ComplexMatrix m) {
  m *= cplx(scalar, 0.0);
  return m;
}

ComplexMatrix conjugate_by(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b * a.dagger();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double worst = 0.0;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  ComplexMatrix out(na * nb);
  for (std::size_t ia = 0; ia < na; ++ia)
    for (std::size_t ja = 0; ja < na; ++ja) {
      const cplx aij = a(ia, ja);
      if (aij == cplx(0.0)) continue;
      for (std::size_t ib = 0; ib < nb; ++ib)
        for (std::size_t jb = 0; jb < nb; ++jb)
          out(ia * nb + ib, ja * nb + jb) = aij * b(ib, jb);
    }
  return out;
}

namespace {

double offdiagonal_frobenius(const ComplexMatrix& a) {
  double sum = 0.0;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) sum += std::norm(a(i, j));
  return std::sqrt(2.0 * sum);
}

}  // namespace

HermitianSpectrum eig_hermitian(const ComplexMatrix& m) {
  if (!m.all_finite())
    throw Error(errc::not_hermitian, "matrix has non-finite entries");
  const double defect = m.hermiticity_defect();
  if (defect > kHermitianTol)
    throw Error(errc::not_hermitian,
                "hermiticity defect " + std::to_string(defect));

  const std::size_t n = m.dim();
  ComplexMatrix a = m;
  ComplexMatrix v = ComplexMatrix::identity(n);

  // Off-diagonal Frobenius threshold is scale-relative so inputs of any
  // magnitude converge to the same digit count.
  const double tol = 1e-12 * std::max(1.0, m.frobenius_norm());
  const double skip = tol / (10.0 * std::max<std::size_t>(n, 1));
  constexpr int kMaxSweeps = 100;

  bool done = n <= 1;
  for (int sweep = 0; sweep < kMaxSweeps && !done; ++sweep) {
    if (offdiagonal_frobenius(a) <= tol) {
      done = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r <= skip) continue;

        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const cplx phase = apq / r;
        const double tau = (aqq - app) / (2.0 * r);
        const double t =
            tau == 0.0 ? 1.0
                       : ((tau > 0 ? 1.0 : -1.0) /
                          (std::abs(tau) + std::sqrt(1.0 + tau * tau)));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const cplx s = (t * c) * phase;
        const cplx sc = std::conj(s);

        // A <- G^dagger A G with G = [[c, s], [-conj(s), c]] on (p, q).
        cplx* rowp = a.data() + p * n;
        cplx* rowq = a.data() + q * n;
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sc * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = rowp[k], aqk = rowq[k];
          rowp[k] = c * apk - s * aqk;
          rowq[k] = sc * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = cplx(a(p, p).real(), 0.0);
        a(q, q) = cplx(a(q, q).real(), 0.0);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sc * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!done && offdiagonal_frobenius(a) > tol)
    throw Error(errc::no_convergence, "Jacobi sweeps exhausted");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });

  HermitianSpectrum spec;
  spec.eigenvalues.resize(n);
  spec.eigenvectors = ComplexMatrix(n);
  for (std::size_t col = 0; col < n; ++col) {
    spec.eigenvalues[col] = a(order[col], order[col]).real();
    for (std::size_t k = 0; k < n; ++k)
      spec.eigenvectors(k, col) = v(k, order[col]);
  }
  return spec;
}

ComplexMatrix from_spectrum(const ComplexMatrix& eigenvectors,
                            const std::vector<double>& eigenvalues) {
  const std::size_t n = eigenvectors.dim();
  if (eigenvalues.size() != n)
    throw Error(errc::dimension_mismatch,
                "eigenvalue count does not match eigenvector dimension");
  ComplexMatrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = eigenvalues[k];
    if (w == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx wi = w * eigenvectors(i, k);
      for (std::size_t j = i; j < n; ++j)
        out(i, j) += wi * std::conj(eigenvectors(j, k));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    out(i, i) = cplx(out(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) out(j, i) = std::conj(out(i, j));
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const BipartiteDims& dims,
                            Subsystem over) {
  if (m.dim() != dims.total())
    throw Error(errc::dimension_mismatch,
                "matrix dim " + std::to_string(m.dim()) + " != d_A*d_B " +
                    std::to_string(dims.total()));
  const std::size_t da = dims.d_a, db = dims.d_b;
  if (over == Subsystem::a) {
    ComplexMatrix out(db);
    for (std::size_t b = 0; b < db; ++b)
      for (std::size_t bp = 0; bp < db; ++bp) {
        cplx sum = 0.0;
        for (std::size_t a = 0; a < da; ++a) sum += m(a * db + b, a * db + bp);
        out(b, bp) = sum;
      }
    return out;
  }
  ComplexMatrix out(da);
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t ap = 0; ap < da; ++ap) {
      cplx sum = 0.0;
      for (std::size_t b = 0; b < db; ++b) sum += m(a * db + b, ap * db + b);
      out(a, ap) = sum;
    }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m,
                                const BipartiteDims& dims) {
  if (m.dim() != dims.total())
    throw Error(errc::dimension_mismatch,
                "matrix dim " + std::to_string(m.dim()) + " != d_A*d_B " +
                    std::to_string(dims.total()));
  const std::size_t da = dims.d_a, db = dims.d_b;
  ComplexMatrix out(m.dim());
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t ap = 0; ap < da; ++ap)
      for (std::size_t b = 0; b < db; ++b)
        for (std::size_t bp = 0; bp < db; ++bp)
          out(a * db + b, ap * db + bp) = m(a * db + bp, ap * db + b);
  return out;
}

double trace_norm(const ComplexMatrix& m) {
  if (m.is_hermitian(kHermitianTol)) {
    const HermitianSpectrum spec = eig_hermitian(m);
    double sum = 0.0;
    for (double lambda : spec.eigenvalues) sum += std::abs(lambda);
    return sum;
  }
  ComplexMatrix gram = m.dagger() * m;
  // Round-off can leave a tiny skew part; the Gram matrix is Hermitian.
  for (std::size_t i = 0; i < gram.dim(); ++i)
    for (std::size_t j = i; j < gram.dim(); ++j) {
      const cplx sym = 0.5 * (gram(i, j) + std::conj(gram(j, i)));
      gram(i, j) = sym;
      gram(j, i) = std::conj(sym);
    }
  const HermitianSpectrum spec = eig_hermitian(gram);
  double sum = 0.0;
  for (double lambda : spec.eigenvalues)
    sum += std::sqrt(std::max(lambda, 0.0));
  return sum;
}

double entropy_from_spectrum(const std::vector<double>& eigenvalues) {
  double s = 0.0;
  for (double lambda : eigenvalues) {
    if (lambda <= 0.0) continue;  // [-1e-10, 0) clips to zero weight
    s -= lambda * std::log2(lambda);
  }
  // lambda marginally above 1 would contribute a ~1e-15 negative value.
  return (s < 0.0 && s > -1e-12) ? 0.0 : s;
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  return entropy_from_spectrum(eig_hermitian(rho).eigenvalues);
}

double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw Error(errc::dimension_mismatch,
                "relative entropy needs equal dimensions");
  const HermitianSpectrum r = eig_hermitian(rho);
  const HermitianSpectrum s = eig_hermitian(sigma);
  const std::size_t n = rho.dim();

  // overlap(i, j) = |<u_i|v_j>|^2
  ComplexMatrix cross = r.eigenvectors.dagger() * s.eigenvectors;

  double null_weight = 0.0;
  double value = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ri = r.eigenvalues[i];
    if (ri <= kSupportTol) continue;
    value += ri * std::log2(ri);
    for (std::size_t j = 0; j < n; ++j) {
      const double overlap = std::norm(cross(i, j));
      const double sj = s.eigenvalues[j];
      if (sj <= kSupportTol)
        null_weight += ri * overlap;
      else
        value -= ri * overlap * std::log2(sj);
    }
  }
  if (null_weight > kSupportTol)
    return std::numeric_limits<double>::infinity();
  // Klein's inequality says >= 0; snap round-off negatives.
  return (value < 0.0 && value > -1e-9) ? 0.0 : value;
}

}  // namespace entcap
