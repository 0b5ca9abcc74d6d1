#include "entcap/relent.hpp"

#include <cmath>
#include <iostream>
#include <sstream>
#include <utility>
#include <vector>

namespace entcap {

namespace {

constexpr double kFeasibilityTol = 1e-8;
constexpr double kLn2 = 0.6931471805599453;
constexpr double kTieTol = 1e-12;

void validate_config(const SolverConfig& cfg) {
  const bool ok = cfg.max_iters > 0 && cfg.step_init > 0.0 &&
                  cfg.armijo_c > 0.0 && cfg.backtrack > 0.0 &&
                  cfg.backtrack < 1.0 && cfg.dykstra_sweeps > 0 &&
                  cfg.dykstra_tol > 0.0 && cfg.support_floor > 0.0 &&
                  cfg.convergence_tol > 0.0;
  if (!ok) {
    throw Error(errc::validation_error,
                "solver configuration values must be positive, with "
                "backtrack in (0, 1)");
  }
}

// Projection onto the PSD cone: clip negative eigenvalues.
ComplexMatrix clip_psd(const ComplexMatrix& m) {
  HermitianSpectrum es = eig_hermitian(m);
  for (double& v : es.eigenvalues) {
    if (v < 0.0) v = 0.0;
  }
  return from_spectrum(es.eigenvectors, es.eigenvalues);
}

double min_eigenvalue(const ComplexMatrix& m) {
  return eig_hermitian(m).eigenvalues.front();
}

double feasibility_violation(const ComplexMatrix& x,
                             const BipartiteDims& dims) {
  double v = std::max(0.0, -min_eigenvalue(x));
  v = std::max(v, std::max(0.0, -min_eigenvalue(partial_transpose(x, dims))));
  v = std::max(v, std::abs(x.trace().real() - 1.0));
  return v;
}

struct DykstraOutcome {
  ComplexMatrix point;
  double violation = 0.0;
  bool converged = false;
};

// Dykstra cycle: PSD cone, PPT cone, trace-one affine set. Correction
// terms are kept for the two cones only.
DykstraOutcome dykstra_feasible(const ComplexMatrix& m,
                                const BipartiteDims& dims,
                                const SolverConfig& cfg) {
  const std::size_t n = m.dim();
  ComplexMatrix x = m;
  ComplexMatrix p(n);
  ComplexMatrix q(n);
  for (int sweep = 0; sweep < cfg.dykstra_sweeps; ++sweep) {
    const ComplexMatrix x_old = x;

    ComplexMatrix t = x + p;
    ComplexMatrix y = clip_psd(t);
    p = t - y;

    t = y + q;
    ComplexMatrix z = partial_transpose(
        clip_psd(partial_transpose(t, dims)), dims);
    q = t - z;

    x = std::move(z);
    const double shift =
        (x.trace().real() - 1.0) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) x(i, i) -= shift;

    const double delta = max_abs_diff(x, x_old);
    if (delta <= cfg.dykstra_tol * std::max(1.0, x.max_abs())) {
      const double viol = feasibility_violation(x, dims);
      if (viol <= kFeasibilityTol) {
        return {std::move(x), viol, true};
      }
    }
  }
  const double viol = feasibility_violation(x, dims);
  return {std::move(x), viol, viol <= kFeasibilityTol};
}

// Strictly valid solver iterate carrying its own eigensystem.
struct Iterate {
  ComplexMatrix matrix;
  ComplexMatrix vecs;
  std::vector<double> vals;  // ascending, all > 0 once floor-mixed
};

// Clip negatives, renormalize the trace, optionally mix in
// floor_eps * I/n — one eigendecomposition for all three.
Iterate snap_iterate(const ComplexMatrix& candidate, double floor_eps) {
  HermitianSpectrum es = eig_hermitian(candidate);
  const std::size_t n = es.eigenvalues.size();
  double total = 0.0;
  for (double& v : es.eigenvalues) {
    if (v < 0.0) v = 0.0;
    total += v;
  }
  if (total > 0.0) {
    for (double& v : es.eigenvalues) v /= total;
  } else {
    for (double& v : es.eigenvalues) v = 1.0 / static_cast<double>(n);
  }
  if (floor_eps > 0.0) {
    const double bg = floor_eps / static_cast<double>(n);
    for (double& v : es.eigenvalues) v = (1.0 - floor_eps) * v + bg;
  }
  ComplexMatrix m = from_spectrum(es.eigenvectors, es.eigenvalues);
  return {std::move(m), std::move(es.eigenvectors),
          std::move(es.eigenvalues)};
}

// f(sigma) = Tr[rho log2 rho] - Tr[rho log2 sigma], evaluated through
// sigma's eigensystem; rho_log2_rho = -S(rho).
double objective(const ComplexMatrix& rho, double rho_log2_rho,
                 const Iterate& sig) {
  const std::size_t n = rho.dim();
  double cross = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    cplx w(0.0, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
      cplx row(0.0, 0.0);
      for (std::size_t b = 0; b < n; ++b) {
        row += rho(a, b) * sig.vecs(b, j);
      }
      w += std::conj(sig.vecs(a, j)) * row;
    }
    cross += w.real() * std::log2(sig.vals[j]);
  }
  return rho_log2_rho - cross;
}

// First divided difference of ln on sigma's spectrum; the symmetric
// near-tie rule keeps Phi exactly symmetric (it reduces to 1/s on the
// diagonal), hence G exactly Hermitian.
double log_divided_difference(double a, double b) {
  if (std::abs(a - b) < kTieTol) return 2.0 / (a + b);
  return (std::log(a) - std::log(b)) / (a - b);
}

ComplexMatrix gradient_from(const ComplexMatrix& rho, const Iterate& sig) {
  const std::size_t n = rho.dim();
  // rho~ = V^dagger rho V
  ComplexMatrix t(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cplx acc(0.0, 0.0);
      for (std::size_t k = 0; k < n; ++k) acc += rho(i, k) * sig.vecs(k, j);
      t(i, j) = acc;
    }
  }
  ComplexMatrix core(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cplx acc(0.0, 0.0);
      for (std::size_t k = 0; k < n; ++k) {
        acc += std::conj(sig.vecs(k, i)) * t(k, j);
      }
      core(i, j) = acc * (-log_divided_difference(sig.vals[i], sig.vals[j]) /
                          kLn2);
    }
  }
  // G = V core V^dagger
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cplx acc(0.0, 0.0);
      for (std::size_t k = 0; k < n; ++k) acc += sig.vecs(i, k) * core(k, j);
      t(i, j) = acc;
    }
  }
  ComplexMatrix g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cplx acc(0.0, 0.0);
      for (std::size_t k = 0; k < n; ++k) {
        acc += t(i, k) * std::conj(sig.vecs(j, k));
      }
      g(i, j) = acc;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = cplx(g(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx avg = 0.5 * (g(i, j) + std::conj(g(j, i)));
      g(i, j) = avg;
      g(j, i) = std::conj(avg);
    }
  }
  return g;
}

double real_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t n = a.dim();
  double acc = 0.0;
  const cplx* pa = a.data();
  const cplx* pb = b.data();
  for (std::size_t k = 0; k < n * n; ++k) {
    acc += (std::conj(pa[k]) * pb[k]).real();
  }
  return acc;
}

}  // namespace

bool is_ppt(const DensityMatrix& rho, double tol) {
  const double lo =
      min_eigenvalue(partial_transpose(rho.matrix(), rho.dims()));
  return lo >= -tol;
}

DensityMatrix project_feasible(const ComplexMatrix& m,
                               const BipartiteDims& dims,
                               const SolverConfig& cfg) {
  validate_config(cfg);
  if (m.dim() != dims.total()) {
    throw Error(errc::dimension_mismatch,
                "matrix dimension does not match d_A*d_B");
  }
  if (!m.is_hermitian(1e-10)) {
    throw Error(errc::not_hermitian, "projection input must be Hermitian");
  }
  DykstraOutcome out = dykstra_feasible(m, dims, cfg);
  if (!out.converged) {
    std::ostringstream os;
    os << "Dykstra projection stalled with residual " << out.violation
       << " after " << cfg.dykstra_sweeps << " sweeps";
    throw Error(errc::no_convergence, os.str());
  }
  Iterate snapped = snap_iterate(out.point, 0.0);
  return DensityMatrix(std::move(snapped.matrix), dims);
}

ComplexMatrix er_gradient(const DensityMatrix& rho,
                          const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw Error(errc::dimension_mismatch,
                "rho and sigma have different dimensions");
  }
  HermitianSpectrum es = eig_hermitian(sigma.matrix());
  if (es.eigenvalues.front() <= 1e-14) {
    std::ostringstream os;
    os << "sigma has eigenvalue " << es.eigenvalues.front()
       << "; gradient needs full rank";
    throw Error(errc::singular_sigma, os.str());
  }
  Iterate sig{sigma.matrix(), std::move(es.eigenvectors),
              std::move(es.eigenvalues)};
  return gradient_from(rho.matrix(), sig);
}

ErResult relative_entropy_of_entanglement(const DensityMatrix& rho,
                                          const SolverConfig& cfg) {
  validate_config(cfg);
  const std::size_t n = rho.dim();
  const BipartiteDims dims = rho.dims();
  if (n > 16) {
    std::cerr << "warning: E_R solve at dimension " << n
              << " exceeds the supported 16; continuing\n";
  }
  const double rho_log2_rho = -entropy_from_spectrum(rho.spectrum());

  // sigma_0 = (projection of rho onto the feasible set)/2 + I/(2n)
  DykstraOutcome init = dykstra_feasible(rho.matrix(), dims, cfg);
  ComplexMatrix start = std::move(init.point);
  start *= cplx(0.5, 0.0);
  const double bg = 0.5 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) start(i, i) += bg;

  Iterate sig = snap_iterate(start, cfg.support_floor);
  double f = objective(rho.matrix(), rho_log2_rho, sig);
  double alpha_prev = cfg.step_init;
  int iterations = 0;
  bool converged = false;

  for (int k = 0; k < cfg.max_iters && !converged; ++k) {
    const ComplexMatrix grad = gradient_from(rho.matrix(), sig);
    double alpha = std::min(2.0 * alpha_prev, cfg.step_init);
    bool accepted = false;
    Iterate next;
    double f_next = f;
    for (int bt = 0; bt < 80; ++bt) {
      ComplexMatrix candidate = sig.matrix;
      ComplexMatrix step = grad;
      step *= cplx(alpha, 0.0);
      candidate -= step;
      DykstraOutcome proj = dykstra_feasible(candidate, dims, cfg);
      next = snap_iterate(proj.point, cfg.support_floor);
      f_next = objective(rho.matrix(), rho_log2_rho, next);
      const double g_dot = real_inner(grad, next.matrix - sig.matrix);
      if (f_next <= f + cfg.armijo_c * std::min(g_dot, 0.0)) {
        accepted = true;
        break;
      }
      alpha *= cfg.backtrack;
      if (alpha < 1e-18) break;
    }
    if (!accepted) {
      // No admissible step: stationary to floating-point precision.
      converged = true;
      break;
    }
    const double f_prev = f;
    const double moved = max_abs_diff(next.matrix, sig.matrix);
    sig = std::move(next);
    f = f_next;
    alpha_prev = alpha;
    iterations = k + 1;
    if (f_prev - f <= cfg.convergence_tol * std::max(1.0, std::abs(f_prev)) ||
        moved <= 1e-12) {
      converged = true;
    }
  }

  double value = f;
  if (value < 0.0 && value > -1e-9) value = 0.0;
  const double gnorm = gradient_from(rho.matrix(), sig).frobenius_norm();
  return ErResult{value, DensityMatrix(std::move(sig.matrix), dims),
                  iterations, converged, gnorm};
}

double max_correlated_er_closed(const MaxCorrelatedCoeffs& coeffs) {
  const std::size_t d = coeffs.alpha.dim();
  std::vector<double> diag(d);
  for (std::size_t i = 0; i < d; ++i) diag[i] = coeffs.alpha(i, i).real();
  const double shannon = entropy_from_spectrum(diag);
  const double spectral =
      entropy_from_spectrum(eig_hermitian(coeffs.alpha).eigenvalues);
  double value = shannon - spectral;
  if (value < 0.0 && value > -1e-9) value = 0.0;
  return value;
}

EisertMeasures eisert_measures_closed(const EisertParams& params) {
  EisertMeasures out;
  for (std::size_t j = 0; j < params.probabilities.size(); ++j) {
    const long long d_j = params.multiplicities[j];
    const double weight =
        (Rational(d_j, 1) * Rational(d_j, 1) * params.probabilities[j])
            .to_double();
    const double log_spin =
        std::log2(2.0 * static_cast<double>(j) + 1.0);
    const double log_mult = std::log2(static_cast<double>(d_j));
    out.e_r += weight * log_spin;
    out.i_b += weight * (log_spin - log_mult);
  }
  return out;
}

}  // namespace entcap
