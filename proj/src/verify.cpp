#include "entcap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "entcap/parallel.hpp"
#include "entcap/rng.hpp"

namespace entcap {

namespace {

constexpr double kSolverSlack = 2e-3;  // doubled solver acceptance tol
constexpr double kExactTol = 1e-9;

// eta(t) = -t log2(t), the binary-entropy tail of the Fannes bound.
double eta(double t) { return t > 0.0 ? -t * std::log2(t) : 0.0; }

// Mixtures drawn with delta <= 0.18 keep ||rho - sigma||_1 <= 0.36,
// inside the 1/e validity window of the continuity bounds.
constexpr double kMixCap = 0.18;

CheckOutcome reduce(std::string name, const std::vector<double>& violations,
                    double tolerance) {
  CheckOutcome out;
  out.name = std::move(name);
  out.samples = static_cast<int>(violations.size());
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i == 0 || violations[i] > out.worst_violation) {
      out.worst_violation = violations[i];
    }
    if (violations[i] > tolerance) {
      ++out.failures;
      std::ostringstream os;
      os << "sample " << i << ": violation " << violations[i];
      out.details.push_back(os.str());
    }
  }
  return out;
}

DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b,
                  double weight_b) {
  ComplexMatrix m = a.matrix();
  m *= cplx(1.0 - weight_b, 0.0);
  ComplexMatrix other = b.matrix();
  other *= cplx(weight_b, 0.0);
  m += other;
  return DensityMatrix(std::move(m), a.dims());
}

// Bell basis in the fixed (Phi+, Phi-, Psi+, Psi-) order; row k holds
// the coefficients of |B_k> on the computational basis.
constexpr double kInvSqrt2 = 0.7071067811865476;
constexpr double kBell[4][4] = {
    {kInvSqrt2, 0.0, 0.0, kInvSqrt2},
    {kInvSqrt2, 0.0, 0.0, -kInvSqrt2},
    {0.0, kInvSqrt2, kInvSqrt2, 0.0},
    {0.0, kInvSqrt2, -kInvSqrt2, 0.0},
};

bool certified_rank_two_bell_diagonal(const DensityMatrix& rho) {
  if (rho.dims().d_a != 2 || rho.dims().d_b != 2) return false;
  const ComplexMatrix& m = rho.matrix();
  const ComplexMatrix half = 0.5 * ComplexMatrix::identity(2);
  if (max_abs_diff(rho.marginal_a(), half) > 1e-10) return false;
  if (max_abs_diff(rho.marginal_b(), half) > 1e-10) return false;
  int heavy = 0;
  for (int k = 0; k < 4; ++k) {
    for (int l = 0; l < 4; ++l) {
      cplx elem(0.0, 0.0);
      for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
          elem += kBell[k][r] * m(static_cast<std::size_t>(r),
                                  static_cast<std::size_t>(c)) *
                  kBell[l][c];
        }
      }
      if (k == l) {
        if (elem.real() > 1e-10) ++heavy;
      } else if (std::abs(elem) > 1e-10) {
        return false;
      }
    }
  }
  return heavy <= 2;
}

}  // namespace

CheckOutcome check_ib_le_er(int n_samples, std::uint64_t seed) {
  const std::size_t n = n_samples > 0 ? static_cast<std::size_t>(n_samples)
                                      : 0;
  std::vector<double> violations(n);
  parallel_for(n, [&](std::size_t i) {
    const std::uint64_t s = Rng::derive(seed, i);
    const std::size_t rank = 1 + (i % 4);
    const DensityMatrix rho = random_density(2, 2, rank, s);
    const double ib = coherent_information(rho);
    const double er = relative_entropy_of_entanglement(rho, {}).value;
    violations[i] = ib - er;
  });
  return reduce("ib_le_er", violations, kSolverSlack);
}

CheckOutcome check_fannes(int n_samples, std::uint64_t seed) {
  const std::size_t n = n_samples > 0 ? static_cast<std::size_t>(n_samples)
                                      : 0;
  std::vector<double> violations(n);
  parallel_for(n, [&](std::size_t i) {
    Rng r(Rng::derive(seed, i));
    const DensityMatrix rho = random_density(2, 2, 1 + (i % 4), r.next_u64());
    const DensityMatrix tau =
        random_density(2, 2, 1 + ((i / 4) % 4), r.next_u64());
    const double delta = kMixCap * r.next_unit();
    const DensityMatrix sigma = mix(rho, tau, delta);
    const double t = trace_norm(sigma.matrix() - rho.matrix());
    const double lhs =
        std::abs(von_neumann_entropy(rho) - von_neumann_entropy(sigma));
    const double bound = t * 2.0 + eta(t);  // log2(dim 4) = 2
    violations[i] = lhs - bound;
  });
  return reduce("fannes", violations, kExactTol);
}

CheckOutcome check_ib_continuity(int n_samples, std::uint64_t seed) {
  const std::size_t n = n_samples > 0 ? static_cast<std::size_t>(n_samples)
                                      : 0;
  std::vector<double> violations(n);
  parallel_for(n, [&](std::size_t i) {
    Rng r(Rng::derive(seed, i));
    const std::size_t d = 2 + (i % 2);
    const DensityMatrix psi = random_pure(d, d, r.next_u64());
    const DensityMatrix tau = random_density(d, d, d * d, r.next_u64());
    const double delta = kMixCap * r.next_unit();
    const DensityMatrix rho = mix(psi, tau, delta);
    const double t = trace_norm(rho.matrix() - psi.matrix());
    const double lhs =
        std::abs(coherent_information(rho) - coherent_information(psi));
    const double bound =
        3.0 * t * std::log2(static_cast<double>(d)) + 2.0 * eta(t);
    violations[i] = lhs - bound;
  });
  return reduce("continuity", violations, kExactTol);
}

CheckOutcome check_er_convexity(int n_samples, std::uint64_t seed) {
  const std::size_t n = n_samples > 0 ? static_cast<std::size_t>(n_samples)
                                      : 0;
  std::vector<double> violations(n);
  parallel_for(n, [&](std::size_t i) {
    Rng r(Rng::derive(seed, i));
    const std::size_t terms = 2 + (i % 2);
    std::vector<double> weights(terms);
    double total = 0.0;
    for (double& w : weights) {
      w = 0.1 + r.next_unit();
      total += w;
    }
    for (double& w : weights) w /= total;

    ComplexMatrix mixture(4);
    double rhs = 0.0;
    for (std::size_t k = 0; k < terms; ++k) {
      const DensityMatrix psi = random_pure(2, 2, r.next_u64());
      ComplexMatrix weighted = psi.matrix();
      weighted *= cplx(weights[k], 0.0);
      mixture += weighted;
      rhs += weights[k] * von_neumann_entropy(psi.marginal_b());
    }
    const DensityMatrix rho(std::move(mixture), {2, 2});
    const double lhs = relative_entropy_of_entanglement(rho, {}).value;
    violations[i] = lhs - rhs;
  });
  return reduce("convexity", violations, kSolverSlack);
}

CheckOutcome check_eisert(int j_max) {
  if (j_max != 1 && j_max != 2) {
    throw Error(errc::unsupported_j,
                "explicit cross-check covers j_max in {1, 2}");
  }
  const EisertParams params = eisert_params(j_max);
  const EisertMeasures closed = eisert_measures_closed(params);
  const DensityMatrix explicit_state = eisert_state_explicit(j_max);
  const double ib_explicit = coherent_information(explicit_state);

  // Violations are normalized to "amount over allowance"; anything
  // positive is a failure.
  std::vector<double> violations;
  violations.push_back(std::abs(ib_explicit - closed.i_b) - kExactTol);
  if (j_max == 1) {
    bool trivial_multiplicities = true;
    for (long long d : params.multiplicities) {
      if (d != 1) trivial_multiplicities = false;
    }
    const bool equal = trivial_multiplicities && closed.i_b == closed.e_r;
    violations.push_back(equal ? -1.0 : 1.0);
  } else {
    violations.push_back(closed.i_b - closed.e_r);  // need e_r > i_b
  }
  CheckOutcome out = reduce("eisert_j" + std::to_string(j_max), violations,
                            0.0);
  return out;
}

MeasureReport sandwich_report(const DensityMatrix& rho,
                              const std::string& label) {
  MeasureReport report;
  report.state_label = label;
  report.i_b = coherent_information(rho);
  report.chi_star = dc_capacity(rho);
  if (rho.dim() > 16) return report;

  const ErResult er = relative_entropy_of_entanglement(rho, {});
  report.e_r = ErSummary{er.value, er.iterations, er.converged};
  report.flags.push_back({"ib_le_er", report.i_b <= er.value + kSolverSlack,
                          er.value - report.i_b});
  if (certified_rank_two_bell_diagonal(rho)) {
    const double hashing =
        std::max(0.0, 1.0 - entropy_from_spectrum(rho.spectrum()));
    report.hashing_lower = hashing;
    report.flags.push_back({"hashing_le_er",
                            hashing <= er.value + kSolverSlack,
                            er.value - hashing});
  }
  return report;
}

}  // namespace entcap
