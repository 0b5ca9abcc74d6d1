#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "entcap/matcore.hpp"
#include "entcap/relent.hpp"
#include "entcap/rng.hpp"
#include "entcap/states.hpp"

using namespace entcap;

namespace {

constexpr double kLn2 = 0.6931471805599453;

double binary_entropy(double p) {
  double s = 0.0;
  if (p > 0) s -= p * std::log2(p);
  if (p < 1) s -= (1 - p) * std::log2(1 - p);
  return s;
}

ComplexMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  ComplexMatrix g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.next_complex_normal();
  }
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
    }
  }
  return m;
}

// Maximally correlated coefficient matrix of bell_diagonal(p, 1-p, 0, 0).
ComplexMatrix rank_two_alpha(double p) {
  ComplexMatrix alpha(2);
  alpha(0, 0) = alpha(1, 1) = 0.5;
  alpha(0, 1) = alpha(1, 0) = (2 * p - 1) / 2;
  return alpha;
}

}  // namespace

TEST_CASE("ppt detection") {
  // product states are PPT
  DensityMatrix prod = random_density(1, 2, 2, 10);
  DensityMatrix prod_b = random_density(1, 2, 2, 11);
  DensityMatrix product(kron(prod.matrix(), prod_b.matrix()), {2, 2});
  CHECK(is_ppt(product, 1e-10));

  CHECK_FALSE(is_ppt(max_entangled(2), 1e-10));

  // isotropic threshold at F = 1/2 for d = 2
  CHECK(is_ppt(isotropic(0.3, 2), 1e-10));
  CHECK(is_ppt(isotropic(0.5, 2), 1e-10));
  CHECK_FALSE(is_ppt(isotropic(0.51, 2), 1e-10));
  CHECK_FALSE(is_ppt(isotropic(0.9, 2), 1e-10));
}

TEST_CASE("project_feasible fixes feasible points") {
  DensityMatrix mixed(0.25 * ComplexMatrix::identity(4), {2, 2});
  DensityMatrix out = project_feasible(mixed.matrix(), {2, 2});
  CHECK(max_abs_diff(out.matrix(), mixed.matrix()) < 1e-10);

  DensityMatrix boundary = bell_diagonal({0.5, 0.5, 0, 0});
  DensityMatrix out_b = project_feasible(boundary.matrix(), {2, 2});
  CHECK(max_abs_diff(out_b.matrix(), boundary.matrix()) < 1e-8);
}

TEST_CASE("project_feasible maps the Bell state into the PPT set") {
  DensityMatrix proj = project_feasible(max_entangled(2).matrix(), {2, 2});
  CHECK(is_ppt(proj, 1e-8));
  CHECK(std::abs(proj.matrix().trace() - cplx{1.0, 0.0}) < 1e-8);

  // idempotence within the feasibility tolerance
  DensityMatrix twice = project_feasible(proj.matrix(), {2, 2});
  CHECK(max_abs_diff(twice.matrix(), proj.matrix()) < 1e-8);
}

TEST_CASE("project_feasible validates input") {
  ComplexMatrix nh(4);
  nh(0, 1) = 1.0;
  CHECK_THROWS_WITH_AS(project_feasible(nh, {2, 2}),
                       doctest::Contains("NotHermitian"), Error);

  SolverConfig bad;
  bad.dykstra_sweeps = 0;
  CHECK_THROWS_WITH_AS(
      project_feasible(0.25 * ComplexMatrix::identity(4), {2, 2}, bad),
      doctest::Contains("ValidationError"), Error);
}

TEST_CASE("er gradient closed forms") {
  DensityMatrix mixed(0.25 * ComplexMatrix::identity(4), {2, 2});

  // rho = sigma = I/4: G = -(1/ln2) I
  ComplexMatrix g = er_gradient(mixed, mixed);
  ComplexMatrix expected = (-1.0 / kLn2) * ComplexMatrix::identity(4);
  CHECK(max_abs_diff(g, expected) < 1e-9);

  // commuting diagonal case: G = -(1/ln2) diag(rho_ii / sigma_ii)
  ComplexMatrix rd(4), sd(4);
  double r[] = {0.4, 0.3, 0.2, 0.1};
  double s[] = {0.1, 0.2, 0.3, 0.4};
  for (int i = 0; i < 4; ++i) {
    rd(i, i) = r[i];
    sd(i, i) = s[i];
  }
  DensityMatrix rho(rd, {2, 2});
  DensityMatrix sigma(sd, {2, 2});
  ComplexMatrix gd = er_gradient(rho, sigma);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(gd(i, i) - cplx{-r[i] / s[i] / kLn2, 0.0}) < 1e-9);
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i != j) CHECK(std::abs(gd(i, j)) < 1e-9);
    }
  }

  CHECK(g.hermiticity_defect() == 0.0);
  CHECK(gd.hermiticity_defect() == 0.0);
}

TEST_CASE("er gradient rejects singular sigma") {
  DensityMatrix rho(0.25 * ComplexMatrix::identity(4), {2, 2});
  CHECK_THROWS_WITH_AS(er_gradient(rho, max_entangled(2)),
                       doctest::Contains("SingularSigma"), Error);
}

TEST_CASE("er gradient matches central finite differences") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    DensityMatrix rho = random_density(2, 2, 4, Rng::derive(7100, s));
    DensityMatrix sigma = random_density(2, 2, 4, Rng::derive(7200, s));
    ComplexMatrix g = er_gradient(rho, sigma);

    ComplexMatrix h = random_hermitian(4, Rng::derive(7300, s));
    h *= 1.0 / h.max_abs();

    // <G, H> against the symmetric difference of S(rho || sigma + tH);
    // the Tr[rho log rho] part cancels between the two evaluations
    const double t = 1e-5;
    ComplexMatrix up = sigma.matrix() + t * h;
    ComplexMatrix down = sigma.matrix() - t * h;
    double fd = (relative_entropy(rho.matrix(), up) -
                 relative_entropy(rho.matrix(), down)) /
                (2 * t);

    double inner = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        inner += (g(i, j) * std::conj(h(i, j))).real();
      }
    }
    CHECK(std::abs(inner - fd) / std::max(1.0, std::abs(fd)) < 1e-5);
  }
}

TEST_CASE("solver on separable and pure reference states") {
  DensityMatrix mixed(0.25 * ComplexMatrix::identity(4), {2, 2});
  ErResult sep = relative_entropy_of_entanglement(mixed);
  CHECK(sep.value <= 1e-6);
  CHECK(sep.value >= -1e-9);
  CHECK(max_abs_diff(sep.argmin_sigma.matrix(), mixed.matrix()) < 1e-6);
  CHECK(is_ppt(sep.argmin_sigma, 1e-8));

  ErResult bell = relative_entropy_of_entanglement(max_entangled(2));
  CHECK(std::abs(bell.value - 1.0) < 1e-3);
  CHECK(bell.converged);
  CHECK(is_ppt(bell.argmin_sigma, 1e-8));
}

TEST_CASE("solver matches the hashing closed form on rank-two Bell mixtures") {
  ErResult res = relative_entropy_of_entanglement(bell_diagonal({0.9, 0.1, 0, 0}));
  const double expected = 1.0 - binary_entropy(0.9);
  CHECK(std::abs(expected - 0.531004) < 5e-7);
  CHECK(std::abs(res.value - expected) < 1e-3);
}

TEST_CASE("solver validates configuration") {
  SolverConfig bad;
  bad.max_iters = 0;
  CHECK_THROWS_WITH_AS(relative_entropy_of_entanglement(max_entangled(2), bad),
                       doctest::Contains("ValidationError"), Error);

  SolverConfig bad_step;
  bad_step.step_init = -1.0;
  CHECK_THROWS_AS(
      relative_entropy_of_entanglement(max_entangled(2), bad_step), Error);
}

TEST_CASE("maximally correlated closed form") {
  // Bell state: H(1/2,1/2) - S(pure) = 1
  ComplexMatrix bell_alpha(2);
  bell_alpha(0, 0) = bell_alpha(0, 1) = bell_alpha(1, 0) = bell_alpha(1, 1) =
      0.5;
  CHECK(max_correlated_er_closed(MaxCorrelatedCoeffs(bell_alpha)) ==
        doctest::Approx(1.0).epsilon(1e-10));

  // diagonal alpha is separable
  ComplexMatrix diag_alpha(3);
  diag_alpha(0, 0) = 0.5;
  diag_alpha(1, 1) = 0.3;
  diag_alpha(2, 2) = 0.2;
  CHECK(max_correlated_er_closed(MaxCorrelatedCoeffs(diag_alpha)) ==
        doctest::Approx(0.0).epsilon(1e-10));

  // rank-two Bell-diagonal at p = 0.75: 1 - H2(0.75)
  MaxCorrelatedCoeffs alpha(rank_two_alpha(0.75));
  const double expected = 1.0 - binary_entropy(0.75);
  CHECK(std::abs(expected - 0.188722) < 5e-7);
  CHECK(std::abs(max_correlated_er_closed(alpha) - expected) < 1e-12);

  // the embedded state coincides with the Bell mixture, and the solver
  // agrees with the closed form on it
  DensityMatrix embedded = max_correlated(alpha);
  CHECK(max_abs_diff(embedded.matrix(),
                     bell_diagonal({0.75, 0.25, 0, 0}).matrix()) < 1e-12);
  ErResult res = relative_entropy_of_entanglement(embedded);
  CHECK(std::abs(res.value - expected) < 1e-3);
}

TEST_CASE("eisert closed forms") {
  EisertMeasures one = eisert_measures_closed(eisert_params(1));
  CHECK(one.i_b == one.e_r);  // bitwise at J = 1
  CHECK(std::abs(one.i_b - 0.75 * std::log2(3.0)) < 1e-12);

  EisertMeasures two = eisert_measures_closed(eisert_params(2));
  CHECK(std::abs(two.i_b - 0.6006025296523007) < 1e-12);
  CHECK(std::abs(two.e_r - 1.617143936307951) < 1e-12);
  CHECK(std::abs((two.e_r - two.i_b) - 1.0165414066556502) < 1e-12);

  // e_r - i_b = sum d_j^2 p_j log2 d_j >= 0 for J = 1..6
  for (int j = 1; j <= 6; ++j) {
    EisertMeasures m = eisert_measures_closed(eisert_params(j));
    CHECK(m.e_r - m.i_b >= 0.0);
  }
}
