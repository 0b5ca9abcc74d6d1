#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "entcap/matcore.hpp"
#include "entcap/relent.hpp"
#include "entcap/states.hpp"
#include "entcap/verify.hpp"

using namespace entcap;

namespace {

double binary_entropy(double p) {
  double s = 0.0;
  if (p > 0) s -= p * std::log2(p);
  if (p < 1) s -= (1 - p) * std::log2(1 - p);
  return s;
}

double eta(double t) { return t > 0 ? -t * std::log2(t) : 0.0; }

const InequalityFlag* find_flag(const MeasureReport& report,
                                const std::string& name) {
  for (const auto& flag : report.flags) {
    if (flag.name == name) return &flag;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("ib vs er check passes on seeded samples") {
  CheckOutcome outcome = check_ib_le_er(25, 42);
  CHECK(outcome.name == "ib_le_er");
  CHECK(outcome.samples == 25);
  CHECK(outcome.failures == 0);
  CHECK(outcome.worst_violation <= 0.0);
  CHECK(outcome.details.empty());
}

TEST_CASE("checks are deterministic per seed") {
  CheckOutcome a = check_ib_le_er(6, 9);
  CheckOutcome b = check_ib_le_er(6, 9);
  CHECK(a.worst_violation == b.worst_violation);
  CheckOutcome c = check_ib_le_er(6, 10);
  CHECK(a.worst_violation != c.worst_violation);
}

TEST_CASE("fannes check and its hand example") {
  CheckOutcome outcome = check_fannes(60, 42);
  CHECK(outcome.name == "fannes");
  CHECK(outcome.failures == 0);

  // vacuous run
  CheckOutcome empty = check_fannes(0, 42);
  CHECK(empty.samples == 0);
  CHECK(empty.failures == 0);
  CHECK(empty.worst_violation == 0.0);

  // rho = |0><0|, sigma = (1-delta)|0><0| + delta|1><1|, delta = 0.05:
  // t = 2 delta, |dS| = H2(0.05) <= t log2(2) + eta(t)
  const double delta = 0.05;
  ComplexMatrix rho(2), sigma(2);
  rho(0, 0) = 1.0;
  sigma(0, 0) = 1.0 - delta;
  sigma(1, 1) = delta;
  const double t = trace_norm(rho - sigma);
  CHECK(t == doctest::Approx(2 * delta).epsilon(1e-12));
  const double lhs =
      std::abs(von_neumann_entropy(rho) - von_neumann_entropy(sigma));
  CHECK(lhs == doctest::Approx(binary_entropy(delta)).epsilon(1e-10));
  const double rhs = t * std::log2(2.0) + eta(t);
  CHECK(std::abs(rhs - 0.4321928) < 1e-6);
  CHECK(lhs <= rhs);
}

TEST_CASE("coherent information continuity check and its hand example") {
  CheckOutcome outcome = check_ib_continuity(40, 42);
  CHECK(outcome.name == "continuity");
  CHECK(outcome.failures == 0);

  // psi = P_+(C^2), rho = isotropic(0.98, 2)
  DensityMatrix psi = max_entangled(2);
  DensityMatrix rho = isotropic(0.98, 2);
  const double t = trace_norm(rho.matrix() - psi.matrix());
  REQUIRE(t < 1.0 / std::exp(1.0));
  const double lhs = std::abs(coherent_information(rho) -
                              coherent_information(psi));
  const double rhs = 3 * t * std::log2(2.0) + 2 * eta(t);
  CHECK(lhs <= rhs);
}

TEST_CASE("er convexity check passes on seeded samples") {
  CheckOutcome outcome = check_er_convexity(8, 42);
  CHECK(outcome.name == "convexity");
  CHECK(outcome.samples == 8);
  CHECK(outcome.failures == 0);

  // equal-weights example: E_R(0.9 Phi+ + 0.1 Phi-) <= 0.9 + 0.1
  ErResult res =
      relative_entropy_of_entanglement(bell_diagonal({0.9, 0.1, 0, 0}));
  CHECK(std::abs(res.value - 0.531004) < 1e-3);
  CHECK(res.value <= 1.0 + 2e-3);
}

TEST_CASE("eisert check certifies both regimes") {
  CheckOutcome j1 = check_eisert(1);
  CHECK(j1.name == "eisert_j1");
  CHECK(j1.failures == 0);

  CheckOutcome j2 = check_eisert(2);
  CHECK(j2.name == "eisert_j2");
  CHECK(j2.failures == 0);

  CHECK_THROWS_WITH_AS(check_eisert(3), doctest::Contains("UnsupportedJ"),
                       Error);
}

TEST_CASE("sandwich report on the Bell state") {
  MeasureReport report = sandwich_report(max_entangled(2), "bell");
  CHECK(report.state_label == "bell");
  CHECK(report.i_b == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(report.chi_star == doctest::Approx(2.0).epsilon(1e-10));
  REQUIRE(report.e_r.has_value());
  CHECK(std::abs(report.e_r->value - 1.0) < 1e-3);
  CHECK(report.e_r->converged);

  // P_+ is rank-one Bell-diagonal, so the hashing bound applies: the
  // sandwich closes to the interval [1, 1]
  REQUIRE(report.hashing_lower.has_value());
  CHECK(*report.hashing_lower == doctest::Approx(1.0).epsilon(1e-10));

  const InequalityFlag* ib_flag = find_flag(report, "ib_le_er");
  REQUIRE(ib_flag != nullptr);
  CHECK(ib_flag->holds);
  const InequalityFlag* hash_flag = find_flag(report, "hashing_le_er");
  REQUIRE(hash_flag != nullptr);
  CHECK(hash_flag->holds);
}

TEST_CASE("sandwich report on the maximally mixed state") {
  DensityMatrix mixed(0.25 * ComplexMatrix::identity(4), {2, 2});
  MeasureReport report = sandwich_report(mixed);
  CHECK(report.state_label == "state");
  CHECK(report.i_b == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(report.chi_star == doctest::Approx(0.0).epsilon(1e-10));
  REQUIRE(report.e_r.has_value());
  CHECK(report.e_r->value <= 1e-6);

  // I/4 is Bell-diagonal with four equal weights: rank > 2, no hashing
  CHECK_FALSE(report.hashing_lower.has_value());
  const InequalityFlag* ib_flag = find_flag(report, "ib_le_er");
  REQUIRE(ib_flag != nullptr);
  CHECK(ib_flag->holds);
  CHECK(ib_flag->margin == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("sandwich report on a rank-two Bell mixture") {
  MeasureReport report =
      sandwich_report(bell_diagonal({0.9, 0.1, 0, 0}), "bell_mix");
  REQUIRE(report.hashing_lower.has_value());
  const double expected = 1.0 - binary_entropy(0.9);
  CHECK(std::abs(*report.hashing_lower - expected) < 1e-10);
  REQUIRE(report.e_r.has_value());
  // hashing meets E_R on this family
  CHECK(std::abs(report.e_r->value - *report.hashing_lower) < 1e-3);
  const InequalityFlag* hash_flag = find_flag(report, "hashing_le_er");
  REQUIRE(hash_flag != nullptr);
  CHECK(hash_flag->holds);
}

TEST_CASE("sandwich report on a separable state") {
  // random separable mixture sum_k p_k a_k ox b_k
  ComplexMatrix acc(4);
  double weights[] = {0.5, 0.3, 0.2};
  for (int k = 0; k < 3; ++k) {
    DensityMatrix a = random_density(1, 2, 2, 900 + k);
    DensityMatrix b = random_density(1, 2, 2, 950 + k);
    acc += weights[k] * kron(a.matrix(), b.matrix());
  }
  DensityMatrix sep(acc, {2, 2});
  MeasureReport report = sandwich_report(sep, "separable");
  REQUIRE(report.e_r.has_value());
  CHECK(report.e_r->value <= 2e-3);  // interval [0, ~0]
  CHECK_FALSE(report.hashing_lower.has_value());
  CHECK(report.i_b <= report.e_r->value + 2e-3);
}

TEST_CASE("sandwich report skips the solver above dimension 16") {
  DensityMatrix wide = random_density(2, 9, 3, 31);
  MeasureReport report = sandwich_report(wide, "wide");
  CHECK_FALSE(report.e_r.has_value());
  CHECK(report.flags.empty());
  // i_b and chi_star are still present
  CHECK(std::isfinite(report.i_b));
  CHECK(report.chi_star == doctest::Approx(1.0 + report.i_b).epsilon(1e-12));

  DensityMatrix edge = random_density(4, 4, 4, 32);
  MeasureReport edge_report = sandwich_report(edge, "edge");
  CHECK(edge_report.e_r.has_value());  // dim 16 still solved
}

TEST_CASE("hashing certificate requires Bell-diagonal structure") {
  // |00><00| is rank one but its marginals are pure, not I/2
  ComplexMatrix prod(4);
  prod(0, 0) = 1.0;
  MeasureReport report = sandwich_report(DensityMatrix(prod, {2, 2}));
  CHECK_FALSE(report.hashing_lower.has_value());

  // rank-two mixture with Bell off-diagonal support fails the
  // certificate even though marginals are maximally mixed
  DensityMatrix iso = isotropic(0.9, 2);
  MeasureReport iso_report = sandwich_report(iso);
  CHECK_FALSE(iso_report.hashing_lower.has_value());  // rank 4
}
