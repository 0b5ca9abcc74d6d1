// Verification harness: seeded property suites for the inequalities
// and continuity bounds, the multiplet-family cross-checks, and the
// E_D <= E_dc <= E_R sandwich report for a single state.

#ifndef ENTCAP_VERIFY_HPP
#define ENTCAP_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "entcap/capacity.hpp"
#include "entcap/relent.hpp"
#include "entcap/states.hpp"

namespace entcap {

struct CheckOutcome {
  std::string name;
  int samples = 0;
  int failures = 0;
  // Worst lhs - rhs margin across samples; a failure is a sample whose
  // violation exceeds the check's tolerance.
  double worst_violation = 0.0;
  std::vector<std::string> details;  // one line per failing sample
};

// I_B(rho) <= E_R(rho) + 2e-3 on seeded random two-qubit states.
CheckOutcome check_ib_le_er(int n_samples, std::uint64_t seed);

// |S(rho) - S(sigma)| <= t log2(dim) + eta(t), t = ||rho - sigma||_1,
// on random dim-4 pairs built with t <= 1/e.
CheckOutcome check_fannes(int n_samples, std::uint64_t seed);

// |I_B(rho) - I_B(psi)| <= 3t log2(d) + 2 eta(t) for pure psi and a
// perturbation rho with t = ||rho - psi||_1 <= 1/e, d in {2, 3}.
CheckOutcome check_ib_continuity(int n_samples, std::uint64_t seed);

// E_R(sum_i p_i psi_i) <= sum_i p_i S(Tr_A psi_i) + 2e-3 for random
// pure-state decompositions with 2-3 terms.
CheckOutcome check_er_convexity(int n_samples, std::uint64_t seed);

// Multiplet-family cross-check: the explicit construction reproduces
// the closed-form i_b; j_max = 1 forces i_b = e_r exactly, j_max = 2
// forces e_r > i_b strictly.
CheckOutcome check_eisert(int j_max);

// I_B and chi* always; E_R via the solver when dim <= 16; the hashing
// lower bound max(0, 1 - S(rho)) only when rho is certified
// rank-two Bell-diagonal with maximally mixed marginals.
MeasureReport sandwich_report(const DensityMatrix& rho,
                              const std::string& label = "state");

}  // namespace entcap

#endif  // ENTCAP_VERIFY_HPP
