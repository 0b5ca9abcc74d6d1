// Relative entropy of entanglement E_R(rho) = min over PPT states
// sigma of S(rho||sigma), solved by projected gradient descent with
// Dykstra projections onto {sigma >= 0, sigma^{T_B} >= 0, Tr sigma = 1},
// plus the closed forms available for special families.

#ifndef ENTCAP_RELENT_HPP
#define ENTCAP_RELENT_HPP

#include "entcap/matcore.hpp"
#include "entcap/states.hpp"

namespace entcap {

struct SolverConfig {
  int max_iters = 2000;
  double step_init = 1.0;
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  int dykstra_sweeps = 500;
  double dykstra_tol = 1e-10;
  double support_floor = 1e-9;     // iterates mixed with this much I/dim
  double convergence_tol = 1e-10;  // relative objective decrease
};

struct ErResult {
  double value = 0.0;  // bits
  DensityMatrix argmin_sigma;
  int iterations = 0;
  bool converged = false;
  double final_gradient_norm = 0.0;
};

// True iff the smallest eigenvalue of rho^{T_B} is >= -tol.
bool is_ppt(const DensityMatrix& rho, double tol);

// Frobenius-norm projection of a Hermitian matrix onto the feasible
// set {sigma : sigma >= 0, sigma^{T_B} >= 0, Tr sigma = 1} via
// Dykstra's alternating projections. Output satisfies all three
// constraints within 1e-8; throws NoConvergence when the sweep budget
// runs out before that.
DensityMatrix project_feasible(const ComplexMatrix& m,
                               const BipartiteDims& dims,
                               const SolverConfig& cfg = {});

// Euclidean gradient of sigma -> S(rho||sigma): with sigma = V S V^dg,
// rho~ = V^dg rho V, G = -(1/ln2) V (rho~ o Phi) V^dg where Phi holds
// the first divided differences of the natural log on sigma's
// spectrum. Requires sigma full rank; Hermitian by construction.
ComplexMatrix er_gradient(const DensityMatrix& rho,
                          const DensityMatrix& sigma);

ErResult relative_entropy_of_entanglement(const DensityMatrix& rho,
                                          const SolverConfig& cfg = {});

// Example-1 closed form: E_R = H({alpha_ii}) - S(alpha).
double max_correlated_er_closed(const MaxCorrelatedCoeffs& coeffs);

struct EisertMeasures {
  double i_b = 0.0;
  double e_r = 0.0;
};

// Example-2 closed forms over the multiplet decomposition:
//   i_b = sum_j d_j^2 p_j (log2(2j+1) - log2 d_j)
//   e_r = sum_j d_j^2 p_j log2(2j+1)
EisertMeasures eisert_measures_closed(const EisertParams& params);

}  // namespace entcap

#endif  // ENTCAP_RELENT_HPP
