// Dense-coding capacity quantities: coherent information, unitary
// signal ensembles, the Holevo quantity, the optimized capacity
// chi* = log2(d_A) + I_B, and the isotropic closed form.

#ifndef ENTCAP_CAPACITY_HPP
#define ENTCAP_CAPACITY_HPP

#include <optional>
#include <string>
#include <vector>

#include "entcap/matcore.hpp"
#include "entcap/states.hpp"

namespace entcap {

// One dense-coding signal: Alice applies `unitary` with this prior.
struct SignalEncoding {
  double probability;
  ComplexMatrix unitary;
};

// Signal states rho_i = (U_i ox I) rho (U_i^dagger ox I) with priors
// p_i. Invariants (checked by holevo): sum p_i = 1 within 1e-12, each
// U_i unitary within 1e-10 and of Alice's dimension.
struct SignalEnsemble {
  DensityMatrix base_state;
  std::vector<SignalEncoding> encodings;

  std::size_t count() const noexcept { return encodings.size(); }
};

// Solver summary attached to a report when E_R was computed.
struct ErSummary {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct InequalityFlag {
  std::string name;
  bool holds = false;
  double margin = 0.0;  // rhs - lhs; negative beyond tolerance means broken
};

// Everything the sandwich E_D <= E_dc <= E_R lets us pin down for one
// state. The dense-coding measure itself is reported only as the
// interval [max(hashing_lower, 0), e_r].
struct MeasureReport {
  std::string state_label;
  double i_b = 0.0;
  std::optional<double> chi;
  double chi_star = 0.0;
  std::optional<ErSummary> e_r;
  std::optional<double> hashing_lower;
  std::vector<InequalityFlag> flags;
};

// I_B(rho) = S(rho^B) - S(rho), in bits.
double coherent_information(const DensityMatrix& rho);

// Shift X|k> = |k+1 mod d> and clock Z|k> = w^k |k>, w = exp(2 pi i/d).
ComplexMatrix weyl_shift(std::size_t d);
ComplexMatrix weyl_clock(std::size_t d);

// All d^2 Weyl encodings U_mn = X^m Z^n with equal priors 1/d^2,
// d = Alice's dimension. Pairwise orthogonality Tr(U^dagger U') =
// d delta is verified within 1e-10 before returning.
SignalEnsemble weyl_ensemble(const DensityMatrix& rho);

// chi = S(rho_bar) - sum_i p_i S(rho_i), rho_bar = sum_i p_i rho_i.
// Computed term by term from the definition, never via the
// rho_bar = I/d ox rho^B shortcut.
double holevo(const SignalEnsemble& ensemble);

// chi*(rho) = log2(d_A) + I_B(rho). Not clamped at zero.
double dc_capacity(const DensityMatrix& rho);

// I_B of isotropic(F, d) in closed form:
// log2(d) + F log2(F) + (1-F) log2((1-F)/(d^2-1)), 0 log 0 = 0.
double isotropic_ib_closed(double fidelity, std::size_t d);

}  // namespace entcap

#endif  // ENTCAP_CAPACITY_HPP
