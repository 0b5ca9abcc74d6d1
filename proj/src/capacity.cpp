#include "entcap/capacity.hpp"

#include <cmath>
#include <sstream>

namespace entcap {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kUnitaryTol = 1e-10;
constexpr double kOrthogonalityTol = 1e-10;

bool is_unitary(const ComplexMatrix& u, double tol) {
  const std::size_t n = u.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cplx acc(0.0, 0.0);
      for (std::size_t k = 0; k < n; ++k) {
        acc += std::conj(u(k, i)) * u(k, j);
      }
      if (i == j) acc -= 1.0;
      if (std::abs(acc) > tol) return false;
    }
  }
  return true;
}

double log2_pos(double x) { return std::log2(x); }

}  // namespace

double coherent_information(const DensityMatrix& rho) {
  return von_neumann_entropy(rho.marginal_b()) -
         entropy_from_spectrum(rho.spectrum());
}

ComplexMatrix weyl_shift(std::size_t d) {
  if (d < 2) {
    throw Error(errc::bad_dimension, "Weyl operators need d >= 2");
  }
  ComplexMatrix x(d);
  for (std::size_t k = 0; k < d; ++k) x((k + 1) % d, k) = 1.0;
  return x;
}

ComplexMatrix weyl_clock(std::size_t d) {
  if (d < 2) {
    throw Error(errc::bad_dimension, "Weyl operators need d >= 2");
  }
  ComplexMatrix z(d);
  for (std::size_t k = 0; k < d; ++k) {
    z(k, k) = std::polar(1.0, 2.0 * kPi * static_cast<double>(k) /
                                  static_cast<double>(d));
  }
  return z;
}

SignalEnsemble weyl_ensemble(const DensityMatrix& rho) {
  const std::size_t d = rho.dims().d_a;
  if (d < 2) {
    throw Error(errc::bad_dimension, "Weyl encodings need d_A >= 2");
  }
  SignalEnsemble ensemble{rho, {}};
  ensemble.encodings.reserve(d * d);
  const double p = 1.0 / static_cast<double>(d * d);
  for (std::size_t m = 0; m < d; ++m) {
    for (std::size_t n = 0; n < d; ++n) {
      // (X^m Z^n)|c> = w^{cn} |c+m>, so column c has a single entry.
      ComplexMatrix u(d);
      for (std::size_t c = 0; c < d; ++c) {
        u((c + m) % d, c) = std::polar(
            1.0, 2.0 * kPi * static_cast<double>((c * n) % d) /
                     static_cast<double>(d));
      }
      ensemble.encodings.push_back({p, std::move(u)});
    }
  }
  // The encodings must be an orthogonal unitary basis:
  // Tr(U_i^dagger U_j) = d delta_ij.
  const double dd = static_cast<double>(d);
  for (std::size_t i = 0; i < ensemble.encodings.size(); ++i) {
    for (std::size_t j = i; j < ensemble.encodings.size(); ++j) {
      const ComplexMatrix& a = ensemble.encodings[i].unitary;
      const ComplexMatrix& b = ensemble.encodings[j].unitary;
      cplx acc(0.0, 0.0);
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
          acc += std::conj(a(r, c)) * b(r, c);
        }
      }
      if (i == j) acc -= dd;
      if (std::abs(acc) > kOrthogonalityTol) {
        std::ostringstream os;
        os << "Weyl pair (" << i << ", " << j << ") fails orthogonality by "
           << std::abs(acc);
        throw Error(errc::invalid_ensemble, os.str());
      }
    }
  }
  return ensemble;
}

double holevo(const SignalEnsemble& ensemble) {
  const DensityMatrix& rho = ensemble.base_state;
  const std::size_t d_a = rho.dims().d_a;
  const std::size_t d_b = rho.dims().d_b;
  if (ensemble.encodings.empty()) {
    throw Error(errc::invalid_ensemble, "ensemble has no encodings");
  }
  double p_sum = 0.0;
  for (const SignalEncoding& enc : ensemble.encodings) {
    if (!(enc.probability >= 0.0)) {
      throw Error(errc::invalid_ensemble, "negative prior");
    }
    p_sum += enc.probability;
    if (enc.unitary.dim() != d_a) {
      throw Error(errc::invalid_ensemble,
                  "encoding dimension does not match Alice's dimension");
    }
    if (!is_unitary(enc.unitary, kUnitaryTol)) {
      throw Error(errc::invalid_ensemble, "encoding is not unitary");
    }
  }
  if (std::abs(p_sum - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "priors sum to " << p_sum << ", expected 1";
    throw Error(errc::invalid_ensemble, os.str());
  }

  const ComplexMatrix eye_b = ComplexMatrix::identity(d_b);
  ComplexMatrix average(rho.dim());
  double signal_entropy = 0.0;
  for (const SignalEncoding& enc : ensemble.encodings) {
    const ComplexMatrix big_u = kron(enc.unitary, eye_b);
    ComplexMatrix rho_i = conjugate_by(big_u, rho.matrix());
    signal_entropy += enc.probability * von_neumann_entropy(rho_i);
    rho_i *= cplx(enc.probability, 0.0);
    average += rho_i;
  }
  return von_neumann_entropy(average) - signal_entropy;
}

double dc_capacity(const DensityMatrix& rho) {
  return std::log2(static_cast<double>(rho.dims().d_a)) +
         coherent_information(rho);
}

double isotropic_ib_closed(double fidelity, std::size_t d) {
  if (d < 2) {
    throw Error(errc::bad_dimension, "isotropic closed form needs d >= 2");
  }
  const double n = static_cast<double>(d) * static_cast<double>(d);
  const double f_min = 1.0 / n;
  if (!(fidelity >= f_min - 1e-12) || !(fidelity <= 1.0 + 1e-12)) {
    std::ostringstream os;
    os << "fidelity " << fidelity << " outside [1/d^2, 1] = [" << f_min
       << ", 1]";
    throw Error(errc::fidelity_out_of_range, os.str());
  }
  double value = std::log2(static_cast<double>(d));
  if (fidelity > 0.0) value += fidelity * log2_pos(fidelity);
  const double rest = 1.0 - fidelity;
  if (rest > 0.0) value += rest * log2_pos(rest / (n - 1.0));
  return value;
}

}  // namespace entcap
