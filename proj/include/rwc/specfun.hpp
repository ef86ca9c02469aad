#pragma once

#include "rwc/types.hpp"

namespace rwc::specfun {

// log Gamma(s), continuous in s away from the negative real axis.
ComplexValue log_gamma_complex(ComplexValue s);
ComplexValue gamma_complex(ComplexValue s);
ComplexValue digamma_complex(ComplexValue s);

// Gamma_R(s) = pi^{-s/2} Gamma(s/2), in log form.
ComplexValue log_gamma_r(ComplexValue s);

ComplexValue zeta_complex(ComplexValue s);
// zeta'/zeta by a five-point central difference along the real direction.
ComplexValue zeta_log_derivative(ComplexValue s);

ComplexValue xi_complete(ComplexValue s);
ComplexValue log_xi_complete(ComplexValue s);

struct ScaledBesselValue {
  double value = 0;  // e^{pi T/2} K_{iT}(x)
  double order = 0;  // |T|
  double argument = 0;
  bool turning_point = false;  // |x - T| < T^{1/3}: accuracy relaxed
};

struct BesselLimits {
  double max_order = 256;
  double max_argument = 1e6;
};

ScaledBesselValue bessel_k_imag_scaled(double T, double x, const BesselLimits& limits = {});

}  // namespace rwc::specfun
