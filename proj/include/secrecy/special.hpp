#pragma once

namespace secrecy {

/// Zeroth-order modified Bessel function of the first kind. Power series
/// below x = 30, Hankel asymptotic expansion above; relative error < 1e-12.
/// Overflows to +inf for x beyond ~713.
double bessel_i0(double x);

/// exp(-|x|) I0(x), finite for every finite x.
double bessel_i0_scaled(double x);

}  // namespace secrecy
