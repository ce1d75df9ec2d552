#pragma once

#include <complex>

namespace scpair::specfun {

using cplx = std::complex<double>;

struct SpecfunResult {
    cplx value;
    double est_error; // estimated bound on the relative error
};

// |z| at or below this radius uses the ascending series; above it the
// Laplace-integral (resummed asymptotic) representation.  Fixed by the overlap
// study on |z| in [8, 12]; never adjusted at run time.
inline constexpr double switch_radius = 10.0;

// Modified Bessel function of the second kind, order one, x > 0.
double bessel_k1(double x);
SpecfunResult bessel_k1_result(double x);

SpecfunResult bessel_j0(cplx z);
SpecfunResult bessel_y0(cplx z);
SpecfunResult bessel_j1(cplx z);
SpecfunResult bessel_y1(cplx z);
SpecfunResult hankel1_0(cplx z);
SpecfunResult hankel2_0(cplx z);

// Branch cut on the negative real axis, Re result >= 0.  The sign of a zero
// imaginary part selects the side of the cut.
cplx principal_sqrt(cplx z);

// All four cylinder functions of one integer order at one argument.
struct Cylinder {
    SpecfunResult j, y, h1, h2;
};

// Explicit evaluation paths, exposed for the overlap checks.  `series_path`
// is valid for any z != 0 but loses accuracy for large |z|; `integral_path`
// requires |z| >= 1.
Cylinder series_path(int order, cplx z);
Cylinder integral_path(int order, cplx z);

// Path-selecting evaluation used by the public functions above.
Cylinder cylinder(int order, cplx z);

} // namespace scpair::specfun
