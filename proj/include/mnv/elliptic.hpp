// elliptic.hpp — Jacobi elliptic functions and the complete elliptic
// integral K via the arithmetic-geometric mean (descending Landen).

#pragma once

namespace mnv {

struct JacobiElliptic {
  double sn, cn, dn;
};

// m = k² must lie in [0, 1]; the m = 0 and m = 1 degenerate cases are exact.
JacobiElliptic jacobi_elliptic(double u, double m);

double elliptic_K(double m);

}  // namespace mnv
