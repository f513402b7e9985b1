#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace anosovlab {

/// Numerical thresholds shared by every module.  Defaults are sized for
/// double precision at ambient dimension <= 8.
struct Tolerances {
  double orth = 1e-10;    // orthonormality of stored bases
  double rank = 1e-8;     // singular-value rank cut / transversality
  double angle = 1e-8;    // subspace equality (principal-angle sine)
  double iso = 1e-8;      // isotropy and singular-subspace tests
  double sym = 1e-8;      // symmetry residual of chart maps
  double rel = 1e-8;      // relator residual certificate
  double sp = 1e-8;       // symplectic residual certificate
  double det = 1e-10;     // |det - 1| of generator images
  double dedup = 1e-6;    // ball-enumeration matrix identification
  double same = 1e-9;     // "certainly the same matrix"
  double gap = 1e-3;      // relative eigenvalue-modulus gap for witnesses
  double flag = 1e-10;    // forward-error estimate of attracting subspaces
  double theta_sep = 1e-4;  // minimum boundary-sample separation
  double col = 1e-6;      // collinearity in P(Q(P))
  double tan = 1e-3;      // tangent-law residuals
  double alpha_min = 0.1; // minimal accepted gap decay rate

  /// Sets a field by name ("rank", "tan", ...).  Unknown names throw.
  void set(std::string_view name, double value);
  double get(std::string_view name) const;
  static std::vector<std::string> names();
};

/// Process-wide defaults used when a call site does not pass its own set.
/// Mutate only before spawning work (the CLI does so while parsing flags).
const Tolerances& default_tolerances();
void set_default_tolerances(const Tolerances& tol);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain input (bad dimensions, degenerate columns, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A numerical assertion about computed data failed in a way that points at
/// numerical pathology rather than at a mathematical counterexample.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace anosovlab
