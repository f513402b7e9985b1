#pragma once

// Boundary flags x^1 < x^2 < ... < x^{N-1} of a representation.
//
// The boundary circle is modelled through the base Fuchsian representation:
// a point is an angle theta in [0, 2 pi) and corresponds to the line of
// direction (cos(theta / 2), sin(theta / 2)) in R^2, on which the base group
// acts projectively.  Counterclockwise (increasing theta, mod 2 pi) triples
// are the positive ones.
//
// Flags come either from the osculating flags of the Veronese curve (exact
// for symmetric-power representations) or from attracting invariant
// subspaces of group elements (any representation with eigenvalue gaps).

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "anosovlab/cayley_ball.hpp"
#include "anosovlab/representation.hpp"

namespace anosovlab {

class NoAttractingPointError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class FlagQualityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// theta reduced to [0, 2 pi).
double canonical_angle(double theta);
/// (theta_y - theta_x) mod 2 pi < (theta_z - theta_x) mod 2 pi.
bool is_positive_triple(double theta_x, double theta_y, double theta_z);
/// Shortest distance between two points of the circle.
double angle_separation(double a, double b);

/// Angle of the attracting fixed point of a hyperbolic 2x2 matrix.
double attracting_angle(const Mat& m2);
/// Image of the boundary point theta under a 2x2 matrix.
double act_on_angle(const Mat& m2, double theta);

struct BoundaryPoint {
  double theta = 0.0;
  std::optional<Word> witness;
};

enum class FlagMethod { veronese, attracting };
std::string to_string(FlagMethod method);

class FlagSample {
 public:
  FlagSample(BoundaryPoint point, int N, FlagMethod method);

  const BoundaryPoint& point() const { return point_; }
  double theta() const { return point_.theta; }
  int N() const { return N_; }
  FlagMethod method() const { return method_; }

  bool has(int k) const;
  /// x^k; k = 0 and k = N give the zero space and the whole space.
  const Subspace& space(int k) const;
  /// Eigenvalue-modulus ratio |lambda_{k+1}| / |lambda_k| (attracting) or
  /// 0 (Veronese, exact).
  double quality(int k) const { return quality_[static_cast<std::size_t>(k)]; }
  void set(int k, Subspace space, double quality);
  /// Indices k in 1..N-1 that are present.
  std::vector<int> indices() const;

 private:
  BoundaryPoint point_;
  int N_;
  FlagMethod method_;
  std::vector<std::optional<Subspace>> spaces_;
  std::vector<double> quality_;
};

/// Osculating flag of the Veronese curve
///   nu(theta) = (c^{N-1-i} s^i)_i,  c = cos(theta / 2), s = sin(theta / 2),
/// x^k = span(nu, nu', ..., nu^{(k-1)}), in the coordinates of
/// sym_power_lift (symplectic coordinates for even N).
FlagSample veronese_flag(double theta, int N, const Tolerances& tol = default_tolerances());

struct AttractingSubspace {
  Subspace space;
  /// |lambda_{k+1}| / |lambda_k|.
  double gap = 1.0;
  /// First-order forward-error estimate of `space`: invariance residual
  /// divided by the eigenvalue-modulus separation.
  double error_estimate = 0.0;
};

/// Dominant k-dimensional invariant subspace of M.  `inverse`, when given,
/// must be M^-1 computed independently (e.g. from the inverse word); it is
/// used for the small eigenvalues and for k > N/2.
AttractingSubspace attracting_subspace(const Mat& m, int k, const Mat* inverse = nullptr,
                                       const Tolerances& tol = default_tolerances());

/// Eigenvalue moduli in decreasing order (large half from M, small half
/// from M^-1).
Vec eigenvalue_moduli(const Mat& m, const Mat& inverse);

/// Largest compatibility and omega-duality defects of a flag.
struct FlagDefects {
  double compatibility = 0.0;
  double duality = 0.0;
};
FlagDefects flag_defects(const FlagSample& flag, bool symplectic);
/// Throws FlagQualityError when a defect exceeds 10 tol.angle.
void verify_flag(const FlagSample& flag, bool symplectic,
                 const Tolerances& tol = default_tolerances());

/// Flag of the attracting fixed point of rep(w).  `ks` restricts the
/// indices (empty = all of 1..N-1).  theta comes from the base matrix.
FlagSample flag_from_witness(const Representation& rep, const Word& w,
                             const std::vector<int>& ks = {},
                             const Tolerances& tol = default_tolerances());
FlagSample flag_from_ball_element(const Representation& rep, const Ball& ball, std::size_t i,
                                  const std::vector<int>& ks = {},
                                  const Tolerances& tol = default_tolerances());

enum class SamplingStrategy { veronese, attracting };

struct SamplingOptions {
  std::uint64_t seed = 42;
  /// Ball radius searched for witnesses (attracting strategy).
  int radius = 4;
  /// Flag indices required of attracting witnesses (empty = all).
  std::vector<int> ks;
};

struct BoundarySampling {
  std::vector<FlagSample> samples;
  bool partial = false;
  std::string warning;
};

/// Flags at `count` boundary points, sorted by theta, pairwise separated by
/// at least tol.theta_sep.  Veronese: equispaced angles with seeded jitter
/// (symmetric-power or Fuchsian representations only).  Attracting: ball
/// elements with the required gaps, spread over the sorted list.
BoundarySampling sample_boundary(const Representation& rep, int count, SamplingStrategy strategy,
                                 const SamplingOptions& options = {},
                                 const Tolerances& tol = default_tolerances());

/// Supplies the flag at an arbitrary boundary angle.
using FlagSource = std::function<FlagSample(double theta)>;
FlagSource veronese_source(int N, const Tolerances& tol = default_tolerances());

/// Uniform double in [0, 1) from the top 53 bits; platform independent.
double unit_uniform(std::uint64_t bits);

}  // namespace anosovlab
