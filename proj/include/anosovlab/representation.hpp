#pragma once

// Representations of the genus-g surface group and the constructions used as
// test subjects: the regular-octagon Fuchsian group, its irreducible lift
// into SL(N, R) (conjugated into Sp(N, R) for even N), direct sums, and
// bending along the separating curve [a_1, b_1].

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "anosovlab/surface_group.hpp"
#include "anosovlab/symplectic.hpp"

namespace anosovlab {

enum class RepKind { fuchsian_base, sym_power, direct_sum, bent };

std::string to_string(RepKind kind);
RepKind parse_rep_kind(std::string_view text);

/// A certificate check failed while building or loading a representation.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

struct Representation {
  RepKind kind = RepKind::fuchsian_base;
  Presentation presentation{2};
  int dim = 2;
  /// Every image preserves the standard omega on R^dim.
  bool symplectic = true;
  /// One dim x dim image per generator, in the order a_1, b_1, a_2, ...
  std::vector<Mat> images;
  /// Images of the base Fuchsian representation rho_0 (2x2, same order).
  /// They fix the circle model of the group boundary and serve as the
  /// faithful reference for identifying group elements.
  std::vector<Mat> base;
  double relator_residual = 0.0;
  double symplectic_residual = 0.0;
  double det_residual = 0.0;
  std::map<std::string, std::string> metadata;

  int n() const;
  /// Image of a letter (inverse letters map to inverse images).
  const Mat& letter_image(Letter l) const { return letter_images_[static_cast<std::size_t>(l)]; }
  const Mat& base_letter_image(Letter l) const {
    return base_letter_images_[static_cast<std::size_t>(l)];
  }

  /// Recomputes inverses and residual certificates; throws ConstructionError
  /// when a certificate exceeds its tolerance.
  void certify(const Tolerances& tol = default_tolerances());

 private:
  std::vector<Mat> letter_images_;
  std::vector<Mat> base_letter_images_;
};

/// Ordered product of generator images along the word.
Mat word_value(const Representation& rep, const Word& w);
Mat base_word_value(const Representation& rep, const Word& w);

/// Frobenius norm of rho(relator) - I.
double relator_residual(const Representation& rep);

/// The genus-2 group of the regular hyperbolic octagon with vertex angles
/// pi/4 and side pairing a_1 b_1 a_1^-1 b_1^-1 a_2 b_2 a_2^-1 b_2^-1, in
/// SL(2, R) acting on the upper half-plane.
Representation fuchsian_genus2(const Tolerances& tol = default_tolerances());

/// Degree-(N-1) symmetric power on the monomial basis p^{N-1}, p^{N-2} q,
/// ..., q^{N-1}: image(M) nu(v) = nu(M v) with nu(p, q) = (p^{N-1-i} q^i)_i.
Mat irreducible_image(const Mat& m2, int N);

/// Change of basis carrying the invariant symplectic form of the
/// irreducible N-dimensional representation (N even) to the standard omega.
struct SymplecticCorrection {
  int N = 0;
  /// Columns: Darboux basis of the invariant form, in monomial coordinates.
  Mat basis;
  /// basis^-1: maps monomial coordinates to standard symplectic coordinates.
  Mat to_standard;
  /// Largest residual of g^T B g - B over the sample set.
  double residual = 0.0;
};

/// Deterministic, cached per N.  Orientation convention: counterclockwise
/// boundary triples of the lifted Fuchsian representation are maximal.
const SymplecticCorrection& symplectic_correction(int N);

/// eta o rho_0 for N >= 2; conjugated into Sp(N, R) when N is even.
Representation sym_power_lift(const Representation& rho0, int N,
                              const Tolerances& tol = default_tolerances());

/// Block sum.  Two symplectic factors are interleaved so the result
/// preserves the standard omega; otherwise plain block-diagonal.
Representation direct_sum(const Representation& a, const Representation& b,
                          const Tolerances& tol = default_tolerances());

/// Conjugates a_1, b_1 by c(t) = exp(t X), X in the centralizer of
/// rho([a_1, b_1]) and not in the image of the base's one-parameter group
/// when dim >= 4.  Only the curve [a_1, b_1] is supported.
Representation bend(const Representation& rep, const Word& curve, double t,
                    const Tolerances& tol = default_tolerances());

nlohmann::json to_json(const Representation& rep);
/// Recomputes and verifies every residual (ConstructionError on failure,
/// InvalidInput on schema errors).
Representation representation_from_json(const nlohmann::json& j,
                                        const Tolerances& tol = default_tolerances());

}  // namespace anosovlab
