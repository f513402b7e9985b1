#pragma once

// Breadth-first enumeration of the ball of radius r in the Cayley graph of
// the surface group.  Group elements are identified through the images of
// the base Fuchsian representation (faithful, and with entries of moderate
// size), so the first BFS depth at which an element appears is its word
// length.

#include <cstddef>
#include <string>
#include <vector>

#include "anosovlab/representation.hpp"

namespace anosovlab {

/// Two matrices lie closer than tol.dedup but farther than tol.same.
class AmbiguityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

struct BallElement {
  Word word;
  Mat matrix;
  Mat inverse;
  /// Image under the base Fuchsian representation.
  Mat base;
  int length = 0;
};

class Ball {
 public:
  std::size_t size() const { return lengths_.size(); }
  int radius() const { return radius_; }
  int dim() const { return dim_; }
  /// Radius actually completed; lower than radius() when the budget ran out.
  int complete_radius() const { return complete_radius_; }
  bool partial() const { return partial_; }
  const std::string& warning() const { return warning_; }
  /// Number of elements of each exact word length 0..radius.
  const std::vector<std::size_t>& sphere_sizes() const { return sphere_sizes_; }

  int length(std::size_t i) const { return lengths_[i]; }
  Word word(std::size_t i) const;
  Mat matrix(std::size_t i) const { return unpack(matrices_, i, dim_); }
  Mat inverse(std::size_t i) const { return unpack(inverses_, i, dim_); }
  Mat base(std::size_t i) const { return unpack(bases_, i, 2); }
  BallElement element(std::size_t i) const;

 private:
  friend Ball enumerate_ball(const Representation&, int, std::size_t, const Tolerances&);
  static Mat unpack(const std::vector<double>& packed, std::size_t i, int d);

  Presentation pres_{2};
  int dim_ = 0;
  int radius_ = 0;
  int complete_radius_ = 0;
  bool partial_ = false;
  std::string warning_;
  std::vector<std::size_t> sphere_sizes_;
  std::vector<int> lengths_;
  // parent_[i] is the element whose word extended by last_[i] gives i.
  std::vector<std::size_t> parent_;
  std::vector<Letter> last_;
  // Row-major packed images.
  std::vector<double> matrices_;
  std::vector<double> inverses_;
  std::vector<double> bases_;
};

/// Elements of word length <= radius, identity first, then by length.
/// Stops at `budget` elements with partial() set.  Throws AmbiguityError.
Ball enumerate_ball(const Representation& rep, int radius, std::size_t budget = 1'000'000,
                    const Tolerances& tol = default_tolerances());

/// Singular values in decreasing order.  The upper half comes from M and
/// the lower half from the reciprocals of those of M^-1, so tiny values
/// keep full relative accuracy.
Vec ball_singular_values(const Ball& ball, std::size_t i);

}  // namespace anosovlab
