#pragma once

// The genus-g surface group
//   < a_1, b_1, ..., a_g, b_g | [a_1, b_1] ... [a_g, b_g] >
// with its standard generating set.  Letters are encoded as
//   2 * generator + (inverse ? 1 : 0),  generator = 2 (i - 1) for a_i,
//   2 (i - 1) + 1 for b_i,
// so `letter ^ 1` is the inverse letter.  Text form: "a1", "b2" for
// generators and "A1", "B2" for their inverses, concatenated.

#include <string>
#include <string_view>
#include <vector>

#include "anosovlab/tolerances.hpp"

namespace anosovlab {

using Letter = int;

constexpr Letter inverse_letter(Letter l) { return l ^ 1; }
constexpr int generator_of(Letter l) { return l >> 1; }
constexpr bool is_inverse(Letter l) { return (l & 1) != 0; }

class Presentation {
 public:
  /// Rejects genus < 2.
  explicit Presentation(int genus);

  int genus() const { return genus_; }
  int generator_count() const { return 2 * genus_; }
  int alphabet_size() const { return 4 * genus_; }
  /// [a_1, b_1] ... [a_g, b_g], length 4g.
  const std::vector<Letter>& relator() const { return relator_; }

  std::string letter_name(Letter l) const;
  /// Parses one token ("a1", "B2", ...); throws InvalidInput.
  Letter parse_letter(std::string_view token) const;

  bool operator==(const Presentation& other) const { return genus_ == other.genus_; }

 private:
  int genus_;
  std::vector<Letter> relator_;
};

Presentation presentation(int genus);

/// A freely reduced word over the alphabet of a presentation.
class Word {
 public:
  Word() = default;
  /// Rejects letters outside the alphabet and adjacent inverse pairs.
  Word(const Presentation& pres, std::vector<Letter> letters);

  /// Parses "a1b1A1B1" (whitespace ignored).
  static Word parse(const Presentation& pres, std::string_view text);

  const std::vector<Letter>& letters() const { return letters_; }
  int length() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }

  Word inverse() const;
  /// Free reduction of the concatenation.
  Word times(const Word& other) const;
  std::string to_string(const Presentation& pres) const;

  bool operator==(const Word& other) const = default;

 private:
  std::vector<Letter> letters_;
};

/// Free reduction of an arbitrary letter sequence.
std::vector<Letter> freely_reduce(std::vector<Letter> letters);

/// The word [a_1, b_1] = a_1 b_1 a_1^-1 b_1^-1.
Word first_handle_commutator(const Presentation& pres);

}  // namespace anosovlab
