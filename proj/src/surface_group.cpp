#include "anosovlab/surface_group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace anosovlab {

Presentation::Presentation(int genus) : genus_(genus) {
  if (genus < 2) {
    throw InvalidInput("surface groups need genus >= 2, got " + std::to_string(genus));
  }
  for (int i = 0; i < genus; ++i) {
    const Letter a = 2 * (2 * i);
    const Letter b = 2 * (2 * i + 1);
    relator_.insert(relator_.end(), {a, b, inverse_letter(a), inverse_letter(b)});
  }
}

Presentation presentation(int genus) { return Presentation(genus); }

std::string Presentation::letter_name(Letter l) const {
  if (l < 0 || l >= alphabet_size()) throw InvalidInput("letter outside the alphabet");
  const int gen = generator_of(l);
  std::string name(1, (gen % 2 == 0) ? 'a' : 'b');
  if (is_inverse(l)) name[0] = static_cast<char>(std::toupper(name[0]));
  return name + std::to_string(gen / 2 + 1);
}

Letter Presentation::parse_letter(std::string_view token) const {
  if (token.size() < 2) throw InvalidInput("bad letter token '" + std::string(token) + "'");
  const char head = token.front();
  const bool inverse = std::isupper(static_cast<unsigned char>(head)) != 0;
  const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(head)));
  if (lower != 'a' && lower != 'b') {
    throw InvalidInput("bad letter token '" + std::string(token) + "'");
  }
  int index = 0;
  const auto* first = token.data() + 1;
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, index);
  if (ec != std::errc() || ptr != last || index < 1 || index > genus_) {
    throw InvalidInput("bad letter index in '" + std::string(token) + "'");
  }
  const int gen = 2 * (index - 1) + (lower == 'b' ? 1 : 0);
  return 2 * gen + (inverse ? 1 : 0);
}

Word::Word(const Presentation& pres, std::vector<Letter> letters) : letters_(std::move(letters)) {
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (letters_[i] < 0 || letters_[i] >= pres.alphabet_size()) {
      throw InvalidInput("letter outside the alphabet");
    }
    if (i > 0 && letters_[i] == inverse_letter(letters_[i - 1])) {
      throw InvalidInput("word is not freely reduced at position " + std::to_string(i));
    }
  }
}

Word Word::parse(const Presentation& pres, std::string_view text) {
  std::vector<Letter> letters;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i])) != 0) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])) != 0) ++j;
    letters.push_back(pres.parse_letter(text.substr(i, j - i)));
    i = j;
  }
  return Word(pres, std::move(letters));
}

Word Word::inverse() const {
  Word out;
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    out.letters_.push_back(inverse_letter(*it));
  }
  return out;
}

Word Word::times(const Word& other) const {
  std::vector<Letter> all = letters_;
  all.insert(all.end(), other.letters_.begin(), other.letters_.end());
  Word out;
  out.letters_ = freely_reduce(std::move(all));
  return out;
}

std::string Word::to_string(const Presentation& pres) const {
  std::string out;
  for (Letter l : letters_) out += pres.letter_name(l);
  return out;
}

std::vector<Letter> freely_reduce(std::vector<Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter l : letters) {
    if (!out.empty() && out.back() == inverse_letter(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word first_handle_commutator(const Presentation& pres) {
  const auto& rel = pres.relator();
  return Word(pres, std::vector<Letter>(rel.begin(), rel.begin() + 4));
}

}  // namespace anosovlab
