#include "doctest.h"

#include "anosovlab/surface_group.hpp"

using namespace anosovlab;

TEST_CASE("presentations") {
  const Presentation p2(2);
  CHECK(p2.generator_count() == 4);
  CHECK(p2.relator().size() == 8);
  const Presentation p3(3);
  CHECK(p3.generator_count() == 6);
  CHECK(p3.relator().size() == 12);
  CHECK_THROWS_AS(Presentation(1), InvalidInput);
  CHECK(Word(p2, p2.relator()).to_string(p2) == "a1b1A1B1a2b2A2B2");
}

TEST_CASE("letters") {
  const Presentation p(2);
  for (Letter l = 0; l < p.alphabet_size(); ++l) {
    CHECK(p.parse_letter(p.letter_name(l)) == l);
    CHECK(inverse_letter(inverse_letter(l)) == l);
  }
  CHECK_THROWS_AS(p.parse_letter("c1"), InvalidInput);
  CHECK_THROWS_AS(p.parse_letter("a3"), InvalidInput);
}

TEST_CASE("words") {
  const Presentation p(2);
  const Word w = Word::parse(p, "a1 b2 A2");
  CHECK(w.length() == 3);
  CHECK(w.to_string(p) == "a1b2A2");
  CHECK(w.inverse().to_string(p) == "a2B2A1");
  CHECK(w.times(w.inverse()).empty());
  CHECK_THROWS_AS(Word::parse(p, "a1A1"), InvalidInput);
  CHECK(freely_reduce({0, 2, 3, 1}).empty());
  CHECK(first_handle_commutator(p).to_string(p) == "a1b1A1B1");
}
