#include "anosovlab/tolerances.hpp"

#include <array>
#include <utility>

namespace anosovlab {
namespace {

using Field = double Tolerances::*;

constexpr std::array<std::pair<std::string_view, Field>, 16> kFields{{
    {"orth", &Tolerances::orth},
    {"rank", &Tolerances::rank},
    {"angle", &Tolerances::angle},
    {"iso", &Tolerances::iso},
    {"sym", &Tolerances::sym},
    {"rel", &Tolerances::rel},
    {"sp", &Tolerances::sp},
    {"det", &Tolerances::det},
    {"dedup", &Tolerances::dedup},
    {"same", &Tolerances::same},
    {"gap", &Tolerances::gap},
    {"flag", &Tolerances::flag},
    {"theta_sep", &Tolerances::theta_sep},
    {"col", &Tolerances::col},
    {"tan", &Tolerances::tan},
    {"alpha_min", &Tolerances::alpha_min},
}};

Field lookup(std::string_view name) {
  for (const auto& [key, field] : kFields) {
    if (key == name) return field;
  }
  throw InvalidInput("unknown tolerance name: " + std::string(name));
}

Tolerances& defaults_storage() {
  static Tolerances tol;
  return tol;
}

}  // namespace

void Tolerances::set(std::string_view name, double value) {
  if (!(value > 0.0)) {
    throw InvalidInput("tolerance " + std::string(name) + " must be positive");
  }
  this->*lookup(name) = value;
}

double Tolerances::get(std::string_view name) const { return this->*lookup(name); }

std::vector<std::string> Tolerances::names() {
  std::vector<std::string> out;
  for (const auto& entry : kFields) out.emplace_back(entry.first);
  return out;
}

const Tolerances& default_tolerances() { return defaults_storage(); }

void set_default_tolerances(const Tolerances& tol) { defaults_storage() = tol; }

}  // namespace anosovlab
