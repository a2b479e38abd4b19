// Plain data carriers shared by every module.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pz/error.hpp"
#include "pz/gauss_rat.hpp"

namespace pz {

/// l(z) = <a, z> + c, carrying the multiplicity of its periodic reproduction.
struct LinearForm {
  std::vector<GaussRat> a;
  GaussRat c;
  int mult = 1;

  LinearForm() = default;
  LinearForm(std::vector<GaussRat> coeffs, GaussRat offset = {}, int multiplicity = 1)
      : a(std::move(coeffs)), c(std::move(offset)), mult(multiplicity) {}

  std::size_t dim() const { return a.size(); }

  /// Index of the first nonzero coefficient, or dim() if none.
  std::size_t pivot() const {
    for (std::size_t j = 0; j < a.size(); ++j)
      if (!a[j].is_zero()) return j;
    return a.size();
  }

  void validate() const {
    if (a.size() < 2) throw Error(Errc::invalid_form, "linear form needs dimension >= 2");
    if (pivot() == a.size()) throw Error(Errc::invalid_form, "linear form has all a_j = 0");
    if (mult < 1) throw Error(Errc::invalid_form, "multiplicity must be >= 1");
  }

  std::string str() const {
    std::string s;
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a[j].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + a[j].str() + ")z" + std::to_string(j + 1);
    }
    if (!c.is_zero()) s += " + (" + c.str() + ")";
    if (mult != 1) s += " [x" + std::to_string(mult) + "]";
    return s;
  }
};

/// Finite multiset of hyperplane families in C^n.
struct PlaneDivisor {
  std::size_t n = 0;
  std::vector<LinearForm> components;

  PlaneDivisor() = default;
  PlaneDivisor(std::size_t dim, std::vector<LinearForm> comps) : n(dim), components(std::move(comps)) {
    validate();
  }

  void validate() const {
    if (n < 2) throw Error(Errc::dimension_mismatch, "divisor dimension must be >= 2");
    for (std::size_t k = 0; k < components.size(); ++k) {
      if (components[k].dim() != n)
        throw Error(Errc::dimension_mismatch, "component " + std::to_string(k + 1) + " has dimension " +
                                                  std::to_string(components[k].dim()) + ", expected " +
                                                  std::to_string(n));
      components[k].validate();
    }
  }
};

}  // namespace pz
