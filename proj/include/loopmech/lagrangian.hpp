#pragma once

#include <functional>
#include <string>
#include <vector>

#include "loopmech/octonion.hpp"

namespace loopmech {

/// Discrete Lagrangian on a loop of unit-norm elements.  eval is the value at
/// a loop point; ambient_grad is the Euclidean gradient of any smooth
/// extension to the ambient octonions.  Directional derivatives along curves
/// in the loop only ever pair the gradient with tangent vectors, so the
/// choice of extension does not matter.
struct Lagrangian {
  std::function<double(const Octonion&)> eval;
  std::function<Octonion(const Octonion&)> ambient_grad;
  std::string label;
};

/// L(a) = <e1, a>, the first imaginary coordinate.
Lagrangian lagrangian_linear();

/// L(a) = <e1, a>^2 / 2.
Lagrangian lagrangian_sq();

/// L(a) = sum_k m_k <e_k, a>^2 / 2 over k = 1..masses.size().
/// masses must hold between 1 and 7 entries, all positive; pass 3 entries for
/// the quaternionic control instance.  Throws std::domain_error otherwise.
Lagrangian lagrangian_kinetic(const std::vector<double>& masses);

}  // namespace loopmech
