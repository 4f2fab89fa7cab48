#include "loopmech/lagrangian.hpp"

#include <stdexcept>

namespace loopmech {

Lagrangian lagrangian_linear() {
  return Lagrangian{
      [](const Octonion& a) { return a[1]; },
      [](const Octonion&) { return Octonion::basis(1); },
      "linear",
  };
}

Lagrangian lagrangian_sq() {
  return Lagrangian{
      [](const Octonion& a) { return 0.5 * a[1] * a[1]; },
      [](const Octonion& a) { return Octonion::basis(1) * a[1]; },
      "sq",
  };
}

Lagrangian lagrangian_kinetic(const std::vector<double>& masses) {
  if (masses.empty() || masses.size() > 7) {
    throw std::domain_error("lagrangian_kinetic: need between 1 and 7 masses");
  }
  for (double m : masses) {
    if (!(m > 0.0)) throw std::domain_error("lagrangian_kinetic: masses must be positive");
  }
  return Lagrangian{
      [masses](const Octonion& a) {
        double s = 0.0;
        for (std::size_t k = 0; k < masses.size(); ++k) {
          const double c = a[k + 1];
          s += 0.5 * masses[k] * c * c;
        }
        return s;
      },
      [masses](const Octonion& a) {
        Octonion g;
        for (std::size_t k = 0; k < masses.size(); ++k) g[k + 1] = masses[k] * a[k + 1];
        return g;
      },
      "kinetic",
  };
}

}  // namespace loopmech
