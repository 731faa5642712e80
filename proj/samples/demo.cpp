// Walk through the library: a pseudo-real cyclic group, a real model,
// and the primitive catalog.

#include <iostream>

#include "pgl3/descent.hpp"
#include "pgl3/primitive.hpp"
#include "pgl3/serialize.hpp"

using namespace pgl3;

int main() {
  // <diag(1, z7, z7^3)> has a real field of moduli but no real model.
  const DescentVerdict v = verdict_normal_form(make_normal_form(7, 1, 3));
  std::cout << "(7,1,3): moduli " << to_string(v.real_field_of_moduli) << ", definable "
            << to_string(v.definable_over_R) << ", pseudo-real " << v.pseudo_real() << "\n"
            << "  " << v.reason << "\n\n";

  // <diag(1, z5, z5^4)> is definable; print the real generator.
  const CyclicRealModel m = real_model_cyclic(make_normal_form(5, 1, 4));
  std::cout << "real model for (5,1,4), " << m.clause << ":\n" << pretty(m.model) << "\n";

  for (const CatalogEntry& e : catalog())
    std::cout << e.name << " (order " << e.expected_order << "): "
              << (e.verdict.pseudo_real() ? "pseudo-real" : "definable over R") << "\n";
}
