// F_g for g = χ_0 on ℤ and on the Chebyshev hypergroup, with both norms.

#include <cstdio>

#include "hyperorlicz/hyperorlicz.hpp"

using namespace hyperorlicz;

namespace {

void show(const char* label, const DiscreteHypergroup& H, NormKind kind) {
  const auto phi = YoungFunction::power(2);
  const auto g = OrliczFunction<double>::point(0, 1.0);
  CriterionOptions opt;
  opt.norm = kind;
  const auto prof = criterion_profile(H, g, phi, Weight::unit(), {5, 10, 20}, opt);
  std::printf("%-10s %-9s F_g(1)=%.17g tail=%.17g  %s", label, to_string(kind),
              prof.values[1], prof.tail_sups.back(), to_string(prof.verdict));
  for (const auto& c : prof.certificates) std::printf(" [%s]", c.c_str());
  std::printf("\n");
}

}  // namespace

int main() {
  for (NormKind k : {NormKind::luxemburg, NormKind::orlicz}) {
    show("integers", DiscreteHypergroup::integers(), k);
    show("chebyshev", DiscreteHypergroup::chebyshev(), k);
    show("cyclic:7", DiscreteHypergroup::cyclic(7), k);
  }
}
