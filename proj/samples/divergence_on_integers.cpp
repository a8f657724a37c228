// f in L^Φ1, g in L^Φ2 on ℤ whose convolution blows up at 0.

#include <cstdio>
#include <vector>

#include "hyperorlicz/hyperorlicz.hpp"

using namespace hyperorlicz;

int main() {
  const auto Z = DiscreteHypergroup::integers();
  const auto phi = YoungFunction::power(3);
  const std::vector<Point> U{-1, 0, 1};

  const auto inst = build_counterexample(Z, 1, U, phi, phi,
                                         SequenceWitness::inverse_sqrt(), 100000);
  std::printf("V = {%lld}, N = %lld, N' = %lld\n",
              static_cast<long long>(inst.V.front()), inst.N, inst.N_prime);
  std::printf("certified tail bound %.6f < 1/lambda(V) = %.1f\n",
              inst.tail_bound_phi1, 1.0 / inst.lambda_V);

  const std::vector<Point> xs{0};
  const std::vector<long long> schedule{100, 1000, 10000, 100000};
  const auto rep = divergence_report(inst, xs, schedule);
  std::printf("%8s %22s %22s\n", "M", "(f_M*g_M)(0)", "modular(f_M)");
  for (const auto& row : rep.rows) {
    std::printf("%8lld %22.17g %22.17g\n", row.M, row.value,
                modular(Z, phi, inst.f(row.M)));
  }
  return rep.strictly_increasing ? 0 : 1;
}
