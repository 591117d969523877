// Counts fixed points, collisions and two-cycles for one prime and prints
// them next to the predicted values.
//
//   basic_counts [p]      (default 10007)

#include <cstdio>
#include <cstdlib>
#include <string>

#include "dlcycles/counts.hpp"
#include "dlcycles/predict.hpp"

int main(int argc, char** argv) {
  const dlc::u64 p = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 10007;
  if (p < 5 || !dlc::is_prime(p)) {
    std::fprintf(stderr, "need a prime >= 5\n");
    return 1;
  }
  dlc::PrimeContext ctx(p);

  const auto fp = dlc::count_fp(ctx).total();
  const auto ha = dlc::count_ha(ctx);
  const auto tc = dlc::count_tc(ctx).matrix;
  const auto fp_pred = dlc::predict_fp(ctx);
  const auto ha_pred = dlc::predict_ha(ctx);
  const auto tc_pred = dlc::predict_tc(ctx);

  std::printf("p = %llu, phi(p-1) = %llu, E(p) = %llu\n\n", static_cast<unsigned long long>(p),
              static_cast<unsigned long long>(ctx.phi_pm1()), static_cast<unsigned long long>(dlc::E_p(ctx)));
  std::printf("%-6s %-6s %10s %12s %10s %12s %10s %12s\n", "row", "col", "fixed", "predicted", "collide",
              "predicted", "2-cycle", "predicted");
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      std::printf("%-6s %-6s %10llu %12.2f %10llu %12.2f %10llu %12.2f\n",
                  std::string(dlc::to_string(dlc::kConditions[r])).c_str(),
                  std::string(dlc::to_string(dlc::kConditions[c])).c_str(),
                  static_cast<unsigned long long>(fp[r][c]), dlc::to_double(fp_pred.exact[r][c]),
                  static_cast<unsigned long long>(ha.nontrivial[r][c]), dlc::to_double(ha_pred.exact[r][c]),
                  static_cast<unsigned long long>(tc.nontrivial[r][c]), dlc::to_double(tc_pred.exact[r][c]));
  return 0;
}
