#include "hierdist/params.hpp"

#include <cmath>
#include <stdexcept>

namespace hierdist {

int hierarchy_depth(std::size_t n) {
  if (n < 1) throw std::invalid_argument("compute_params: n must be positive");
  const double target = std::log2(static_cast<double>(n));
  double sum = 0.0;
  int k = 0;
  while (sum <= target) {
    ++k;
    sum += std::pow(1.2, k);
  }
  return k < 2 ? 2 : k;
}

HierarchyParams compute_params(std::size_t n, Weight max_weight) {
  if (max_weight < 1) throw std::invalid_argument("compute_params: W must be positive");
  HierarchyParams p;
  p.n = n;
  p.max_weight = max_weight;
  p.k = hierarchy_depth(n);
  const auto nn = static_cast<Weight>(n);
  if (nn > 0 && max_weight > kInfinite / nn / nn) throw std::invalid_argument("compute_params: n^2 W too large");
  p.sentinel = nn * nn * max_weight;
  const double logterm =
      std::log(static_cast<double>(n) * static_cast<double>(n) * static_cast<double>(max_weight)) /
      std::log(4.0 / 3.0);
  for (int i = 1; i <= p.k; ++i) {
    LevelParams lp;
    lp.level = i;
    lp.b = std::pow(2.0, std::pow(1.2, i));
    lp.bhat = static_cast<std::size_t>(std::ceil(lp.b * (logterm + 1.0)));
    p.levels.push_back(lp);
  }
  return p;
}

long double stretch_ceiling(int k) {
  return 2.0L * std::pow(236145.0L, static_cast<long double>(k - 1));
}

}  // namespace hierdist
