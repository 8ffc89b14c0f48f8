#include "rmf/sampler.hpp"

#include <algorithm>

#include <cmath>

namespace rmf {

std::string_view to_string(Model model) noexcept {
  return model == Model::Steinhaus ? "steinhaus" : "rademacher";
}

Model parse_model(std::string_view name) {
  if (name == "steinhaus") return Model::Steinhaus;
  if (name == "rademacher") return Model::Rademacher;
  throw ConfigError("unknown model '" + std::string(name) + "' (expected steinhaus|rademacher)");
}

std::uint64_t isqrt(std::uint64_t n) noexcept {
  // the double estimate can be off by one either way; compare by division to
  // stay clear of overflow near 2^64
  auto r = std::min<std::uint64_t>(static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n))),
                                   0xffffffffULL);
  while (r > 0 && r > n / r) --r;
  while (r < 0xffffffffULL && r + 1 <= n / (r + 1)) ++r;
  return r;
}

double normalization(double x) {
  if (!(x > std::numbers::e) || !std::isfinite(x)) {
    throw DomainError("normalization requires log log x > 0, got x = " + std::to_string(x));
  }
  return std::pow(std::log(std::log(x)), 0.25) / std::sqrt(x);
}

Complex normalize_sum(Complex v, double x) {
  const double scale = normalization(x);
  return {v.real() * scale, v.imag() * scale};
}

}  // namespace rmf
