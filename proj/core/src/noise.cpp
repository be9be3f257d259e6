#include "hyden/noise.hpp"

#include <stdexcept>

namespace hyden {

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

HPoint tangential_noise(const VectorRef& x, double sigma, std::mt19937_64& rng) {
  if (sigma < 0.0) throw std::invalid_argument("tangential_noise: sigma must be >= 0");
  if (sigma == 0.0) return x;
  std::normal_distribution<double> normal(0.0, sigma);
  Vector dir = Vector::Zero(x.size());
  for (const auto& t : tangent_basis(x)) dir += normal(rng) * t;
  return exp_map({x, dir});
}

Vector ambient_noise(const VectorRef& x, double sigma, std::mt19937_64& rng) {
  if (sigma < 0.0) throw std::invalid_argument("ambient_noise: sigma must be >= 0");
  if (sigma == 0.0) return x;
  std::normal_distribution<double> normal(0.0, sigma);
  Vector out = x;
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] += normal(rng);
  return out;
}

Matrix add_noise(const Matrix& points, const NoiseSpec& spec) {
  Matrix out(points.rows(), points.cols());
  for (Eigen::Index n = 0; n < points.cols(); ++n) {
    auto rng = stream_rng(spec.seed, static_cast<std::uint64_t>(n));
    out.col(n) = spec.kind == NoiseKind::tangential ? tangential_noise(points.col(n), spec.sigma, rng)
                                                    : ambient_noise(points.col(n), spec.sigma, rng);
  }
  return out;
}

}  // namespace hyden
