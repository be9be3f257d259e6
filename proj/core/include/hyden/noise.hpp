// Seeded noise models for sheet-valued signals.
#pragma once

#include <cstdint>
#include <random>

#include "hyden/geometry.hpp"

namespace hyden {

enum class NoiseKind { tangential, ambient };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::tangential;
  double sigma = 0.1;
  std::uint64_t seed = 0;
};

/// Generator keyed by (seed, stream). Draws for different streams are
/// independent of the order in which streams are visited.
std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream);

/// exp_map of a tangent vector with i.i.d. N(0, sigma^2) coefficients in the
/// orthonormal frame tangent_basis(x). sigma == 0 returns x.
HPoint tangential_noise(const VectorRef& x, double sigma, std::mt19937_64& rng);

/// x + N(0, sigma^2 I) in the ambient space; generally off the sheet.
Vector ambient_noise(const VectorRef& x, double sigma, std::mt19937_64& rng);

/// Applies the noise model column by column, column n drawing from
/// stream_rng(spec.seed, n).
Matrix add_noise(const Matrix& points, const NoiseSpec& spec);

}  // namespace hyden
