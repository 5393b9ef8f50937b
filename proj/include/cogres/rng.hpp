#pragma once

#include <cstdint>
#include <random>

#include "cogres/core.hpp"

namespace cogres {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; derives an independent stream seed from (master, index)
/// so per-item generation does not depend on processing order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// rows×cols matrix with i.i.d. entries uniform on [-1, 1].
Matrix uniform_matrix(std::size_t rows, std::size_t cols, Rng& rng);

}  // namespace cogres
