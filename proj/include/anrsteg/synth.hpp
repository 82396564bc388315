#pragma once

#include <cstdint>

#include "anrsteg/image.hpp"

namespace anrsteg {

/// Procedural grayscale cover with photograph-like statistics: multi-octave
/// value noise for structure, a dithered irregular tone curve for a ragged
/// histogram, and sparse signed pixel noise for fine texture. Deterministic in
/// (width, height, seed); integer arithmetic only, so output is identical on
/// every platform.
GrayImage synth_cover(int width, int height, std::uint64_t seed);

}  // namespace anrsteg
