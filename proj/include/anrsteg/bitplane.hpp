#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "anrsteg/image.hpp"
#include "anrsteg/numsys.hpp"

namespace anrsteg {

/// Precomputed canonical representation of every pixel value for one
/// (system, mode) pair. Each pixel lookup during decomposition is then O(1),
/// and the table doubles as the exhaustive-correctness artifact: building it
/// touches all 256 values.
class RepresentationTable {
  public:
    RepresentationTable(const NumberSystem& ns, RepMode mode);

    const NumberSystem& system() const { return system_; }
    RepMode mode() const { return mode_; }
    Representation rep(int value) const { return {masks_[static_cast<std::size_t>(value)], system_.plane_count()}; }
    std::uint64_t mask(int value) const { return masks_[static_cast<std::size_t>(value)]; }

  private:
    NumberSystem system_;
    RepMode mode_;
    std::array<std::uint64_t, 256> masks_{};
};

/// Per-pixel representation coefficients organized as n binary planes,
/// LSB-first (plane 1 = weight 1).
struct BitPlaneStack {
    NumberSystem system;
    RepMode mode;
    int width = 0;
    int height = 0;
    std::vector<std::vector<std::uint8_t>> planes;  // planes[i-1][pixel] in {0,1}

    int plane_count() const { return static_cast<int>(planes.size()); }
};

/// Split an image into binary planes over the system's basis. The mode must be
/// compatible with the system (Zeckendorf needs a Fibonacci kind).
BitPlaneStack decompose(const GrayImage& img, const NumberSystem& ns, RepMode mode);

/// Pixel-wise recomposition; exact inverse of decompose for unmodified stacks.
/// Throws IntegrityError naming the pixel if a composed value leaves [0, 255]
/// (possible only for externally mutated stacks).
GrayImage reconstruct(const BitPlaneStack& stack);

/// Render plane i (1-based) as a black/white image (0 or 255).
GrayImage export_plane(const BitPlaneStack& stack, int plane);

}  // namespace anrsteg
