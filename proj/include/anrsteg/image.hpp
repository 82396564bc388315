#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "anrsteg/error.hpp"

namespace anrsteg {

/// 8-bit grayscale image, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {
        if (w <= 0 || h <= 0) throw RangeError("image dimensions must be positive");
    }

    std::size_t size() const { return pixels.size(); }
    std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }

    bool same_dims(const GrayImage& o) const { return width == o.width && height == o.height; }
    bool operator==(const GrayImage& o) const = default;
};

}  // namespace anrsteg
