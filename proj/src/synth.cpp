#include "anrsteg/synth.hpp"

#include <algorithm>
#include <array>
#include <vector>

#include "anrsteg/prng.hpp"

namespace anrsteg {

GrayImage synth_cover(int width, int height, std::uint64_t seed) {
    GrayImage img(width, height);
    Prng g(seed);
    std::vector<int> total(img.size(), 0);

    // value-noise octaves: (lattice spacing, amplitude)
    constexpr std::array<std::array<int, 2>, 4> octaves = {{{64, 140}, {32, 60}, {16, 30}, {8, 14}}};
    for (auto [s, a] : octaves) {
        int gw = width / s + 2, gh = height / s + 2;
        std::vector<int> lat(static_cast<std::size_t>(gw) * gh);
        for (int i = 0; i < gh; ++i)
            for (int j = 0; j < gw; ++j)
                lat[static_cast<std::size_t>(i) * gw + j] = static_cast<int>(g.below(static_cast<std::uint64_t>(a) + 1));
        for (int y = 0; y < height; ++y) {
            int iy = y / s, fy = y % s;
            for (int x = 0; x < width; ++x) {
                int jx = x / s, fx = x % s;
                const int* row0 = &lat[static_cast<std::size_t>(iy) * gw + jx];
                const int* row1 = row0 + gw;
                int top = row0[0] * (s - fx) + row0[1] * fx;
                int bot = row1[0] * (s - fx) + row1[1] * fx;
                total[static_cast<std::size_t>(y) * width + x] +=
                    (top * (s - fy) + bot * fy) / (s * s);
            }
        }
    }
    // dither before the tone curve so level boundaries spread over a few pixels
    for (auto& t : total) t += 4 + static_cast<int>(g.below(4));

    // irregular monotone tone curve: step-0 runs make plateaus (histogram
    // spikes), step-2/3 jumps leave gaps, like a contrast-stretched photo
    std::array<int, 252> curve{};
    int out = static_cast<int>(g.below(6));
    for (int v = 0; v < 252; ++v) {
        int r = static_cast<int>(g.below(100));
        int step = r < 26 ? 0 : (r < 78 ? 1 : (r < 94 ? 2 : 3));
        out = std::min(255, out + step);
        curve[static_cast<std::size_t>(v)] = out;
    }
    for (std::size_t p = 0; p < img.size(); ++p) {
        int v = curve[static_cast<std::size_t>(std::clamp(total[p], 0, 251))];
        int r = static_cast<int>(g.below(100));
        if (r < 10)
            v += 1;
        else if (r < 20)
            v -= 1;
        img.pixels[p] = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
    }
    return img;
}

}  // namespace anrsteg
