#include "anrsteg/bitplane.hpp"

#include <bit>

namespace anrsteg {

RepresentationTable::RepresentationTable(const NumberSystem& ns, RepMode mode)
    : system_(ns), mode_(mode) {
    if (!mode_compatible(ns, mode))
        throw ConfigError(std::string("mode ") + std::string(to_string(mode)) +
                          " is not valid for system " + ns.name());
    if (ns.target_sum() < 255)
        throw ConfigError("pixel decomposition needs a target sum of at least 255");
    for (int v = 0; v < 256; ++v)
        masks_[static_cast<std::size_t>(v)] = canonical_representation(ns, v, mode).mask;
}

BitPlaneStack decompose(const GrayImage& img, const NumberSystem& ns, RepMode mode) {
    RepresentationTable table(ns, mode);
    BitPlaneStack stack{ns, mode, img.width, img.height, {}};
    int n = ns.plane_count();
    stack.planes.assign(static_cast<std::size_t>(n),
                        std::vector<std::uint8_t>(img.size(), 0));
    for (std::size_t p = 0; p < img.size(); ++p) {
        std::uint64_t mask = table.mask(img.pixels[p]);
        while (mask) {
            int i = std::countr_zero(mask);
            stack.planes[static_cast<std::size_t>(i)][p] = 1;
            mask &= mask - 1;
        }
    }
    return stack;
}

GrayImage reconstruct(const BitPlaneStack& stack) {
    GrayImage img(stack.width, stack.height);
    int n = stack.plane_count();
    if (n != stack.system.plane_count())
        throw IntegrityError("stack plane count does not match its system");
    for (std::size_t p = 0; p < img.size(); ++p) {
        long long sum = 0;
        for (int i = 1; i <= n; ++i)
            if (stack.planes[static_cast<std::size_t>(i) - 1][p]) sum += stack.system.weight(i);
        if (sum < 0 || sum > 255)
            throw IntegrityError("recomposed value " + std::to_string(sum) + " at pixel " +
                                 std::to_string(p) + " is outside [0, 255]");
        img.pixels[p] = static_cast<std::uint8_t>(sum);
    }
    return img;
}

GrayImage export_plane(const BitPlaneStack& stack, int plane) {
    if (plane < 1 || plane > stack.plane_count())
        throw RangeError("plane index " + std::to_string(plane) + " outside [1, " +
                         std::to_string(stack.plane_count()) + "]");
    GrayImage img(stack.width, stack.height);
    const auto& src = stack.planes[static_cast<std::size_t>(plane) - 1];
    for (std::size_t p = 0; p < img.size(); ++p) img.pixels[p] = src[p] ? 255 : 0;
    return img;
}

}  // namespace anrsteg
