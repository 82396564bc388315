#pragma once

#include <cstdint>
#include <string_view>

namespace anrsteg {

/// Deterministic 64-bit generator (splitmix64). The algorithm is fixed so that
/// identical seeds produce identical streams on every platform and build; it is
/// what payload generation and keyed traversal are specified against.
class Prng {
  public:
    static constexpr std::string_view algorithm = "splitmix64";

    explicit Prng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, n). Modulo bias is irrelevant at our ranges and a
    /// fixed reduction keeps the stream reproducible.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    /// Derive an independent generator, e.g. one per grid cell or worker.
    Prng derive(std::uint64_t tag) const {
        Prng g(state_ ^ tag);
        g.next();
        return g;
    }

  private:
    std::uint64_t state_;
};

/// FNV-1a, used to turn cell labels into derivation tags.
inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

}  // namespace anrsteg
