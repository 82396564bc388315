#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "anrsteg/bitplane.hpp"
#include "anrsteg/image.hpp"
#include "anrsteg/numsys.hpp"
#include "anrsteg/prng.hpp"

namespace anrsteg {

using BitVec = std::vector<std::uint8_t>;  // each element 0 or 1

// ---------------------------------------------------------------------------
// Payload framing. Blind extraction needs a termination rule, so payloads are
// wrapped as: 2 magic bytes, 32-bit big-endian byte count, payload bytes.
// Bits are streamed MSB-first within each byte.
// ---------------------------------------------------------------------------

inline constexpr std::array<std::uint8_t, 2> kFrameMagic = {0x5A, 0xC1};
inline constexpr std::size_t kFrameHeaderBits = 48;

BitVec frame_payload(const std::vector<std::uint8_t>& payload);

/// Inverse of frame_payload over a bit stream that may carry trailing padding.
/// Throws ExtractionError on bad magic or a length that overruns the stream.
std::vector<std::uint8_t> parse_frame(const BitVec& bits);

/// Framed size in bits for a payload of `bytes` bytes.
inline std::size_t framed_bits(std::size_t bytes) { return kFrameHeaderBits + 8 * bytes; }

// ---------------------------------------------------------------------------
// Pixel traversal
// ---------------------------------------------------------------------------

enum class Traversal { Raster, Keyed };

/// Visit order over pixel indices. Raster is identity; Keyed is a Fisher-Yates
/// shuffle driven by the documented generator, so both parties derive the same
/// order from the shared seed.
std::vector<std::uint32_t> pixel_order(std::size_t npixels, Traversal traversal,
                                       std::uint64_t seed);

// ---------------------------------------------------------------------------
// Direct k-plane LSB coding
// ---------------------------------------------------------------------------

/// Overwrite binary planes 1..k with payload bits in traversal order,
/// plane-major within a pixel (plane-1 bit first). A payload ending mid-pixel
/// is padded with zeros for that pixel; later pixels are untouched.
GrayImage lsb_embed(const GrayImage& img, const BitVec& bits, int k,
                    Traversal traversal = Traversal::Raster, std::uint64_t seed = 0);

/// Read nbits back in the same order.
BitVec lsb_extract(const GrayImage& img, std::size_t nbits, int k,
                   Traversal traversal = Traversal::Raster, std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// ANR low-plane coding
// ---------------------------------------------------------------------------

/// Per pixel value: how many low planes (0..3) can carry payload, and the
/// anchor ("base") value with those planes cleared.
///
/// The table is derived by brute force rather than transcribed from published
/// vector lists. An anchor is a value whose canonical representation has
/// planes 1..3 clear; its class K is the largest k <= 3 such that for every
/// k-bit pattern p the value anchor + sum(p_j * w_j) has canonical
/// representation exactly anchor's mask with the pattern in the low planes.
/// A value belongs to its anchor's orbit (and inherits class K) when its own
/// canonical mask is the anchor mask plus some admissible pattern; every other
/// value has class 0 and is never touched. This closure is what makes blind
/// extraction sound: a stego pixel's class can be read off the stego value
/// itself. Note that with low weights {1,2,3} the offsets of 3-bit patterns
/// collide (1+2 == 3), so class 3 only occurs for systems with independent
/// low weights such as binary.
class CapacityClassTable {
  public:
    CapacityClassTable(const NumberSystem& ns, RepMode mode);

    const NumberSystem& system() const { return system_; }
    RepMode mode() const { return mode_; }
    int cls(int value) const { return cls_[static_cast<std::size_t>(value)]; }
    int base(int value) const { return base_[static_cast<std::size_t>(value)]; }
    std::uint64_t mask(int value) const { return table_.mask(value); }
    const std::array<std::uint8_t, 256>& classes() const { return cls_; }

    /// Values of a given class, ascending.
    std::vector<int> class_values(int k) const;

    /// Independent brute-force re-check of the round-trip law over every value
    /// and pattern. Throws IntegrityError on any violation.
    void verify() const;

    /// CSV with "value,class,base" rows (256 of them) and a header line.
    void write_csv(std::ostream& out) const;
    static CapacityClassTable read_csv(std::istream& in, const NumberSystem& ns, RepMode mode);

  private:
    CapacityClassTable(const NumberSystem& ns, RepMode mode, bool build);

    NumberSystem system_;
    RepMode mode_;
    RepresentationTable table_;
    std::array<std::uint8_t, 256> cls_{};
    std::array<std::uint8_t, 256> base_{};
};

/// Embedding capacity in bits. LSB-direct: k * width * height. ANR: sum of
/// per-pixel classes.
std::size_t capacity_bits(const GrayImage& img, int k);
std::size_t capacity_bits(const GrayImage& img, const CapacityClassTable& table);

/// Embed framed bits: each pixel in traversal order absorbs class(v) bits into
/// the low planes of its canonical representation; the pixel becomes
/// base + pattern. Output pixels stay in [0, 255] (anchors keep the low-plane
/// budget below the target sum). Throws CapacityError when bits do not fit.
GrayImage anr_embed(const GrayImage& img, const BitVec& bits, const CapacityClassTable& table,
                    Traversal traversal = Traversal::Raster, std::uint64_t seed = 0);

/// Blind inverse: reads class(v') bits from each stego pixel's canonical
/// low planes, in the same traversal order. Needs only (system, mode, seed).
BitVec anr_extract_bits(const GrayImage& img, const CapacityClassTable& table,
                        std::size_t nbits, Traversal traversal = Traversal::Raster,
                        std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// High-level payload interface (framing included)
// ---------------------------------------------------------------------------

struct StegoParams {
    enum class Method { LsbDirect, Anr };
    Method method = Method::Anr;
    int k = 1;                                   // LsbDirect depth, 1..3
    std::string system = "S1";                   // Anr: number system name/config
    RepMode mode = RepMode::Max;                 // Anr: canonical mode
    Traversal traversal = Traversal::Raster;
    std::uint64_t seed = 0xC0FFEE;               // traversal key
    double fill_fraction = 1.0;                  // grid cells: fraction of measured capacity
};

std::size_t capacity_bits(const GrayImage& img, const StegoParams& params);
GrayImage embed_payload(const GrayImage& cover, const std::vector<std::uint8_t>& payload,
                        const StegoParams& params);
std::vector<std::uint8_t> extract_payload(const GrayImage& stego, const StegoParams& params);

/// Deterministic, seed-reproducible uniform bit stream: consecutive words of
/// the documented generator, bits taken MSB-first within each word.
BitVec random_payload(std::size_t nbits, std::uint64_t seed);

/// Same stream packed into bytes (MSB-first), nbytes * 8 bits long.
std::vector<std::uint8_t> random_payload_bytes(std::size_t nbytes, std::uint64_t seed);

}  // namespace anrsteg
