#include "anrsteg/embed.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

namespace anrsteg {

namespace {

constexpr std::uint64_t kLow3 = 0x7;

int low_weight_sum(const NumberSystem& ns, std::uint64_t pattern) {
    int s = 0;
    for (int j = 0; j < 3; ++j)
        if ((pattern >> j) & 1u) s += ns.weight(j + 1);
    return s;
}

}  // namespace

BitVec frame_payload(const std::vector<std::uint8_t>& payload) {
    if (payload.size() > 0xFFFFFFFFull) throw CapacityError("payload too large to frame");
    std::vector<std::uint8_t> bytes;
    bytes.reserve(6 + payload.size());
    bytes.push_back(kFrameMagic[0]);
    bytes.push_back(kFrameMagic[1]);
    std::uint32_t len = static_cast<std::uint32_t>(payload.size());
    bytes.push_back(static_cast<std::uint8_t>(len >> 24));
    bytes.push_back(static_cast<std::uint8_t>(len >> 16));
    bytes.push_back(static_cast<std::uint8_t>(len >> 8));
    bytes.push_back(static_cast<std::uint8_t>(len));
    bytes.insert(bytes.end(), payload.begin(), payload.end());
    BitVec bits;
    bits.reserve(bytes.size() * 8);
    for (std::uint8_t b : bytes)
        for (int i = 7; i >= 0; --i) bits.push_back((b >> i) & 1u);
    return bits;
}

std::vector<std::uint8_t> parse_frame(const BitVec& bits) {
    if (bits.size() < kFrameHeaderBits)
        throw ExtractionError("stream too short for a frame header (" +
                              std::to_string(bits.size()) + " bits)");
    auto read_byte = [&](std::size_t bit_off) {
        std::uint8_t b = 0;
        for (int i = 0; i < 8; ++i) b = static_cast<std::uint8_t>((b << 1) | bits[bit_off + static_cast<std::size_t>(i)]);
        return b;
    };
    if (read_byte(0) != kFrameMagic[0] || read_byte(8) != kFrameMagic[1])
        throw ExtractionError("bad frame magic; wrong parameters or no embedded payload");
    std::uint32_t len = 0;
    for (int i = 0; i < 4; ++i) len = (len << 8) | read_byte(16 + 8 * static_cast<std::size_t>(i));
    std::size_t need = kFrameHeaderBits + 8ull * len;
    if (bits.size() < need)
        throw ExtractionError("frame length " + std::to_string(len) +
                              " overruns the extracted stream");
    std::vector<std::uint8_t> payload(len);
    for (std::uint32_t i = 0; i < len; ++i)
        payload[i] = read_byte(kFrameHeaderBits + 8ull * i);
    return payload;
}

std::vector<std::uint32_t> pixel_order(std::size_t npixels, Traversal traversal,
                                       std::uint64_t seed) {
    std::vector<std::uint32_t> order(npixels);
    std::iota(order.begin(), order.end(), 0u);
    if (traversal == Traversal::Keyed) {
        Prng g(seed);
        for (std::size_t i = npixels; i > 1; --i)
            std::swap(order[i - 1], order[g.below(i)]);
    }
    return order;
}

GrayImage lsb_embed(const GrayImage& img, const BitVec& bits, int k, Traversal traversal,
                    std::uint64_t seed) {
    if (k < 1 || k > 3) throw ConfigError("LSB depth must be 1..3");
    std::size_t cap = capacity_bits(img, k);
    if (bits.size() > cap)
        throw CapacityError("payload of " + std::to_string(bits.size()) +
                            " bits exceeds capacity " + std::to_string(cap));
    GrayImage out = img;
    auto order = pixel_order(img.size(), traversal, seed);
    std::size_t i = 0;
    for (std::uint32_t p : order) {
        if (i >= bits.size()) break;
        std::uint8_t v = out.pixels[p];
        std::uint8_t low = 0;
        for (int j = 0; j < k; ++j) {
            std::uint8_t b = i < bits.size() ? bits[i] : 0;  // zero padding mid-pixel
            low = static_cast<std::uint8_t>(low | (b << j));
            ++i;
        }
        out.pixels[p] = static_cast<std::uint8_t>((v & ~((1u << k) - 1u)) | low);
    }
    return out;
}

BitVec lsb_extract(const GrayImage& img, std::size_t nbits, int k, Traversal traversal,
                   std::uint64_t seed) {
    if (k < 1 || k > 3) throw ConfigError("LSB depth must be 1..3");
    std::size_t cap = capacity_bits(img, k);
    if (nbits > cap)
        throw ExtractionError("requested " + std::to_string(nbits) + " bits but capacity is " +
                              std::to_string(cap));
    BitVec bits;
    bits.reserve(nbits);
    auto order = pixel_order(img.size(), traversal, seed);
    for (std::uint32_t p : order) {
        if (bits.size() >= nbits) break;
        std::uint8_t v = img.pixels[p];
        for (int j = 0; j < k && bits.size() < nbits; ++j)
            bits.push_back((v >> j) & 1u);
    }
    return bits;
}

CapacityClassTable::CapacityClassTable(const NumberSystem& ns, RepMode mode, bool)
    : system_(ns), mode_(mode), table_(ns, mode) {}

CapacityClassTable::CapacityClassTable(const NumberSystem& ns, RepMode mode)
    : CapacityClassTable(ns, mode, false) {
    if (ns.plane_count() < 4)
        throw ConfigError("capacity classes need a system with at least 4 planes");

    // Anchor classes: K[beta] for values whose canonical mask has clear low planes.
    std::array<int, 256> anchor_k{};
    std::array<bool, 256> is_anchor{};
    for (int beta = 0; beta < 256; ++beta) {
        std::uint64_t m = table_.mask(beta);
        if (m & kLow3) continue;
        is_anchor[static_cast<std::size_t>(beta)] = true;
        for (int k = 3; k >= 1; --k) {
            bool ok = true;
            for (std::uint64_t pat = 0; ok && pat < (1ull << k); ++pat) {
                int u = beta + low_weight_sum(system_, pat);
                if (u > 255 || table_.mask(u) != (m | pat)) ok = false;
            }
            if (ok) {
                anchor_k[static_cast<std::size_t>(beta)] = k;
                break;
            }
        }
    }
    // Orbit membership: a value inherits its anchor's class when its canonical
    // mask is the anchor mask plus an admissible low pattern.
    for (int v = 0; v < 256; ++v) {
        std::uint64_t m = table_.mask(v);
        std::uint64_t high = m & ~kLow3;
        int beta = v - low_weight_sum(system_, m & kLow3);
        base_[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(std::clamp(beta, 0, 255));
        if (beta < 0 || beta > 255) continue;
        if (!is_anchor[static_cast<std::size_t>(beta)] || table_.mask(beta) != high) continue;
        int k = anchor_k[static_cast<std::size_t>(beta)];
        if ((m & kLow3) < (1ull << k)) cls_[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(k);
    }
    verify();
}

std::vector<int> CapacityClassTable::class_values(int k) const {
    std::vector<int> out;
    for (int v = 0; v < 256; ++v)
        if (cls_[static_cast<std::size_t>(v)] == k) out.push_back(v);
    return out;
}

void CapacityClassTable::verify() const {
    for (int v = 0; v < 256; ++v) {
        int k = cls(v);
        if (k == 0) continue;
        int beta = base(v);
        for (std::uint64_t pat = 0; pat < (1ull << k); ++pat) {
            int u = beta + low_weight_sum(system_, pat);
            if (u < 0 || u > 255)
                throw IntegrityError("class table writes value " + std::to_string(u) +
                                     " outside [0, 255]");
            if (cls(u) != k)
                throw IntegrityError("stego value " + std::to_string(u) + " reads class " +
                                     std::to_string(cls(u)) + ", embedded with " +
                                     std::to_string(k));
            if ((table_.mask(u) & kLow3) != pat)
                throw IntegrityError("pattern " + std::to_string(pat) +
                                     " does not survive the canonical representation of " +
                                     std::to_string(u));
            if (base(u) != beta)
                throw IntegrityError("base drifts from " + std::to_string(beta) + " to " +
                                     std::to_string(base(u)));
        }
    }
}

void CapacityClassTable::write_csv(std::ostream& out) const {
    out << "value,class,base\n";
    for (int v = 0; v < 256; ++v)
        out << v << ',' << cls(v) << ',' << base(v) << '\n';
}

CapacityClassTable CapacityClassTable::read_csv(std::istream& in, const NumberSystem& ns,
                                                RepMode mode) {
    CapacityClassTable t(ns, mode, false);
    std::string line;
    if (!std::getline(in, line) || line.rfind("value,class,base", 0) != 0)
        throw FormatError("class table CSV must start with 'value,class,base'");
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        int v, c, b;
        char comma1, comma2;
        std::istringstream row(line);
        if (!(row >> v >> comma1 >> c >> comma2 >> b) || comma1 != ',' || comma2 != ',')
            throw FormatError("bad class table row: " + line);
        if (v < 0 || v > 255 || c < 0 || c > 3 || b < 0 || b > 255)
            throw FormatError("class table row out of range: " + line);
        t.cls_[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(c);
        t.base_[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(b);
        ++rows;
    }
    if (rows != 256) throw FormatError("class table CSV needs 256 rows");
    t.verify();
    return t;
}

std::size_t capacity_bits(const GrayImage& img, int k) {
    if (k < 1 || k > 3) throw ConfigError("LSB depth must be 1..3");
    return static_cast<std::size_t>(k) * img.size();
}

std::size_t capacity_bits(const GrayImage& img, const CapacityClassTable& table) {
    std::size_t total = 0;
    for (std::uint8_t v : img.pixels) total += static_cast<std::size_t>(table.cls(v));
    return total;
}

GrayImage anr_embed(const GrayImage& img, const BitVec& bits, const CapacityClassTable& table,
                    Traversal traversal, std::uint64_t seed) {
    std::size_t cap = capacity_bits(img, table);
    if (bits.size() > cap)
        throw CapacityError("payload of " + std::to_string(bits.size()) +
                            " bits exceeds ANR capacity " + std::to_string(cap));
    GrayImage out = img;
    auto order = pixel_order(img.size(), traversal, seed);
    const NumberSystem& ns = table.system();
    std::size_t i = 0;
    for (std::uint32_t p : order) {
        if (i >= bits.size()) break;
        int v = out.pixels[p];
        int k = table.cls(v);
        if (k == 0) continue;
        std::uint64_t pat = 0;
        for (int j = 0; j < k; ++j) {
            std::uint8_t b = i < bits.size() ? bits[i] : 0;
            pat |= static_cast<std::uint64_t>(b) << j;
            ++i;
        }
        int u = table.base(v) + low_weight_sum(ns, pat);
        // the table's round-trip law guarantees these; a failure means corruption
        if (u < 0 || u > 255 || table.cls(u) != k || (table.mask(u) & kLow3) != pat)
            throw IntegrityError("round-trip violation at pixel " + std::to_string(p) +
                                 ": corrupted class table");
        out.pixels[p] = static_cast<std::uint8_t>(u);
    }
    return out;
}

BitVec anr_extract_bits(const GrayImage& img, const CapacityClassTable& table, std::size_t nbits,
                        Traversal traversal, std::uint64_t seed) {
    BitVec bits;
    bits.reserve(std::min(nbits, capacity_bits(img, table)));
    auto order = pixel_order(img.size(), traversal, seed);
    for (std::uint32_t p : order) {
        if (bits.size() >= nbits) break;
        int v = img.pixels[p];
        int k = table.cls(v);
        std::uint64_t low = table.mask(v) & kLow3;
        for (int j = 0; j < k && bits.size() < nbits; ++j)
            bits.push_back(static_cast<std::uint8_t>((low >> j) & 1u));
    }
    return bits;
}

namespace {

const CapacityClassTable& cached_table(const NumberSystem& ns, RepMode mode) {
    // tables are expensive enough to share; key on config + mode
    static std::map<std::string, CapacityClassTable> cache;
    static std::mutex mu;
    std::string key = ns.config_line() + "|" + std::string(to_string(mode));
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, CapacityClassTable(ns, mode)).first;
    return it->second;
}

}  // namespace

std::size_t capacity_bits(const GrayImage& img, const StegoParams& params) {
    if (params.method == StegoParams::Method::LsbDirect) return capacity_bits(img, params.k);
    const NumberSystem ns = NumberSystem::from_config(params.system);
    return capacity_bits(img, cached_table(ns, params.mode));
}

GrayImage embed_payload(const GrayImage& cover, const std::vector<std::uint8_t>& payload,
                        const StegoParams& params) {
    BitVec bits = frame_payload(payload);
    std::size_t cap = capacity_bits(cover, params);
    double budget = params.fill_fraction * static_cast<double>(cap);
    if (params.fill_fraction <= 0.0 || params.fill_fraction > 1.0)
        throw ConfigError("fill fraction must be in (0, 1]");
    if (static_cast<double>(bits.size()) > budget)
        throw CapacityError("framed payload of " + std::to_string(bits.size()) +
                            " bits exceeds fill budget " +
                            std::to_string(static_cast<std::size_t>(budget)) + " of capacity " +
                            std::to_string(cap));
    if (params.method == StegoParams::Method::LsbDirect)
        return lsb_embed(cover, bits, params.k, params.traversal, params.seed);
    const NumberSystem ns = NumberSystem::from_config(params.system);
    return anr_embed(cover, bits, cached_table(ns, params.mode), params.traversal, params.seed);
}

std::vector<std::uint8_t> extract_payload(const GrayImage& stego, const StegoParams& params) {
    BitVec all;
    if (params.method == StegoParams::Method::LsbDirect) {
        all = lsb_extract(stego, capacity_bits(stego, params.k), params.k, params.traversal,
                          params.seed);
    } else {
        const NumberSystem ns = NumberSystem::from_config(params.system);
        const CapacityClassTable& table = cached_table(ns, params.mode);
        all = anr_extract_bits(stego, table, capacity_bits(stego, table), params.traversal,
                               params.seed);
    }
    return parse_frame(all);
}

BitVec random_payload(std::size_t nbits, std::uint64_t seed) {
    BitVec bits;
    bits.reserve(nbits);
    Prng g(seed);
    while (bits.size() < nbits) {
        std::uint64_t w = g.next();
        for (int j = 0; j < 64 && bits.size() < nbits; ++j)
            bits.push_back(static_cast<std::uint8_t>((w >> (63 - j)) & 1u));
    }
    return bits;
}

std::vector<std::uint8_t> random_payload_bytes(std::size_t nbytes, std::uint64_t seed) {
    BitVec bits = random_payload(nbytes * 8, seed);
    std::vector<std::uint8_t> bytes(nbytes, 0);
    for (std::size_t i = 0; i < nbytes; ++i)
        for (int j = 0; j < 8; ++j)
            bytes[i] = static_cast<std::uint8_t>((bytes[i] << 1) | bits[i * 8 + static_cast<std::size_t>(j)]);
    return bytes;
}

}  // namespace anrsteg
