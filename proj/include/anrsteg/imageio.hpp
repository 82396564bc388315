#pragma once

#include <filesystem>
#include <vector>

#include "anrsteg/image.hpp"

namespace anrsteg {

/// Binary PGM (P5) reader. Accepts maxval 1..255 and comment lines in the
/// header; throws FormatError otherwise. Byte-exact with write_pgm.
GrayImage read_pgm(const std::filesystem::path& path);

/// Binary PGM (P5) writer, maxval 255, no comments.
void write_pgm(const GrayImage& img, const std::filesystem::path& path);

std::vector<std::uint8_t> load_payload(const std::filesystem::path& path);
void save_payload(const std::vector<std::uint8_t>& bytes, const std::filesystem::path& path);

}  // namespace anrsteg
