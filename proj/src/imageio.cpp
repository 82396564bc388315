#include "anrsteg/imageio.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

namespace anrsteg {

namespace {

// Next header token, skipping whitespace and '#' comment lines.
std::string pgm_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok;
}

int pgm_int(std::istream& in, const char* what) {
    std::string tok = pgm_token(in);
    if (tok.empty()) throw FormatError(std::string("truncated PGM header while reading ") + what);
    for (char ch : tok)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw FormatError(std::string("bad PGM ") + what + ": " + tok);
    return std::stoi(tok);
}

}  // namespace

GrayImage read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (m0 != 'P' || m1 != '5') {
        std::string got;
        if (m0) got.push_back(m0);
        if (m1) got.push_back(m1);
        throw FormatError(path.string() + ": P5 required, found '" + got + "'");
    }
    int w = pgm_int(in, "width");
    int h = pgm_int(in, "height");
    int maxval = pgm_int(in, "maxval");
    if (w <= 0 || h <= 0) throw FormatError(path.string() + ": bad dimensions");
    if (maxval > 255)
        throw FormatError(path.string() + ": maxval " + std::to_string(maxval) +
                          " > 255 (16-bit PGM not supported)");
    if (maxval < 1) throw FormatError(path.string() + ": bad maxval");
    // the single whitespace byte after maxval was already consumed by pgm_int
    GrayImage img(w, h);
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.size()))
        throw FormatError(path.string() + ": truncated raster at byte offset " +
                          std::to_string(in.gcount()));
    return img;
}

void write_pgm(const GrayImage& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path.string());
    out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.size()));
    if (!out) throw FormatError("write failed: " + path.string());
}

std::vector<std::uint8_t> load_payload(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void save_payload(const std::vector<std::uint8_t>& bytes, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw FormatError("write failed: " + path.string());
}

}  // namespace anrsteg
