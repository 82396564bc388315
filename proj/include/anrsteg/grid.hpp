#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "anrsteg/embed.hpp"
#include "anrsteg/image.hpp"
#include "anrsteg/steganalysis.hpp"

namespace anrsteg {

/// One experiment grid: every image x {1LSB, 2LSB, 3LSB, ANR} x fill fraction.
/// Fills are fractions of each method's measured capacity.
struct GridSpec {
    std::vector<std::pair<std::string, GrayImage>> images;  // name -> cover
    std::string system = "S1";
    RepMode mode = RepMode::Max;
    std::vector<double> fills = {0.10, 0.25, 0.50, 1.00};
    std::uint64_t payload_seed = 0xC0FFEE;
    Traversal traversal = Traversal::Raster;
    std::uint64_t traversal_seed = 0xC0FFEE;
    int threads = 1;
};

struct GridCell {
    std::string image;
    std::string method;
    double fill = 0.0;
    bool ok = false;
    std::string error;
    AnalysisReport report;
};

struct GridResult {
    std::vector<GridCell> cells;  // fixed order: image, method, fill
    std::string system;
    std::string mode;
    std::uint64_t payload_seed = 0;

    /// Deterministic CSV; identical bytes for identical spec regardless of
    /// thread count.
    std::string csv() const;
    std::string summary() const;
};

/// Payload seed for one cell, derived from the master seed and the cell label.
std::uint64_t grid_cell_seed(std::uint64_t master, const std::string& image,
                             const std::string& method, double fill);

GridResult run_grid(const GridSpec& spec);

}  // namespace anrsteg
