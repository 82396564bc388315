#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "anrsteg/image.hpp"

namespace anrsteg {

// ---------------------------------------------------------------------------
// Stego Sensitivity Measure
//
// The image is tiled into non-overlapping m_b x n_b blocks. Per block, beta
// counts the neighbors of the center pixel within +-A of it and
// gamma_b = beta / (m_b*n_b - 1); Gamma is the mean of gamma_b.
//
// The 0-100 score is the pairs-of-values deviation profile over the same
// blocks: a neighbor differing from the center by exactly 1 either stays
// inside the center's two-value LSB pair (floor(v/2) equal) or crosses into
// the next pair. Clean images produce both kinds in balance; overwriting
// binary plane 1 confines the +-1 texture to pair interiors. A block flags
// as stego-like when within-pair excess w-x exceeds the flag threshold and
// counter-flags on the mirror image; the score is
//   100 * max(0, flagged - counterflagged) / blocks,
// which stays near 0 for balanced images regardless of content.
// ---------------------------------------------------------------------------

struct SsmParams {
    int block_w = 3;        // n_b, odd >= 3
    int block_h = 3;        // m_b, odd >= 3
    int threshold = 1;      // A, similarity threshold of the analyzed plane
    int flag_threshold = 1; // block flags when |w - x| exceeds this
};

struct SsmResult {
    double gamma = 0.0;        // mean gamma_b in [0, 1]
    double score = 0.0;        // 0-100 deviation score
    std::size_t blocks = 0;
    std::size_t flagged = 0;
    std::size_t counterflagged = 0;
};

SsmResult ssm(const GrayImage& img, const SsmParams& params = {});

enum class SsmClass { Clean, Suspicious, Stego };

/// < 5 clean, 5..10 suspicious, > 10 stego.
SsmClass classify_ssm(double score);
std::string_view to_string(SsmClass c);

// ---------------------------------------------------------------------------
// Fidelity metrics
// ---------------------------------------------------------------------------

double mse(const GrayImage& a, const GrayImage& b);

/// 10*log10(255^2 / MSE); +infinity when MSE is zero.
double psnr(const GrayImage& a, const GrayImage& b);

struct SsimParams {
    int window = 8;     // sliding, stride 1
    double k1 = 0.02;
    double k2 = 0.03;
    double L = 255.0;
};

double ssim(const GrayImage& a, const GrayImage& b, const SsimParams& params = {});

// ---------------------------------------------------------------------------
// Chi-square pairs-of-values attack
// ---------------------------------------------------------------------------

struct ChiSquareResult {
    double chi2 = 0.0;
    double p_detect = 0.0;  // upper-tail probability that the pairs are equalized
    int dof = 0;
};

/// Pairs-of-values test over histogram bins (h[2i], h[2i+1]):
/// chi2 = sum (h[2i] - m_i)^2 / m_i with m_i the pair mean, empty pairs
/// skipped; p_detect = Q(chi2; dof), the complement of the lower-tail CDF.
ChiSquareResult chi_square_attack(const GrayImage& img);

// ---------------------------------------------------------------------------
// Histograms and difference images
// ---------------------------------------------------------------------------

using Histogram = std::array<std::uint64_t, 256>;

Histogram histogram(const GrayImage& img);

/// Fraction of pixel mass that moved between the two histograms, as a percent:
/// 100 * (sum |h1 - h2| / 2) / npixels. Non-negative by construction.
double histogram_pct_diff(const Histogram& cover, const Histogram& stego, std::size_t npixels);

struct DifferenceMap {
    GrayImage map;          // 255 where the images differ
    double changed_fraction = 0.0;
};

DifferenceMap difference_map(const GrayImage& cover, const GrayImage& stego);

// ---------------------------------------------------------------------------
// Report row (Table-style schema)
// ---------------------------------------------------------------------------

struct AnalysisReport {
    std::string method;        // e.g. "1LSB", "ANR(S1,max)"
    double fill = 1.0;
    std::size_t total_bits = 0;
    double ssm_score = 0.0;
    double ssim_value = 0.0;
    double psnr_db = 0.0;      // +infinity when the images are identical
    double mse_value = 0.0;
    double chi2 = 0.0;
    double pct_diff = 0.0;     // signed percent change of chi2 vs the cover:
                               // 100 * (chi2_stego - chi2_cover) / chi2_stego
    double p_detect = 0.0;
    double changed_fraction = 0.0;
    std::string prng = "splitmix64";

    static const char* csv_header();  // method,fill,total_bits,ssm,ssim,psnr,chi2,pct_diff,p_detect
    std::string csv_row() const;
    std::string json() const;
};

/// Compare a stego image against its cover and fill a report row.
AnalysisReport analyze(const GrayImage& cover, const GrayImage& stego,
                       const std::string& method = "", double fill = 1.0,
                       std::size_t total_bits = 0);

/// Upper regularized incomplete gamma Q(a, x); the chi-square upper tail is
/// Q(dof/2, chi2/2). Exposed for tests.
double gamma_q(double a, double x);

}  // namespace anrsteg
