#include "anrsteg/steganalysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <vector>

namespace anrsteg {

SsmResult ssm(const GrayImage& img, const SsmParams& params) {
    int bw = params.block_w, bh = params.block_h;
    if (bw < 3 || bh < 3 || bw % 2 == 0 || bh % 2 == 0)
        throw ConfigError("block dimensions must be odd and at least 3");
    if (params.threshold < 0) throw ConfigError("threshold must be non-negative");
    if (img.width < bw || img.height < bh)
        throw RangeError("image smaller than the analysis block");

    int bx = img.width / bw, by = img.height / bh;  // partial edge blocks ignored
    int cx = bw / 2, cy = bh / 2;
    std::size_t flagged = 0, counter = 0;
    double gamma_sum = 0.0;
    int neighbors = bw * bh - 1;
    for (int byi = 0; byi < by; ++byi) {
        for (int bxi = 0; bxi < bx; ++bxi) {
            int x0 = bxi * bw, y0 = byi * bh;
            int c = img.at(x0 + cx, y0 + cy);
            int beta = 0, within = 0, cross = 0;
            for (int dy = 0; dy < bh; ++dy) {
                for (int dx = 0; dx < bw; ++dx) {
                    if (dx == cx && dy == cy) continue;
                    int n = img.at(x0 + dx, y0 + dy);
                    int d = n - c;
                    if (std::abs(d) <= params.threshold) ++beta;
                    if (std::abs(d) == 1) {
                        if ((n >> 1) == (c >> 1))
                            ++within;
                        else
                            ++cross;
                    }
                }
            }
            gamma_sum += static_cast<double>(beta) / neighbors;
            int dev = within - cross;
            if (dev > params.flag_threshold)
                ++flagged;
            else if (dev < -params.flag_threshold)
                ++counter;
        }
    }
    SsmResult r;
    r.blocks = static_cast<std::size_t>(bx) * static_cast<std::size_t>(by);
    if (r.blocks == 0) throw RangeError("image smaller than the analysis block");
    r.gamma = gamma_sum / static_cast<double>(r.blocks);
    r.flagged = flagged;
    r.counterflagged = counter;
    double excess = static_cast<double>(flagged) - static_cast<double>(counter);
    r.score = 100.0 * std::max(0.0, excess) / static_cast<double>(r.blocks);
    return r;
}

SsmClass classify_ssm(double score) {
    if (score < 0) throw RangeError("SSM score cannot be negative");
    if (score < 5.0) return SsmClass::Clean;
    if (score <= 10.0) return SsmClass::Suspicious;
    return SsmClass::Stego;
}

std::string_view to_string(SsmClass c) {
    switch (c) {
        case SsmClass::Clean: return "clean";
        case SsmClass::Suspicious: return "suspicious";
        case SsmClass::Stego: return "stego";
    }
    return "?";
}

double mse(const GrayImage& a, const GrayImage& b) {
    if (!a.same_dims(b)) throw RangeError("image dimensions differ");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = static_cast<double>(a.pixels[i]) - static_cast<double>(b.pixels[i]);
        acc += d * d;
    }
    return acc / static_cast<double>(a.size());
}

double psnr(const GrayImage& a, const GrayImage& b) {
    double m = mse(a, b);
    if (m == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / m);
}

double ssim(const GrayImage& a, const GrayImage& b, const SsimParams& params) {
    if (!a.same_dims(b)) throw RangeError("image dimensions differ");
    int win = params.window;
    if (win < 1 || win > a.width || win > a.height)
        throw RangeError("SSIM window does not fit the image");
    double c1 = (params.k1 * params.L) * (params.k1 * params.L);
    double c2 = (params.k2 * params.L) * (params.k2 * params.L);

    // summed-area tables make each sliding window O(1)
    int w = a.width, h = a.height;
    std::size_t stride = static_cast<std::size_t>(w) + 1;
    std::vector<double> sa(stride * (static_cast<std::size_t>(h) + 1), 0.0), sb = sa, saa = sa,
                        sbb = sa, sab = sa;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::size_t idx = static_cast<std::size_t>(y + 1) * stride + static_cast<std::size_t>(x + 1);
            std::size_t up = idx - stride, left = idx - 1, diag = up - 1;
            double va = a.at(x, y), vb = b.at(x, y);
            sa[idx] = va + sa[up] + sa[left] - sa[diag];
            sb[idx] = vb + sb[up] + sb[left] - sb[diag];
            saa[idx] = va * va + saa[up] + saa[left] - saa[diag];
            sbb[idx] = vb * vb + sbb[up] + sbb[left] - sbb[diag];
            sab[idx] = va * vb + sab[up] + sab[left] - sab[diag];
        }
    }
    auto window_sum = [&](const std::vector<double>& s, int x, int y) {
        std::size_t x0 = static_cast<std::size_t>(x), y0 = static_cast<std::size_t>(y);
        std::size_t x1 = x0 + static_cast<std::size_t>(win), y1 = y0 + static_cast<std::size_t>(win);
        return s[y1 * stride + x1] - s[y0 * stride + x1] - s[y1 * stride + x0] +
               s[y0 * stride + x0];
    };
    double n = static_cast<double>(win) * win;
    double acc = 0.0;
    std::size_t count = 0;
    for (int y = 0; y + win <= h; ++y) {
        for (int x = 0; x + win <= w; ++x) {
            double mua = window_sum(sa, x, y) / n;
            double mub = window_sum(sb, x, y) / n;
            double vara = window_sum(saa, x, y) / n - mua * mua;
            double varb = window_sum(sbb, x, y) / n - mub * mub;
            double cov = window_sum(sab, x, y) / n - mua * mub;
            double num = (2.0 * mua * mub + c1) * (2.0 * cov + c2);
            double den = (mua * mua + mub * mub + c1) * (vara + varb + c2);
            acc += num / den;
            ++count;
        }
    }
    return acc / static_cast<double>(count);
}

namespace {

// Regularized incomplete gamma via series / continued fraction (the usual
// split at x < a+1). Accurate enough at both tails for p-values.
double gamma_p_series(double a, double x) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, hfrac = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        hfrac *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * hfrac;
}

}  // namespace

double gamma_q(double a, double x) {
    if (x < 0.0 || a < 0.0) throw RangeError("gamma_q needs non-negative arguments");
    if (x == 0.0) return 1.0;
    if (a == 0.0) return 0.0;
    double lg = -x + a * std::log(x) - std::lgamma(a);
    if (lg < -745.0) return x > a ? 0.0 : 1.0;  // under/overflow guard
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_contfrac(a, x);
}

ChiSquareResult chi_square_attack(const GrayImage& img) {
    Histogram h = histogram(img);
    double chi2 = 0.0;
    int bins = 0;
    for (int i = 0; i < 128; ++i) {
        double even = static_cast<double>(h[static_cast<std::size_t>(2 * i)]);
        double odd = static_cast<double>(h[static_cast<std::size_t>(2 * i + 1)]);
        double m = (even + odd) / 2.0;
        if (m <= 0.0) continue;
        double d = even - m;
        chi2 += d * d / m;
        ++bins;
    }
    ChiSquareResult r;
    r.chi2 = chi2;
    r.dof = bins - 1;
    if (chi2 == 0.0)
        r.p_detect = 1.0;  // perfectly equalized pairs
    else if (r.dof <= 0)
        r.p_detect = 0.0;
    else
        r.p_detect = std::clamp(gamma_q(static_cast<double>(r.dof) / 2.0, chi2 / 2.0), 0.0, 1.0);
    return r;
}

Histogram histogram(const GrayImage& img) {
    Histogram h{};
    for (std::uint8_t v : img.pixels) ++h[v];
    return h;
}

double histogram_pct_diff(const Histogram& cover, const Histogram& stego, std::size_t npixels) {
    if (npixels == 0) throw RangeError("empty image");
    std::uint64_t moved2 = 0;
    for (std::size_t i = 0; i < cover.size(); ++i) {
        std::uint64_t a = cover[i], b = stego[i];
        moved2 += a > b ? a - b : b - a;
    }
    return 100.0 * (static_cast<double>(moved2) / 2.0) / static_cast<double>(npixels);
}

DifferenceMap difference_map(const GrayImage& cover, const GrayImage& stego) {
    if (!cover.same_dims(stego)) throw RangeError("image dimensions differ");
    DifferenceMap d;
    d.map = GrayImage(cover.width, cover.height);
    std::size_t changed = 0;
    for (std::size_t i = 0; i < cover.size(); ++i) {
        if (cover.pixels[i] != stego.pixels[i]) {
            d.map.pixels[i] = 255;
            ++changed;
        }
    }
    d.changed_fraction = static_cast<double>(changed) / static_cast<double>(cover.size());
    return d;
}

const char* AnalysisReport::csv_header() {
    return "method,fill,total_bits,ssm,ssim,psnr,chi2,pct_diff,p_detect";
}

namespace {

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string psnr_text(double v) {
    return std::isinf(v) ? std::string("inf") : fmt("%.2f", v);
}

}  // namespace

std::string AnalysisReport::csv_row() const {
    std::ostringstream out;
    out << method << ',' << fmt("%.2f", fill) << ',' << total_bits << ',' << fmt("%.2f", ssm_score)
        << ',' << fmt("%.4f", ssim_value) << ',' << psnr_text(psnr_db) << ','
        << fmt("%.2f", chi2) << ',' << fmt("%.2f", pct_diff) << ',' << fmt("%.4f", p_detect);
    return out.str();
}

std::string AnalysisReport::json() const {
    std::ostringstream out;
    out << "{\"method\":\"" << method << "\",\"fill\":" << fmt("%.2f", fill)
        << ",\"total_bits\":" << total_bits << ",\"ssm\":" << fmt("%.4f", ssm_score)
        << ",\"ssm_class\":\"" << to_string(classify_ssm(ssm_score)) << "\""
        << ",\"ssim\":" << fmt("%.6f", ssim_value)
        << ",\"psnr\":" << (std::isinf(psnr_db) ? "null" : fmt("%.4f", psnr_db))
        << ",\"mse\":" << fmt("%.6f", mse_value) << ",\"chi2\":" << fmt("%.4f", chi2)
        << ",\"pct_diff\":" << fmt("%.4f", pct_diff) << ",\"p_detect\":" << fmt("%.6f", p_detect)
        << ",\"changed_fraction\":" << fmt("%.6f", changed_fraction) << ",\"prng\":\"" << prng
        << "\"}";
    return out.str();
}

AnalysisReport analyze(const GrayImage& cover, const GrayImage& stego, const std::string& method,
                       double fill, std::size_t total_bits) {
    if (!cover.same_dims(stego)) throw RangeError("image dimensions differ");
    AnalysisReport r;
    r.method = method.empty() ? "unknown" : method;
    r.fill = fill;
    r.total_bits = total_bits;
    r.ssm_score = ssm(stego).score;
    r.ssim_value = ssim(cover, stego);
    r.mse_value = mse(cover, stego);
    r.psnr_db = psnr(cover, stego);
    ChiSquareResult cs = chi_square_attack(stego);
    ChiSquareResult cc = chi_square_attack(cover);
    r.chi2 = cs.chi2;
    r.p_detect = cs.p_detect;
    // Table-style %Diff: signed percent change of chi2 relative to the stego value
    r.pct_diff = cs.chi2 != 0.0 ? 100.0 * (cs.chi2 - cc.chi2) / cs.chi2 : 0.0;
    r.changed_fraction = difference_map(cover, stego).changed_fraction;
    return r;
}

}  // namespace anrsteg
