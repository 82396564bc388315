#include "anrsteg/grid.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <future>
#include <sstream>

namespace anrsteg {

namespace {

std::string fill_label(double fill) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.2f", fill);
    return buf;
}

struct MethodSpec {
    std::string label;
    StegoParams params;
};

std::vector<MethodSpec> grid_methods(const GridSpec& spec) {
    std::vector<MethodSpec> methods;
    for (int k = 1; k <= 3; ++k) {
        StegoParams p;
        p.method = StegoParams::Method::LsbDirect;
        p.k = k;
        p.traversal = spec.traversal;
        p.seed = spec.traversal_seed;
        methods.push_back({std::to_string(k) + "LSB", p});
    }
    StegoParams p;
    p.method = StegoParams::Method::Anr;
    p.system = spec.system;
    p.mode = spec.mode;
    p.traversal = spec.traversal;
    p.seed = spec.traversal_seed;
    methods.push_back({"ANR(" + spec.system + "," + std::string(to_string(spec.mode)) + ")", p});
    return methods;
}

GridCell run_cell(const GridSpec& spec, const std::string& image_name, const GrayImage& cover,
                  const MethodSpec& method, double fill) {
    GridCell cell;
    cell.image = image_name;
    cell.method = method.label;
    cell.fill = fill;
    try {
        StegoParams params = method.params;
        params.fill_fraction = fill;
        std::size_t cap = capacity_bits(cover, params);
        double budget = fill * static_cast<double>(cap);
        if (budget < static_cast<double>(kFrameHeaderBits) + 8.0)
            throw CapacityError("fill budget of " +
                                std::to_string(static_cast<std::size_t>(budget)) +
                                " bits cannot hold a framed payload");
        std::size_t payload_bytes =
            (static_cast<std::size_t>(budget) - kFrameHeaderBits) / 8;
        std::uint64_t cell_seed =
            grid_cell_seed(spec.payload_seed, image_name, method.label, fill);
        std::vector<std::uint8_t> payload = random_payload_bytes(payload_bytes, cell_seed);
        GrayImage stego = embed_payload(cover, payload, params);
        cell.report = analyze(cover, stego, method.label, fill, framed_bits(payload_bytes));
        cell.ok = true;
    } catch (const Error& e) {
        cell.error = e.what();
    }
    return cell;
}

}  // namespace

std::uint64_t grid_cell_seed(std::uint64_t master, const std::string& image,
                             const std::string& method, double fill) {
    std::string tag = image + "|" + method + "|" + fill_label(fill);
    Prng g(master ^ fnv1a64(tag));
    return g.next();
}

GridResult run_grid(const GridSpec& spec) {
    GridResult result;
    result.system = spec.system;
    result.mode = std::string(to_string(spec.mode));
    result.payload_seed = spec.payload_seed;

    std::vector<std::pair<std::string, const GrayImage*>> images;
    images.reserve(spec.images.size());
    for (const auto& [name, img] : spec.images) images.emplace_back(name, &img);
    std::sort(images.begin(), images.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    auto methods = grid_methods(spec);
    struct Job {
        const std::string* image;
        const GrayImage* cover;
        const MethodSpec* method;
        double fill;
    };
    std::vector<Job> jobs;
    for (const auto& [name, img] : images)
        for (const auto& m : methods)
            for (double fill : spec.fills) jobs.push_back({&name, img, &m, fill});

    result.cells.resize(jobs.size());
    int threads = std::max(1, spec.threads);
    if (threads == 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i)
            result.cells[i] =
                run_cell(spec, *jobs[i].image, *jobs[i].cover, *jobs[i].method, jobs[i].fill);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= jobs.size()) return;
                result.cells[i] =
                    run_cell(spec, *jobs[i].image, *jobs[i].cover, *jobs[i].method, jobs[i].fill);
            }
        };
        std::vector<std::future<void>> pool;
        for (int t = 0; t < threads; ++t) pool.push_back(std::async(std::launch::async, worker));
        for (auto& f : pool) f.get();
    }
    return result;
}

std::string GridResult::csv() const {
    std::ostringstream out;
    out << "# prng=splitmix64 seed=" << payload_seed << " system=" << system << " mode=" << mode
        << "\n";
    out << "image," << AnalysisReport::csv_header() << "\n";
    for (const auto& c : cells) {
        if (!c.ok) continue;
        out << c.image << ',' << c.report.csv_row() << '\n';
    }
    return out.str();
}

std::string GridResult::summary() const {
    std::ostringstream out;
    std::size_t ok = 0, failed = 0;
    for (const auto& c : cells) (c.ok ? ok : failed)++;
    out << "grid cells: " << cells.size() << " ok: " << ok << " failed: " << failed << "\n";
    for (const auto& c : cells)
        if (!c.ok)
            out << "  FAILED " << c.image << " " << c.method << " fill " << fill_label(c.fill)
                << ": " << c.error << "\n";
    return out.str();
}

}  // namespace anrsteg
