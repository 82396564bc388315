#include "anrsteg/numsys.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

namespace anrsteg {

namespace {

constexpr int kMaxPlanes = 63;  // rank keys live in a uint64_t

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

std::string_view to_string(RepMode mode) {
    switch (mode) {
        case RepMode::Min: return "min";
        case RepMode::Max: return "max";
        case RepMode::Greedy: return "greedy";
        case RepMode::Zeckendorf: return "zeck";
    }
    return "?";
}

RepMode rep_mode_from_string(std::string_view name) {
    std::string n = lower(name);
    if (n == "min") return RepMode::Min;
    if (n == "max") return RepMode::Max;
    if (n == "greedy") return RepMode::Greedy;
    if (n == "zeck" || n == "zeckendorf") return RepMode::Zeckendorf;
    throw ConfigError("unknown representation mode: " + std::string(name));
}

int Representation::popcount() const { return std::popcount(mask); }

std::string Representation::tuple_string() const {
    std::string s = "(";
    for (int i = 1; i <= planes; ++i) {
        s += bit(i) ? '1' : '0';
        if (i != planes) s += ',';
    }
    s += ')';
    return s;
}

NumberSystem::NumberSystem(SystemKind kind, std::string name, std::vector<int> basis, int target,
                           int fib_p)
    : kind_(kind), name_(std::move(name)), basis_(std::move(basis)), target_(target),
      fib_p_(fib_p) {
    if (basis_.empty()) throw ConfigError("number system needs a non-empty basis");
    if (static_cast<int>(basis_.size()) > kMaxPlanes)
        throw ConfigError("basis too long: at most 63 planes supported");
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (basis_[i] <= 0) throw ConfigError("basis weights must be positive");
        if (i > 0 && basis_[i] <= basis_[i - 1])
            throw ConfigError("basis must be strictly increasing (index " + std::to_string(i + 1) +
                              ")");
    }
    if (target_ <= 0) throw ConfigError("target sum must be positive");
    basis_sum_ = std::accumulate(basis_.begin(), basis_.end(), 0);
}

std::vector<long long> fib_pcode(int p, int count) {
    if (p < 0) throw ConfigError("fibonacci p must be non-negative");
    if (count < 1) throw ConfigError("fib_pcode needs count >= 1");
    std::vector<long long> f(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        if (i == 0) {
            f[0] = 1;
        } else {
            long long prev = f[static_cast<std::size_t>(i) - 1];
            long long back = (i - p - 1 >= 0) ? f[static_cast<std::size_t>(i - p - 1)] : 0;
            f[static_cast<std::size_t>(i)] = prev + back;
        }
    }
    return f;
}

std::vector<int> concatenate_basis(const std::vector<long long>& raw, int target) {
    if (target < 1) throw ConfigError("target must be positive");
    std::vector<int> basis;
    long long sum = 0;
    for (long long x : raw) {
        if (x <= 0) throw ConfigError("sequence values must be positive");
        if (!basis.empty() && x <= basis.back()) continue;  // drop duplicates
        basis.push_back(static_cast<int>(x));
        sum += x;
        if (sum >= target) return basis;
    }
    throw ConfigError("sequence too short: cumulative sum " + std::to_string(sum) +
                      " never reaches target " + std::to_string(target));
}

NumberSystem NumberSystem::binary(int target) {
    std::vector<long long> raw = fib_pcode(0, 32);
    return NumberSystem(SystemKind::Binary, "Binary", concatenate_basis(raw, target), target, 0);
}

NumberSystem NumberSystem::fibonacci_p(int p, int target) {
    // Grow the raw sequence until the deduplicated prefix can reach the target.
    int count = 16;
    for (;;) {
        std::vector<long long> raw = fib_pcode(p, count);
        try {
            std::vector<int> basis = concatenate_basis(raw, target);
            if (p == 0)
                return NumberSystem(SystemKind::Binary, "Binary", std::move(basis), target, 0);
            return NumberSystem(SystemKind::FibonacciP, "FibP" + std::to_string(p),
                                std::move(basis), target, p);
        } catch (const ConfigError&) {
            if (count > 4096) throw;
            count *= 2;
        }
    }
}

NumberSystem NumberSystem::anr(std::string label, std::vector<int> basis, int target) {
    return NumberSystem(SystemKind::Anr, std::move(label), std::move(basis), target, -1);
}

const std::vector<std::string>& NumberSystem::builtin_names() {
    static const std::vector<std::string> names = {"Binary", "FibP1", "FibP2", "S1", "S2", "S3"};
    return names;
}

const NumberSystem& NumberSystem::builtin(std::string_view name) {
    static const std::map<std::string, NumberSystem> registry = [] {
        std::map<std::string, NumberSystem> r;
        r.emplace("binary", NumberSystem::binary());
        r.emplace("fibp1", NumberSystem::fibonacci_p(1));
        r.emplace("fibp2", NumberSystem::fibonacci_p(2));
        r.emplace("s1", NumberSystem::anr("S1", {1, 2, 3, 4, 6, 10, 14, 17, 23, 31, 42, 47, 55}));
        r.emplace("s2", NumberSystem::anr("S2", {1, 2, 3, 4, 5, 6, 7, 8, 15, 36, 43, 57, 68}));
        r.emplace("s3", NumberSystem::anr("S3", {1, 2, 3, 7, 11, 13, 17, 21, 23, 27, 31, 41, 58}));
        return r;
    }();
    auto it = registry.find(lower(name));
    if (it == registry.end()) throw ConfigError("unknown number system: " + std::string(name));
    return it->second;
}

NumberSystem NumberSystem::from_config(std::string_view line) {
    // Bare built-in name?
    {
        bool bare = !line.empty() && line.find('=') == std::string_view::npos;
        if (bare) return builtin(line);
    }
    std::map<std::string, std::string> kv;
    std::istringstream in{std::string(line)};
    std::string tok;
    while (in >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw ConfigError("bad config token: " + tok);
        kv[lower(tok.substr(0, eq))] = tok.substr(eq + 1);
    }
    int target = 255;
    if (auto it = kv.find("n"); it != kv.end()) target = std::stoi(it->second);
    auto kind = kv.find("kind");
    if (kind == kv.end()) throw ConfigError("config line needs kind=");
    std::string k = lower(kind->second);
    if (k == "binary") return binary(target);
    if (k == "fibp" || k == "fibonacci") {
        auto p = kv.find("p");
        if (p == kv.end()) throw ConfigError("kind=fibp needs p=");
        return fibonacci_p(std::stoi(p->second), target);
    }
    if (k == "anr") {
        auto b = kv.find("basis");
        if (b == kv.end()) throw ConfigError("kind=anr needs basis=");
        std::vector<int> basis;
        std::istringstream bs(b->second);
        std::string num;
        while (std::getline(bs, num, ',')) basis.push_back(std::stoi(num));
        std::string label = kv.count("label") ? kv["label"] : "anr";
        return anr(label, std::move(basis), target);
    }
    throw ConfigError("unknown kind: " + kind->second);
}

std::string NumberSystem::config_line() const {
    std::ostringstream out;
    switch (kind_) {
        case SystemKind::Binary:
            out << "kind=binary";
            break;
        case SystemKind::FibonacciP:
            out << "kind=fibp p=" << fib_p_;
            break;
        case SystemKind::Anr: {
            out << "kind=anr label=" << name_ << " basis=";
            for (std::size_t i = 0; i < basis_.size(); ++i) {
                if (i) out << ',';
                out << basis_[i];
            }
            break;
        }
    }
    out << " n=" << target_;
    return out.str();
}

namespace {

void check_range(const NumberSystem& ns, int v) {
    if (v < 0 || v > ns.target_sum())
        throw RangeError("value " + std::to_string(v) + " outside [0, " +
                         std::to_string(ns.target_sum()) + "]");
}

// DFS from the highest plane down, zero branch first, so masks come out in
// ascending rank-key order. Suffix sums prune impossible branches.
template <typename Fn>
void walk_subsets(const std::vector<int>& basis, int v, Fn&& emit) {
    int n = static_cast<int>(basis.size());
    std::vector<long long> prefix(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i) prefix[static_cast<std::size_t>(i) + 1] = prefix[static_cast<std::size_t>(i)] + basis[static_cast<std::size_t>(i)];
    // iterative DFS; state: plane index (counting down), remaining value, mask
    struct Frame {
        int plane;
        int rem;
        std::uint64_t mask;
        int stage;  // 0: try zero-branch, 1: try one-branch
    };
    std::vector<Frame> stack;
    stack.push_back({n, v, 0, 0});
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.plane == 0) {
            if (f.rem == 0) emit(f.mask);
            stack.pop_back();
            continue;
        }
        if (f.rem < 0 || f.rem > prefix[static_cast<std::size_t>(f.plane)]) {
            stack.pop_back();
            continue;
        }
        int w = basis[static_cast<std::size_t>(f.plane) - 1];
        if (f.stage == 0) {
            f.stage = 1;
            stack.push_back({f.plane - 1, f.rem, f.mask, 0});
        } else if (f.stage == 1 && w <= f.rem) {
            std::uint64_t m = f.mask | (1ull << (f.plane - 1));
            int rem = f.rem - w;
            f.stage = 2;
            stack.push_back({f.plane - 1, rem, m, 0});
        } else {
            stack.pop_back();
        }
    }
}

// Reachability of each sum using planes 1..i only; row i is a bitset over sums.
std::vector<std::vector<bool>> reachable_prefix(const NumberSystem& ns) {
    int n = ns.plane_count();
    int total = ns.basis_sum();
    std::vector<std::vector<bool>> reach(static_cast<std::size_t>(n) + 1,
                                         std::vector<bool>(static_cast<std::size_t>(total) + 1, false));
    reach[0][0] = true;
    for (int i = 1; i <= n; ++i) {
        int w = ns.weight(i);
        auto& cur = reach[static_cast<std::size_t>(i)];
        auto& prev = reach[static_cast<std::size_t>(i) - 1];
        for (int s = 0; s <= total; ++s) cur[static_cast<std::size_t>(s)] = prev[static_cast<std::size_t>(s)] || (s >= w && prev[static_cast<std::size_t>(s - w)]);
    }
    return reach;
}

}  // namespace

std::vector<Representation> enumerate_representations(const NumberSystem& ns, int v) {
    check_range(ns, v);
    std::vector<Representation> out;
    walk_subsets(ns.basis(), v,
                 [&](std::uint64_t mask) { out.push_back({mask, ns.plane_count()}); });
    return out;
}

long long count_representations(const NumberSystem& ns, int v) {
    check_range(ns, v);
    long long count = 0;
    walk_subsets(ns.basis(), v, [&](std::uint64_t) { ++count; });
    return count;
}

Representation select_representation(const NumberSystem& ns, int v, RepMode mode) {
    check_range(ns, v);
    if (mode != RepMode::Min && mode != RepMode::Max)
        throw ConfigError("select_representation takes Min or Max");
    // Lexicographic walk from the top plane; a prefix-reachability table tells
    // whether the remainder can still be finished below.
    static thread_local std::vector<int> cached_basis;
    static thread_local std::vector<std::vector<bool>> cached_reach;
    if (cached_basis != ns.basis()) {
        cached_reach = reachable_prefix(ns);
        cached_basis = ns.basis();
    }
    const auto& reach = cached_reach;
    std::uint64_t mask = 0;
    int rem = v;
    for (int i = ns.plane_count(); i >= 1; --i) {
        int w = ns.weight(i);
        bool can_zero = reach[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(rem)];
        bool can_one = rem >= w && reach[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(rem - w)];
        bool take;
        if (mode == RepMode::Max)
            take = can_one;
        else
            take = !can_zero;
        if (take) {
            if (!can_one)
                throw IntegrityError("unrepresentable value " + std::to_string(v));
            mask |= 1ull << (i - 1);
            rem -= w;
        } else if (!can_zero) {
            throw IntegrityError("unrepresentable value " + std::to_string(v));
        }
    }
    return {mask, ns.plane_count()};
}

Representation greedy_representation(const NumberSystem& ns, int v) {
    check_range(ns, v);
    std::uint64_t mask = 0;
    int rem = v;
    for (int i = ns.plane_count(); i >= 1; --i) {
        if (ns.weight(i) <= rem) {
            mask |= 1ull << (i - 1);
            rem -= ns.weight(i);
        }
    }
    if (rem != 0)
        throw RangeError("greedy reduction stranded remainder " + std::to_string(rem) +
                         " for value " + std::to_string(v));
    return {mask, ns.plane_count()};
}

Representation zeckendorf_representation(const NumberSystem& ns, int v) {
    if (ns.kind() != SystemKind::FibonacciP)
        throw ConfigError("zeckendorf representation needs a Fibonacci p-code system");
    check_range(ns, v);
    std::uint64_t best = 0;
    bool found = false;
    walk_subsets(ns.basis(), v, [&](std::uint64_t mask) {
        if ((mask & (mask << 1)) != 0) return;  // consecutive planes
        if (!found || mask > best) best = mask;
        found = true;
    });
    if (!found)
        throw RangeError("no representation of " + std::to_string(v) +
                         " satisfies the no-consecutive-planes constraint");
    return {best, ns.plane_count()};
}

int compose(const NumberSystem& ns, const Representation& rep) {
    if (rep.planes != ns.plane_count())
        throw ConfigError("representation length does not match the system");
    long long sum = 0;
    for (int i = 1; i <= rep.planes; ++i)
        if (rep.bit(i)) sum += ns.weight(i);
    return static_cast<int>(sum);
}

Representation canonical_representation(const NumberSystem& ns, int v, RepMode mode) {
    switch (mode) {
        case RepMode::Min:
        case RepMode::Max:
            return select_representation(ns, v, mode);
        case RepMode::Greedy:
            try {
                return greedy_representation(ns, v);
            } catch (const RangeError&) {
                return select_representation(ns, v, RepMode::Max);
            }
        case RepMode::Zeckendorf:
            try {
                return zeckendorf_representation(ns, v);
            } catch (const RangeError&) {
                return select_representation(ns, v, RepMode::Max);
            }
    }
    throw ConfigError("bad mode");
}

bool mode_compatible(const NumberSystem& ns, RepMode mode) {
    if (mode == RepMode::Zeckendorf) return ns.kind() == SystemKind::FibonacciP;
    return true;
}

AnrValidationReport validate_anr(const std::vector<int>& candidate, int N) {
    if (candidate.empty()) throw ConfigError("candidate set is empty");
    for (std::size_t i = 0; i < candidate.size(); ++i) {
        if (candidate[i] <= 0)
            throw ConfigError("non-positive weight at index " + std::to_string(i + 1));
        if (i > 0 && candidate[i] <= candidate[i - 1])
            throw ConfigError("not strictly increasing at index " + std::to_string(i + 1));
    }
    AnrValidationReport rep;
    rep.monotone = {true, "strictly increasing"};

    NumberSystem ns = NumberSystem::anr("candidate", candidate, std::max(N, 1));
    long long sum = ns.basis_sum();
    if (sum != N) {
        rep.complete = {false, "weights sum to " + std::to_string(sum) + ", not " +
                                   std::to_string(N)};
    } else {
        rep.complete = {true, "covers [0, " + std::to_string(N) + "]"};
    }
    bool redundant = false;
    int redundant_witness = -1;
    for (int v = 0; v <= N && v <= ns.basis_sum(); ++v) {
        long long c = count_representations(ns, v);
        if (c == 0) {
            if (rep.complete.pass)
                rep.complete = {false, "value " + std::to_string(v) + " unrepresentable"};
            continue;
        }
        if (c >= 2 && !redundant) {
            redundant = true;
            redundant_witness = v;
        }
    }
    rep.redundant =
        redundant
            ? PropertyResult{true, "value " + std::to_string(redundant_witness) +
                                       " has multiple representations"}
            : PropertyResult{false, "every representable value has a single representation"};

    bool min_ok = true, max_ok = true;
    std::string min_w = "canonical minimum defined for every value";
    std::string max_w = "canonical maximum defined for every value";
    for (int v = 0; v <= N; ++v) {
        if (v > ns.basis_sum() || count_representations(ns, v) == 0) {
            if (min_ok) min_w = "value " + std::to_string(v) + " has no representation";
            if (max_ok) max_w = min_w;
            min_ok = max_ok = false;
            break;
        }
        Representation lo = select_representation(ns, v, RepMode::Min);
        Representation hi = select_representation(ns, v, RepMode::Max);
        if (compose(ns, lo) != v || compose(ns, hi) != v) {
            min_w = max_w = "selection failed to recompose " + std::to_string(v);
            min_ok = max_ok = false;
            break;
        }
    }
    rep.unique_min = {min_ok, min_w};
    rep.unique_max = {max_ok, max_w};
    return rep;
}

}  // namespace anrsteg
