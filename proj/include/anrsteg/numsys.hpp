#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "anrsteg/error.hpp"

namespace anrsteg {

enum class SystemKind { Binary, FibonacciP, Anr };

/// How a canonical representation is chosen from the redundant set.
enum class RepMode { Min, Max, Greedy, Zeckendorf };

std::string_view to_string(RepMode mode);
RepMode rep_mode_from_string(std::string_view name);

class NumberSystem;

/// A 0/1 coefficient vector over a number-system basis, packed into a mask:
/// bit i-1 is the coefficient of plane i (plane 1 = lowest weight). Read as an
/// integer the mask doubles as the rank key that totally orders the
/// representations of a value, so Min/Max selection is plain mask comparison.
struct Representation {
    std::uint64_t mask = 0;
    int planes = 0;

    bool bit(int plane) const { return (mask >> (plane - 1)) & 1u; }
    int popcount() const;
    std::string tuple_string() const;  // "(1,0,0,...,1)"
    bool operator==(const Representation&) const = default;
};

/// An ordered basis of positive integer weights together with the target sum N.
/// Instances are immutable after construction and freely shareable.
class NumberSystem {
  public:
    static NumberSystem binary(int target = 255);
    static NumberSystem fibonacci_p(int p, int target = 255);
    static NumberSystem anr(std::string label, std::vector<int> basis, int target = 255);

    /// Built-ins: Binary, FibP1, FibP2, S1, S2, S3 (case-insensitive).
    static const NumberSystem& builtin(std::string_view name);
    static const std::vector<std::string>& builtin_names();

    /// Parse a config line, e.g.
    ///   kind=anr label=S1 basis=1,2,3,4,6,10,14,17,23,31,42,47,55 n=255
    ///   kind=fibp p=1 n=255
    ///   kind=binary
    /// or a bare built-in name.
    static NumberSystem from_config(std::string_view line);

    SystemKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    int fib_p() const { return fib_p_; }
    int plane_count() const { return static_cast<int>(basis_.size()); }
    int weight(int plane) const { return basis_[static_cast<std::size_t>(plane) - 1]; }
    const std::vector<int>& basis() const { return basis_; }
    int target_sum() const { return target_; }
    int basis_sum() const { return basis_sum_; }
    std::string config_line() const;

    bool operator==(const NumberSystem& o) const {
        return kind_ == o.kind_ && basis_ == o.basis_ && target_ == o.target_;
    }

  private:
    NumberSystem(SystemKind kind, std::string name, std::vector<int> basis, int target, int fib_p);

    SystemKind kind_;
    std::string name_;
    std::vector<int> basis_;
    int target_ = 0;
    int basis_sum_ = 0;
    int fib_p_ = -1;
};

/// First `count` values of the Fibonacci p-code recursion
/// F(i) = F(i-1) + F(i-p-1), F(0) = 1, F(i<0) = 0, starting at F(0).
std::vector<long long> fib_pcode(int p, int count);

/// Deduplicate an ascending sequence and truncate it to the minimal prefix
/// whose cumulative sum reaches `target`. Throws ConfigError (naming the
/// achieved sum) when the sequence cannot reach it.
std::vector<int> concatenate_basis(const std::vector<long long>& raw, int target);

/// Per-property outcome of the redundant-set validation.
struct PropertyResult {
    bool pass = false;
    std::string detail;  // witness for failures, short note otherwise
};

struct AnrValidationReport {
    PropertyResult monotone;    // I: strictly increasing weights
    PropertyResult complete;    // II: sum == N and every value in [0,N] representable
    PropertyResult redundant;   // III: some value has at least two representations
    PropertyResult unique_min;  // IV: a unique minimum exists for every value
    PropertyResult unique_max;  // V: a unique maximum exists for every value
    bool pass() const {
        return monotone.pass && complete.pass && redundant.pass && unique_min.pass &&
               unique_max.pass;
    }
};

/// Check Properties I-V for a candidate weight set against target N.
/// Non-monotonic or non-positive input is a precondition violation and throws
/// ConfigError naming the offending index.
AnrValidationReport validate_anr(const std::vector<int>& candidate, int N);

/// All subsets of the basis summing to v, in ascending rank-key order.
std::vector<Representation> enumerate_representations(const NumberSystem& ns, int v);

/// Number of representations of v (same enumeration, counted without storing).
long long count_representations(const NumberSystem& ns, int v);

/// The unique representation of v whose rank key is minimal (Min) or maximal
/// (Max) over the complete enumeration. Throws RangeError for v outside [0,N].
Representation select_representation(const NumberSystem& ns, int v, RepMode mode);

/// Euclidean reduction: repeatedly take the largest unused weight <= remainder.
/// Throws RangeError when the greedy path strands a nonzero remainder (callers
/// fall back to select_representation).
Representation greedy_representation(const NumberSystem& ns, int v);

/// The representation with no two consecutive planes set. Fibonacci kinds only.
/// Unique for p=1 wherever it exists; when several qualify (possible for p>=2)
/// the highest-ranked one is returned. Throws RangeError when no representation
/// satisfies the constraint (possible for concatenated/truncated bases).
Representation zeckendorf_representation(const NumberSystem& ns, int v);

/// Sum of basis weights selected by the representation.
int compose(const NumberSystem& ns, const Representation& rep);

/// Canonical representation for decomposition/coding, total over [0, N]:
/// Min/Max select directly; Greedy falls back to Max on a stranded remainder;
/// Zeckendorf falls back to Max where the constraint is unsatisfiable.
Representation canonical_representation(const NumberSystem& ns, int v, RepMode mode);

/// Whether the mode may be used with this system (Zeckendorf needs a Fibonacci
/// kind; everything else is unrestricted).
bool mode_compatible(const NumberSystem& ns, RepMode mode);

}  // namespace anrsteg
