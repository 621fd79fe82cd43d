#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "resmatch/graph.hpp"
#include "resmatch/matching.hpp"
#include "resmatch/rational.hpp"

namespace resmatch {

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

/// Raised by operations that need an exact spectrum when enumeration hit its cap.
class TruncatedSpectrum : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Visits distinct maximum matchings of g in a fixed order: branch on each
/// canonical edge (in before out), pruning a branch once the chosen edges plus
/// the matching number of the still-open edges fall short of nu(g). At most
/// `cap` matchings are visited; returns true when more exist (truncated).
/// Enumeration also stops early, untruncated, when the visitor returns false.
bool for_each_maximum_matching(const Graph& g, std::size_t cap,
                               const std::function<bool(const Matching&)>& visit);

struct EnumerationResult {
  std::vector<Matching> matchings;
  bool truncated = false;
};

EnumerationResult enumerate_maximum_matchings(const Graph& g, std::size_t cap = kDefaultEnumerationCap);

/// The residual spectrum {nu(G - F) : F maximum matching of G}.
struct SpectrumReport {
  int nu = 0;
  int ell = 0;
  int big_l = 0;
  std::set<int> achieved;
  Matching witness_min;
  Matching witness_max;
  std::size_t matchings_enumerated = 0;
  bool truncated = false;
};

SpectrumReport spectrum(const Graph& g, std::size_t cap = kDefaultEnumerationCap);

/// f in |nu(G - F) - k| <= f(|V|). Logarithms are base 2.
struct ToleranceFunction {
  enum class Kind { constant, linear, log, sqrt, identity };

  Kind kind = Kind::identity;
  Rational coefficient = 1;

  static ToleranceFunction identity() { return {Kind::identity, 1}; }
  static ToleranceFunction constant(Rational c) { return {Kind::constant, std::move(c)}; }
  static ToleranceFunction linear(Rational c) { return {Kind::linear, std::move(c)}; }

  /// "identity", "const:C", "linear:p/q", "log[:p/q]", "sqrt[:p/q]".
  static ToleranceFunction parse(std::string_view text);

  /// Exact test of deviation <= f(n) for deviation >= 0.
  bool admits(long long deviation, long long n) const;
  double evaluate(long long n) const;
  std::string describe() const;
};

struct Problem1Result {
  enum class Answer { yes, no, unknown };
  Answer answer = Answer::no;
  std::optional<Matching> witness;
  std::optional<int> witness_residual;
  /// False when the answer was decided without enumerating matchings.
  bool enumerated = false;
  std::size_t matchings_examined = 0;
};

std::string to_string(Problem1Result::Answer a);

/// Is there a maximum matching F with |nu(G - F) - k| <= f(|V|)? Requires
/// 0 <= k <= floor(|V|/2) (std::invalid_argument otherwise). When f(|V|) is at
/// least floor(|V|/2), every instance is a yes and no enumeration happens;
/// this covers f = identity.
Problem1Result decide_problem1(const Graph& g, int k, const ToleranceFunction& f,
                               std::size_t cap = kDefaultEnumerationCap);

struct BoundReport {
  int ell = 0;
  int big_l = 0;
  bool has_perfect_matching = false;
  bool ordered = false;          // ell <= L
  bool within_double = false;    // L <= 2 ell
  bool within_three_halves = false;  // 2L <= 3 ell; only meaningful with a perfect matching
  std::vector<std::string> violations;

  bool holds() const { return violations.empty(); }
};

/// Checks ell <= L <= 2 ell, plus 2L <= 3 ell when g has a perfect matching.
/// Any violation signals an implementation bug. Throws TruncatedSpectrum when
/// the spectrum is not exact.
BoundReport check_bounds(const Graph& g, std::size_t cap = kDefaultEnumerationCap);
BoundReport check_bounds(const SpectrumReport& s, int vertex_count);

struct ApproxTrial {
  std::uint64_t seed = 0;
  int residual = 0;
  std::optional<Rational> ratio_ell;  // residual / ell; absent when ell = 0
  std::optional<Rational> ratio_big_l;  // residual / L; absent when L = 0
};

struct ApproxReport {
  int nu = 0;
  int ell = 0;
  int big_l = 0;
  std::vector<ApproxTrial> trials;
  std::size_t undefined_ratio_trials = 0;
  /// Every defined ratio satisfies 1 <= r_ell <= 2 and 1/2 <= r_L <= 1.
  bool ratios_within = true;
};

/// Runs max_matching once per seed and compares nu(G - F) with ell and L.
/// Throws TruncatedSpectrum when the spectrum is not exact.
ApproxReport approx_trial(const Graph& g, const std::vector<std::uint64_t>& seeds,
                          std::size_t cap = kDefaultEnumerationCap);
ApproxReport approx_trial(const Graph& g, const SpectrumReport& s,
                          const std::vector<std::uint64_t>& seeds);

}  // namespace resmatch
