#include "resmatch/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace resmatch {

namespace {

int matching_number_of(int vertex_count, const std::vector<std::pair<int, int>>& pairs) {
  if (pairs.empty()) return 0;
  return nu(build_graph(vertex_count, pairs).graph);
}

class MaximumMatchingEnumerator {
 public:
  MaximumMatchingEnumerator(const Graph& g, std::size_t cap,
                            const std::function<bool(const Matching&)>& visit)
      : g_(g),
        edges_(g.edges()),
        target_(static_cast<std::size_t>(nu(g))),
        cap_(cap),
        visit_(visit),
        covered_(static_cast<std::size_t>(g.vertex_count()) + 1, 0) {}

  bool run() {
    descend(0, true);
    return truncated_;
  }

 private:
  bool completable(std::size_t i) const {
    std::vector<std::pair<int, int>> open;
    for (std::size_t j = i; j < edges_.size(); ++j)
      if (!covered_[edges_[j].u] && !covered_[edges_[j].v]) open.emplace_back(edges_[j].u, edges_[j].v);
    if (chosen_.size() + open.size() < target_) return false;
    return chosen_.size() + static_cast<std::size_t>(matching_number_of(g_.vertex_count(), open)) >= target_;
  }

  void emit() {
    if (emitted_ == cap_) {
      truncated_ = true;
      stopped_ = true;
      return;
    }
    Matching m;
    m.host_size = g_.vertex_count();
    m.edges = chosen_;
    canonicalize(m);
    ++emitted_;
    if (!visit_(m)) stopped_ = true;
  }

  // check_bound is false when the open residual is unchanged since the
  // parent's check.
  void descend(std::size_t i, bool check_bound) {
    if (stopped_) return;
    if (chosen_.size() == target_) {
      emit();
      return;
    }
    if (i == edges_.size()) return;
    if (check_bound && !completable(i)) return;
    const Edge& e = edges_[i];
    bool free = !covered_[e.u] && !covered_[e.v];
    if (free) {
      covered_[e.u] = covered_[e.v] = 1;
      chosen_.push_back(e);
      descend(i + 1, true);
      chosen_.pop_back();
      covered_[e.u] = covered_[e.v] = 0;
    }
    descend(i + 1, free);
  }

  const Graph& g_;
  std::span<const Edge> edges_;
  std::size_t target_;
  std::size_t cap_;
  const std::function<bool(const Matching&)>& visit_;
  std::vector<char> covered_;
  std::vector<Edge> chosen_;
  std::size_t emitted_ = 0;
  bool truncated_ = false;
  bool stopped_ = false;
};

// floor(log2(n)) + 1 for n >= 1.
long long bit_length(long long n) {
  long long bits = 0;
  while (n > 0) {
    ++bits;
    n >>= 1;
  }
  return bits;
}

}  // namespace

bool for_each_maximum_matching(const Graph& g, std::size_t cap,
                               const std::function<bool(const Matching&)>& visit) {
  if (cap < 1) throw std::invalid_argument("enumeration cap must be at least 1");
  return MaximumMatchingEnumerator(g, cap, visit).run();
}

EnumerationResult enumerate_maximum_matchings(const Graph& g, std::size_t cap) {
  EnumerationResult result;
  result.truncated = for_each_maximum_matching(g, cap, [&](const Matching& m) {
    result.matchings.push_back(m);
    return true;
  });
  return result;
}

SpectrumReport spectrum(const Graph& g, std::size_t cap) {
  SpectrumReport report;
  report.nu = nu(g);
  bool first = true;
  report.truncated = for_each_maximum_matching(g, cap, [&](const Matching& f) {
    int residual = nu(delete_edges(g, f.edges));
    ++report.matchings_enumerated;
    report.achieved.insert(residual);
    if (first || residual < report.ell) {
      report.ell = residual;
      report.witness_min = f;
    }
    if (first || residual > report.big_l) {
      report.big_l = residual;
      report.witness_max = f;
    }
    first = false;
    return true;
  });
  return report;
}

ToleranceFunction ToleranceFunction::parse(std::string_view text) {
  auto colon = text.find(':');
  std::string_view name = text.substr(0, colon);
  std::optional<Rational> coefficient;
  if (colon != std::string_view::npos) coefficient = parse_rational(text.substr(colon + 1));
  if (coefficient && *coefficient < 0) throw std::invalid_argument("tolerance coefficient must be non-negative");

  if (name == "identity") {
    if (coefficient) throw std::invalid_argument("identity tolerance takes no coefficient");
    return identity();
  }
  if (name == "const" || name == "constant") {
    if (!coefficient) throw std::invalid_argument("const tolerance needs a value, e.g. const:3");
    return constant(*coefficient);
  }
  if (name == "linear") {
    if (!coefficient) throw std::invalid_argument("linear tolerance needs a coefficient, e.g. linear:1/300");
    return linear(*coefficient);
  }
  if (name == "log") return {Kind::log, coefficient.value_or(Rational(1))};
  if (name == "sqrt") return {Kind::sqrt, coefficient.value_or(Rational(1))};
  throw std::invalid_argument("unknown tolerance function '" + std::string(text) + "'");
}

bool ToleranceFunction::admits(long long deviation, long long n) const {
  if (deviation < 0) deviation = -deviation;
  const Rational d(deviation);
  switch (kind) {
    case Kind::identity:
      return deviation <= n;
    case Kind::constant:
      return d <= coefficient;
    case Kind::linear:
      return d <= coefficient * n;
    case Kind::sqrt:
      return d * d <= coefficient * coefficient * n;
    case Kind::log: {
      if (n <= 1 || coefficient == 0) return deviation == 0;
      // d <= (p/q) log2 n  <=>  2^(d q) <= n^p
      BigInt p = boost::multiprecision::numerator(coefficient);
      BigInt q = boost::multiprecision::denominator(coefficient);
      BigInt exponent = q * deviation;
      // n^p < 2^(p * bit_length(n))
      if (exponent >= p * bit_length(n)) return false;
      BigInt lhs = BigInt(1) << exponent.convert_to<unsigned>();
      BigInt rhs = boost::multiprecision::pow(BigInt(n), p.convert_to<unsigned>());
      return lhs <= rhs;
    }
  }
  return false;
}

double ToleranceFunction::evaluate(long long n) const {
  double c = to_double(coefficient);
  switch (kind) {
    case Kind::identity:
      return static_cast<double>(n);
    case Kind::constant:
      return c;
    case Kind::linear:
      return c * static_cast<double>(n);
    case Kind::sqrt:
      return c * std::sqrt(static_cast<double>(n));
    case Kind::log:
      return n <= 1 ? 0.0 : c * std::log2(static_cast<double>(n));
  }
  return 0.0;
}

std::string ToleranceFunction::describe() const {
  switch (kind) {
    case Kind::identity:
      return "identity";
    case Kind::constant:
      return "const:" + to_string(coefficient);
    case Kind::linear:
      return "linear:" + to_string(coefficient);
    case Kind::sqrt:
      return "sqrt:" + to_string(coefficient);
    case Kind::log:
      return "log:" + to_string(coefficient);
  }
  return "?";
}

std::string to_string(Problem1Result::Answer a) {
  switch (a) {
    case Problem1Result::Answer::yes:
      return "yes";
    case Problem1Result::Answer::no:
      return "no";
    case Problem1Result::Answer::unknown:
      return "unknown";
  }
  return "?";
}

Problem1Result decide_problem1(const Graph& g, int k, const ToleranceFunction& f, std::size_t cap) {
  const long long n = g.vertex_count();
  if (k < 0 || k > n / 2)
    throw std::invalid_argument("k = " + std::to_string(k) + " violates 0 <= k <= floor(|V|/2) = " +
                                std::to_string(n / 2));
  Problem1Result result;
  // |nu(G - F) - k| never exceeds floor(|V|/2).
  if (f.admits(n / 2, n)) {
    result.answer = Problem1Result::Answer::yes;
    result.witness = max_matching(g);
    return result;
  }
  result.enumerated = true;
  bool truncated = for_each_maximum_matching(g, cap, [&](const Matching& m) {
    ++result.matchings_examined;
    int residual = nu(delete_edges(g, m.edges));
    if (!f.admits(residual - k, n)) return true;
    result.witness = m;
    result.witness_residual = residual;
    return false;
  });
  if (result.witness)
    result.answer = Problem1Result::Answer::yes;
  else
    result.answer = truncated ? Problem1Result::Answer::unknown : Problem1Result::Answer::no;
  return result;
}

BoundReport check_bounds(const SpectrumReport& s, int vertex_count) {
  if (s.truncated) throw TruncatedSpectrum("check_bounds: spectrum enumeration was truncated");
  BoundReport report;
  report.ell = s.ell;
  report.big_l = s.big_l;
  report.has_perfect_matching = 2 * s.nu == vertex_count;
  report.ordered = s.ell <= s.big_l;
  report.within_double = s.big_l <= 2 * s.ell;
  report.within_three_halves = 2 * s.big_l <= 3 * s.ell;
  auto pair = "ell=" + std::to_string(s.ell) + " L=" + std::to_string(s.big_l);
  if (!report.ordered) report.violations.push_back("ell > L (" + pair + ")");
  if (!report.within_double) report.violations.push_back("L > 2 ell (" + pair + ")");
  if (report.has_perfect_matching && !report.within_three_halves)
    report.violations.push_back("2L > 3 ell with a perfect matching (" + pair + ")");
  return report;
}

BoundReport check_bounds(const Graph& g, std::size_t cap) {
  return check_bounds(spectrum(g, cap), g.vertex_count());
}

ApproxReport approx_trial(const Graph& g, const SpectrumReport& s, const std::vector<std::uint64_t>& seeds) {
  if (s.truncated) throw TruncatedSpectrum("approx_trial: spectrum enumeration was truncated");
  ApproxReport report;
  report.nu = s.nu;
  report.ell = s.ell;
  report.big_l = s.big_l;
  for (std::uint64_t seed : seeds) {
    ApproxTrial trial;
    trial.seed = seed;
    Matching f = max_matching(g, seed);
    trial.residual = nu(delete_edges(g, f.edges));
    if (s.ell > 0) {
      trial.ratio_ell = Rational(trial.residual, s.ell);
      if (*trial.ratio_ell < 1 || *trial.ratio_ell > 2) report.ratios_within = false;
    }
    if (s.big_l > 0) {
      trial.ratio_big_l = Rational(trial.residual, s.big_l);
      if (*trial.ratio_big_l < Rational(1, 2) || *trial.ratio_big_l > 1) report.ratios_within = false;
    }
    if (!trial.ratio_ell || !trial.ratio_big_l) ++report.undefined_ratio_trials;
    report.trials.push_back(std::move(trial));
  }
  return report;
}

ApproxReport approx_trial(const Graph& g, const std::vector<std::uint64_t>& seeds, std::size_t cap) {
  return approx_trial(g, spectrum(g, cap), seeds);
}

}  // namespace resmatch
