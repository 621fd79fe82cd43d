#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "resmatch/graph.hpp"
#include "resmatch/matching.hpp"
#include "resmatch/rational.hpp"
#include "resmatch/spectrum.hpp"

namespace resmatch {

struct Literal {
  int variable = 0;
  bool positive = true;
  bool operator==(const Literal&) const = default;
};

using Clause = std::array<Literal, 3>;

/// Exact-3 CNF: every clause has three literals over distinct variables and
/// every variable 1..num_vars occurs somewhere.
struct CnfInstance {
  int num_vars = 0;
  std::vector<Clause> clauses;

  int clause_count() const { return static_cast<int>(clauses.size()); }
  bool operator==(const CnfInstance&) const = default;
};

/// Invalid CNF content. clause() is 1-based, 0 when not clause-specific.
class CnfError : public std::invalid_argument {
 public:
  CnfError(int clause, const std::string& what)
      : std::invalid_argument(clause > 0 ? "clause " + std::to_string(clause) + ": " + what : what),
        clause_(clause) {}
  int clause() const { return clause_; }

 private:
  int clause_;
};

/// Throws CnfError when an invariant of CnfInstance is broken.
void validate_cnf(const CnfInstance& cnf);

/// Builds and validates a CNF from DIMACS-style signed literals.
CnfInstance make_cnf(int num_vars, const std::vector<std::array<int, 3>>& clauses);

/// DIMACS CNF restricted to exact-3 clauses. Malformed text raises ParseError
/// (with line); clause-level violations raise CnfError.
CnfInstance parse_dimacs(std::string_view text);
std::string emit_dimacs(const CnfInstance& cnf);

/// Total truth assignment; value(i) for variables 1..size().
struct Assignment {
  std::vector<bool> values;

  int size() const { return static_cast<int>(values.size()); }
  bool value(int variable) const { return values.at(variable - 1); }
  /// Bit i-1 of `bits` is the value of variable i.
  static Assignment from_bits(int num_vars, std::uint64_t bits);
  /// e.g. "TFT".
  std::string str() const;
  bool operator==(const Assignment&) const = default;
};

int sat_count(const CnfInstance& cnf, const Assignment& alpha);

/// big_l: the degree-4 construction (32m vertices) whose residual grows with
/// satisfied clauses. ell: the degree-3 construction (28m vertices) whose
/// residual shrinks with satisfied clauses.
enum class Variant { big_l, ell };

std::string to_string(Variant v);
/// Accepts "L" or "ell".
Variant parse_variant(std::string_view text);

/// Vertex ids of one literal gadget. The v-square sits at columns 4i-1, 4i
/// and rows 4j-1, 4j for variable i in clause j.
struct GadgetVertices {
  int variable = 0;
  bool positive = true;
  int u11 = 0, u12 = 0, u21 = 0, u22 = 0;
  int v11 = 0, v12 = 0, v21 = 0, v22 = 0;
};

/// An edge of a variable cycle. Vertical edges join equal x-coordinates.
struct CycleEdge {
  Edge edge;
  bool vertical = false;
};

struct ExpectedCounts {
  int vertices = 0;
  /// Edge count predicted by the construction rule in use.
  int edges = 0;
  /// 37m-1 or 31m-1.
  int published_edges = 0;
  /// Count when the path is attached only to the first and last clause.
  int two_attachment_edges = 0;
  int nu = 0;
  int max_degree = 0;
  std::optional<int> k_param;
};

inline constexpr const char* kEdgeRule =
    "path vertex (-1,4j-2) joined to u11 of the first literal gadget of clause j, for every j";

struct ReductionArtifact {
  Variant variant = Variant::big_l;
  CnfInstance cnf;
  Graph graph;
  int m = 0;
  /// gadgets[j-1][t] for clause j and slot t (slots ordered by variable).
  std::vector<std::array<GadgetVertices, 3>> gadgets;
  /// cycles[i-1]: the variable cycle of x_i in traversal order.
  std::vector<std::vector<CycleEdge>> cycles;
  /// (-1,1) .. (-1,4m) in order.
  std::vector<int> path_vertices;
  /// big_l only: ids of (0,4j-3), (0,4j-2), (0,4j-1), (0,4j) per clause.
  std::vector<std::array<int, 4>> clause_columns;
  ExpectedCounts expected;
  std::string edge_rule = kEdgeRule;
};

ReductionArtifact build_artifact(const CnfInstance& cnf, Variant variant);

/// The perfect matching for alpha: the path's perfect matching, every
/// u11u12 and u21u22, the clause-column pairs (big_l only), and each variable
/// cycle oriented by alpha. big_l takes the vertical edges for TRUE; ell takes
/// the horizontal edges for TRUE.
Matching encode_assignment(const ReductionArtifact& a, const Assignment& alpha);

/// Raised when a matching does not have the shape every perfect matching of
/// an artifact is expected to have.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inverse of encode_assignment. Throws StructuralError when f is not perfect
/// or some cycle is not purely vertical or purely horizontal.
Assignment decode_matching(const ReductionArtifact& a, const Matching& f);

/// 10m - 1 + sat (big_l) or 11m - 1 - sat (ell).
int expected_residual(const ReductionArtifact& a, const Assignment& alpha);

struct VerifyOptions {
  bool exhaustive = false;
  int max_exhaustive_vars = 16;
  /// With exhaustive, also enumerate all maximum matchings to get ell and L.
  bool check_spectrum = true;
  std::size_t spectrum_cap = 1 << 20;
};

struct ResidualCheck {
  std::string assignment;
  int sat = 0;
  int expected = 0;
  int actual = 0;
};

struct Certificate {
  Variant variant = Variant::big_l;
  int m = 0;
  int n = 0;
  int vertices = 0;
  int expected_vertices = 0;
  int edges = 0;
  int expected_edges = 0;
  int published_edges = 0;
  int two_attachment_edges = 0;
  std::string edge_rule;
  int max_degree = 0;
  int expected_max_degree = 0;
  bool bipartite_by_parity = false;
  bool connected = false;
  int nu = 0;
  int expected_nu = 0;
  std::optional<int> k_param;
  bool exhaustive = false;
  std::vector<ResidualCheck> residual_checks;
  bool spectrum_checked = false;
  bool spectrum_truncated = false;
  std::size_t maximum_matchings = 0;
  int ell = 0;
  int big_l = 0;
  int expected_ell = 0;
  int expected_big_l = 0;
  std::vector<std::string> discrepancies;

  bool ok() const { return discrepancies.empty(); }
};

/// Checks counts, parity bipartition, connectivity, max degree and nu against
/// the expected values; with exhaustive, checks the residual identity for
/// every assignment and that ell/L equal the extremes of expected_residual.
/// Throws std::invalid_argument when exhaustive is requested above the
/// variable limit.
Certificate verify_artifact(const ReductionArtifact& a, const CnfInstance& cnf, const VerifyOptions& options = {});

/// delta from epsilon: 11(1-eps) - 10 - 7/8 for big_l, eps in (0, 1/88);
/// 11 - 7/8 - 10(1+eps) for ell, eps in (0, 1/80). Throws std::domain_error
/// outside the open interval.
Rational calibration(Variant variant, const Rational& epsilon);

/// c < 1/256 - eps/32, exactly. Requires c > 0 and eps in (0, 1/8); throws
/// std::domain_error otherwise.
bool additive_threshold(const Rational& c, const Rational& epsilon);

}  // namespace resmatch
