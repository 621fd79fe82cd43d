#include "resmatch/reduction.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace resmatch {

// ---------------------------------------------------------------- CNF input

void validate_cnf(const CnfInstance& cnf) {
  if (cnf.num_vars < 1) throw CnfError(0, "need at least one variable");
  if (cnf.clauses.empty()) throw CnfError(0, "need at least one clause");
  std::vector<char> used(static_cast<std::size_t>(cnf.num_vars) + 1, 0);
  for (std::size_t j = 0; j < cnf.clauses.size(); ++j) {
    const int index = static_cast<int>(j) + 1;
    std::set<int> seen;
    for (const Literal& lit : cnf.clauses[j]) {
      if (lit.variable < 1 || lit.variable > cnf.num_vars)
        throw CnfError(index, "variable " + std::to_string(lit.variable) + " out of range");
      if (!seen.insert(lit.variable).second)
        throw CnfError(index, "repeated variable " + std::to_string(lit.variable));
      used[lit.variable] = 1;
    }
  }
  for (int i = 1; i <= cnf.num_vars; ++i)
    if (!used[i]) throw CnfError(0, "variable " + std::to_string(i) + " occurs in no clause");
}

CnfInstance make_cnf(int num_vars, const std::vector<std::array<int, 3>>& clauses) {
  CnfInstance cnf;
  cnf.num_vars = num_vars;
  for (const auto& c : clauses) {
    Clause clause;
    for (int t = 0; t < 3; ++t) clause[t] = Literal{c[t] < 0 ? -c[t] : c[t], c[t] > 0};
    cnf.clauses.push_back(clause);
  }
  validate_cnf(cnf);
  return cnf;
}

CnfInstance parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  long long declared_vars = -1;
  long long declared_clauses = -1;
  CnfInstance cnf;
  std::vector<long long> pending;

  auto close_clause = [&] {
    const int index = cnf.clause_count() + 1;
    if (pending.size() != 3)
      throw CnfError(index, "has " + std::to_string(pending.size()) + " literals, expected exactly 3");
    Clause clause;
    for (int t = 0; t < 3; ++t) {
      long long lit = pending[t];
      long long var = lit < 0 ? -lit : lit;
      if (var > declared_vars)
        throw CnfError(index, "variable " + std::to_string(var) + " exceeds declared count");
      clause[t] = Literal{static_cast<int>(var), lit > 0};
    }
    cnf.clauses.push_back(clause);
    pending.clear();
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string token;
    if (!(fields >> token) || token == "c" || token[0] == 'c') continue;
    if (token == "%") break;
    if (token == "p") {
      std::string kind;
      if (declared_vars >= 0) throw ParseError(line_no, "duplicate header");
      if (!(fields >> kind >> declared_vars >> declared_clauses) || kind != "cnf" || declared_vars < 1 ||
          declared_clauses < 1)
        throw ParseError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
      continue;
    }
    if (declared_vars < 0) throw ParseError(line_no, "clause before header");
    do {
      long long lit = 0;
      try {
        std::size_t consumed = 0;
        lit = std::stoll(token, &consumed);
        if (consumed != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw ParseError(line_no, "malformed literal '" + token + "'");
      }
      if (lit == 0)
        close_clause();
      else
        pending.push_back(lit);
    } while (fields >> token);
  }
  if (declared_vars < 0) throw ParseError(line_no, "missing header");
  if (!pending.empty()) throw CnfError(cnf.clause_count() + 1, "not terminated by 0");
  if (cnf.clause_count() != declared_clauses)
    throw CnfError(0, "header declares " + std::to_string(declared_clauses) + " clauses but file has " +
                          std::to_string(cnf.clause_count()));
  cnf.num_vars = static_cast<int>(declared_vars);
  validate_cnf(cnf);
  return cnf;
}

std::string emit_dimacs(const CnfInstance& cnf) {
  std::ostringstream out;
  out << "p cnf " << cnf.num_vars << ' ' << cnf.clause_count() << '\n';
  for (const Clause& c : cnf.clauses) {
    for (const Literal& lit : c) out << (lit.positive ? lit.variable : -lit.variable) << ' ';
    out << "0\n";
  }
  return out.str();
}

// --------------------------------------------------------------- assignments

Assignment Assignment::from_bits(int num_vars, std::uint64_t bits) {
  Assignment a;
  a.values.resize(num_vars);
  for (int i = 0; i < num_vars; ++i) a.values[i] = (bits >> i) & 1u;
  return a;
}

std::string Assignment::str() const {
  std::string s;
  for (bool v : values) s.push_back(v ? 'T' : 'F');
  return s;
}

namespace {

void require_total(const CnfInstance& cnf, const Assignment& alpha) {
  if (alpha.size() != cnf.num_vars)
    throw std::invalid_argument("assignment covers " + std::to_string(alpha.size()) + " of " +
                                std::to_string(cnf.num_vars) + " variables");
}

}  // namespace

int sat_count(const CnfInstance& cnf, const Assignment& alpha) {
  require_total(cnf, alpha);
  int satisfied = 0;
  for (const Clause& c : cnf.clauses)
    if (std::any_of(c.begin(), c.end(), [&](const Literal& l) { return alpha.value(l.variable) == l.positive; }))
      ++satisfied;
  return satisfied;
}

std::string to_string(Variant v) { return v == Variant::big_l ? "L" : "ell"; }

Variant parse_variant(std::string_view text) {
  if (text == "L") return Variant::big_l;
  if (text == "ell") return Variant::ell;
  throw std::invalid_argument("unknown variant '" + std::string(text) + "', expected L or ell");
}

// -------------------------------------------------------------- construction

namespace {

class LatticeBuilder {
 public:
  int add(long long x, long long y) {
    auto [it, inserted] = ids_.emplace(Point{x, y}, static_cast<int>(points_.size()) + 1);
    if (!inserted) throw std::logic_error("lattice point used twice");
    points_.push_back(Point{x, y});
    return it->second;
  }

  void link(int a, int b) { pairs_.emplace_back(a, b); }

  Graph finish() const {
    std::map<int, Point> coords;
    for (std::size_t i = 0; i < points_.size(); ++i) coords.emplace(static_cast<int>(i) + 1, points_[i]);
    BuildResult built = build_graph(static_cast<int>(points_.size()), pairs_, coords);
    if (built.collapsed != 0) throw std::logic_error("construction produced a parallel edge");
    return built.graph;
  }

 private:
  std::map<Point, int> ids_;
  std::vector<Point> points_;
  std::vector<std::pair<int, int>> pairs_;
};

GadgetVertices add_gadget(LatticeBuilder& lattice, const Literal& lit, int j) {
  const long long i = lit.variable;
  GadgetVertices gv;
  gv.variable = lit.variable;
  gv.positive = lit.positive;
  if (lit.positive) {
    gv.u11 = lattice.add(4 * i - 1, 4 * j - 3);
    gv.u12 = lattice.add(4 * i - 1, 4 * j - 2);
    gv.u21 = lattice.add(4 * i, 4 * j - 3);
    gv.u22 = lattice.add(4 * i, 4 * j - 2);
  } else {
    gv.u11 = lattice.add(4 * i - 3, 4 * j - 1);
    gv.u12 = lattice.add(4 * i - 2, 4 * j - 1);
    gv.u21 = lattice.add(4 * i - 3, 4 * j);
    gv.u22 = lattice.add(4 * i - 2, 4 * j);
  }
  gv.v11 = lattice.add(4 * i - 1, 4 * j);
  gv.v12 = lattice.add(4 * i, 4 * j);
  gv.v21 = lattice.add(4 * i - 1, 4 * j - 1);
  gv.v22 = lattice.add(4 * i, 4 * j - 1);

  lattice.link(gv.u11, gv.u12);
  lattice.link(gv.u21, gv.u22);
  lattice.link(gv.u12, gv.v21);
  // Positive gadgets hang u22 on v22, negated ones on v11.
  lattice.link(gv.u22, lit.positive ? gv.v22 : gv.v11);
  lattice.link(gv.v21, gv.v22);
  lattice.link(gv.v22, gv.v12);
  lattice.link(gv.v11, gv.v12);
  return gv;
}

// The gadget vertex, besides v12, left uncovered once its pendant u-paths are
// matched in the residual graph.
int residual_partner(const GadgetVertices& gv) { return gv.positive ? gv.v11 : gv.v22; }

}  // namespace

ReductionArtifact build_artifact(const CnfInstance& cnf, Variant variant) {
  validate_cnf(cnf);
  ReductionArtifact a;
  a.variant = variant;
  a.cnf = cnf;
  a.m = cnf.clause_count();
  const int m = a.m;
  LatticeBuilder lattice;

  for (int y = 1; y <= 4 * m; ++y) a.path_vertices.push_back(lattice.add(-1, y));
  for (int y = 1; y < 4 * m; ++y) lattice.link(a.path_vertices[y - 1], a.path_vertices[y]);

  for (int j = 1; j <= m; ++j) {
    std::array<Literal, 3> slots = cnf.clauses[j - 1];
    std::sort(slots.begin(), slots.end(),
              [](const Literal& x, const Literal& y) { return x.variable < y.variable; });

    std::array<int, 4> column{};
    if (variant == Variant::big_l)
      for (int r = 0; r < 4; ++r) column[r] = lattice.add(0, 4 * j - 3 + r);

    std::array<GadgetVertices, 3> gadgets;
    for (int t = 0; t < 3; ++t) gadgets[t] = add_gadget(lattice, slots[t], j);

    if (variant == Variant::big_l) {
      lattice.link(column[0], column[1]);
      lattice.link(column[2], column[3]);
      for (const auto& gv : gadgets) {
        lattice.link(column[2], gv.v12);
        lattice.link(column[0], gv.v12);
      }
      a.clause_columns.push_back(column);
    } else {
      for (int t = 0; t + 1 < 3; ++t) lattice.link(gadgets[t].v12, residual_partner(gadgets[t + 1]));
    }

    lattice.link(a.path_vertices[4 * j - 3], gadgets[0].u11);  // (-1, 4j-2)
    a.gadgets.push_back(gadgets);
  }

  // Variable cycles: v21-v22-v12-v11 in each occurrence, then a connector in
  // column 4i-1 from v11 down to v21 of the next occurrence (cyclically).
  a.cycles.resize(cnf.num_vars);
  std::vector<std::vector<const GadgetVertices*>> occurrences(cnf.num_vars);
  for (const auto& clause_gadgets : a.gadgets)
    for (const auto& gv : clause_gadgets) occurrences[gv.variable - 1].push_back(&gv);
  for (int i = 0; i < cnf.num_vars; ++i) {
    const auto& occ = occurrences[i];
    auto& cycle = a.cycles[i];
    for (std::size_t t = 0; t < occ.size(); ++t) {
      const GadgetVertices& gv = *occ[t];
      const GadgetVertices& next = *occ[(t + 1) % occ.size()];
      cycle.push_back({Edge(gv.v21, gv.v22), false});
      cycle.push_back({Edge(gv.v22, gv.v12), true});
      cycle.push_back({Edge(gv.v12, gv.v11), false});
      cycle.push_back({Edge(gv.v11, next.v21), true});
      lattice.link(gv.v11, next.v21);
    }
  }

  a.graph = lattice.finish();

  ExpectedCounts& e = a.expected;
  if (variant == Variant::big_l) {
    e.vertices = 32 * m;
    e.published_edges = 37 * m - 1;
    e.two_attachment_edges = 36 * m + 1;
    e.max_degree = 4;
    e.k_param = 11 * m - 1;
  } else {
    e.vertices = 28 * m;
    e.published_edges = 31 * m - 1;
    e.two_attachment_edges = 30 * m + 1;
    e.max_degree = 3;
  }
  // Two attachments in the figure, m under the per-clause rule.
  e.edges = e.two_attachment_edges - 2 + m;
  e.nu = e.vertices / 2;
  return a;
}

Matching encode_assignment(const ReductionArtifact& a, const Assignment& alpha) {
  require_total(a.cnf, alpha);
  Matching f;
  f.host_size = a.graph.vertex_count();
  for (std::size_t y = 0; y + 1 < a.path_vertices.size(); y += 2)
    f.edges.emplace_back(a.path_vertices[y], a.path_vertices[y + 1]);
  for (const auto& column : a.clause_columns) {
    f.edges.emplace_back(column[0], column[1]);
    f.edges.emplace_back(column[2], column[3]);
  }
  for (const auto& clause_gadgets : a.gadgets) {
    for (const auto& gv : clause_gadgets) {
      f.edges.emplace_back(gv.u11, gv.u12);
      f.edges.emplace_back(gv.u21, gv.u22);
    }
  }
  for (int i = 1; i <= a.cnf.num_vars; ++i) {
    bool take_vertical = (a.variant == Variant::big_l) == alpha.value(i);
    for (const CycleEdge& ce : a.cycles[i - 1])
      if (ce.vertical == take_vertical) f.edges.push_back(ce.edge);
  }
  canonicalize(f);
  return f;
}

Assignment decode_matching(const ReductionArtifact& a, const Matching& f) {
  MatchingFlags flags = validate_matching(a.graph, f);
  if (!flags.valid) throw StructuralError("not a matching of the artifact graph");
  if (!flags.perfect) throw StructuralError("matching is not perfect");
  std::set<Edge> in_f(f.edges.begin(), f.edges.end());
  Assignment alpha;
  alpha.values.resize(a.cnf.num_vars);
  for (int i = 1; i <= a.cnf.num_vars; ++i) {
    int vertical = 0;
    int horizontal = 0;
    for (const CycleEdge& ce : a.cycles[i - 1])
      if (in_f.count(ce.edge)) ++(ce.vertical ? vertical : horizontal);
    const int half = static_cast<int>(a.cycles[i - 1].size()) / 2;
    bool pure_vertical = vertical == half && horizontal == 0;
    bool pure_horizontal = horizontal == half && vertical == 0;
    if (!pure_vertical && !pure_horizontal)
      throw StructuralError("cycle of variable " + std::to_string(i) + " has " + std::to_string(vertical) +
                            " vertical and " + std::to_string(horizontal) + " horizontal matched edges");
    alpha.values[i - 1] = (a.variant == Variant::big_l) == pure_vertical;
  }
  return alpha;
}

int expected_residual(const ReductionArtifact& a, const Assignment& alpha) {
  const int sat = sat_count(a.cnf, alpha);
  return a.variant == Variant::big_l ? 10 * a.m - 1 + sat : 11 * a.m - 1 - sat;
}

// -------------------------------------------------------------- verification

namespace {

template <typename T>
void expect_equal(Certificate& cert, const std::string& what, const T& actual, const T& expected) {
  if (actual != expected)
    cert.discrepancies.push_back(what + ": constructed " + std::to_string(actual) + ", expected " +
                                 std::to_string(expected));
}

}  // namespace

Certificate verify_artifact(const ReductionArtifact& a, const CnfInstance& cnf, const VerifyOptions& options) {
  const Graph& g = a.graph;
  Certificate cert;
  cert.variant = a.variant;
  cert.m = a.m;
  cert.n = cnf.num_vars;
  cert.edge_rule = a.edge_rule;
  cert.exhaustive = options.exhaustive;

  if (options.exhaustive && cnf.num_vars > options.max_exhaustive_vars)
    throw std::invalid_argument("exhaustive verification limited to " + std::to_string(options.max_exhaustive_vars) +
                                " variables, instance has " + std::to_string(cnf.num_vars));
  if (!(a.cnf == cnf)) cert.discrepancies.push_back("artifact was built from a different CNF instance");

  cert.vertices = g.vertex_count();
  cert.expected_vertices = a.expected.vertices;
  cert.edges = static_cast<int>(g.edge_count());
  cert.expected_edges = a.expected.edges;
  cert.published_edges = a.expected.published_edges;
  cert.two_attachment_edges = a.expected.two_attachment_edges;
  cert.max_degree = degree_profile(g).max_degree;
  cert.expected_max_degree = a.expected.max_degree;
  cert.connected = is_connected(g);
  cert.nu = nu(g);
  cert.expected_nu = a.expected.nu;
  cert.k_param = a.expected.k_param;

  expect_equal(cert, "vertex count", cert.vertices, cert.expected_vertices);
  expect_equal(cert, "edge count", cert.edges, cert.expected_edges);
  expect_equal(cert, "max degree", cert.max_degree, cert.expected_max_degree);
  expect_equal(cert, "nu", cert.nu, cert.expected_nu);
  if (!cert.connected) cert.discrepancies.push_back("graph is not connected");

  if (g.has_coords()) {
    auto parity = [&](int v) { return ((g.coord(v).x + g.coord(v).y) % 2 + 2) % 2; };
    cert.bipartite_by_parity = std::all_of(g.edges().begin(), g.edges().end(),
                                           [&](const Edge& e) { return parity(e.u) != parity(e.v); });
    if (cert.bipartite_by_parity) {
      auto b = bipartition(g);
      bool sides_match = b && std::all_of(b->side0.begin(), b->side0.end(), [&](int v) { return parity(v) == 0; }) &&
                         std::all_of(b->side1.begin(), b->side1.end(), [&](int v) { return parity(v) == 1; });
      if (!sides_match) cert.discrepancies.push_back("bipartition sides differ from x+y parity classes");
    }
  }
  if (!cert.bipartite_by_parity) cert.discrepancies.push_back("x+y parity classes are not a bipartition");

  if (!options.exhaustive) return cert;

  const std::uint64_t total = std::uint64_t{1} << cnf.num_vars;
  cert.expected_ell = std::numeric_limits<int>::max();
  cert.expected_big_l = std::numeric_limits<int>::min();
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    Assignment alpha = Assignment::from_bits(cnf.num_vars, bits);
    ResidualCheck check;
    check.assignment = alpha.str();
    check.sat = sat_count(cnf, alpha);
    check.expected = expected_residual(a, alpha);
    cert.expected_ell = std::min(cert.expected_ell, check.expected);
    cert.expected_big_l = std::max(cert.expected_big_l, check.expected);
    Matching f = encode_assignment(a, alpha);
    if (!validate_matching(g, f).perfect) {
      cert.discrepancies.push_back("assignment " + check.assignment + ": encoded matching is not perfect");
      check.actual = -1;
    } else {
      check.actual = nu(delete_edges(g, f.edges));
      if (check.actual != check.expected)
        cert.discrepancies.push_back("assignment " + check.assignment + ": residual nu " +
                                     std::to_string(check.actual) + ", expected " + std::to_string(check.expected));
    }
    cert.residual_checks.push_back(check);
  }

  if (options.check_spectrum) {
    SpectrumReport s = spectrum(g, options.spectrum_cap);
    cert.spectrum_checked = true;
    cert.spectrum_truncated = s.truncated;
    cert.maximum_matchings = s.matchings_enumerated;
    cert.ell = s.ell;
    cert.big_l = s.big_l;
    if (s.truncated) {
      cert.discrepancies.push_back("maximum matching enumeration truncated at " + std::to_string(options.spectrum_cap));
    } else {
      expect_equal(cert, "ell", cert.ell, cert.expected_ell);
      expect_equal(cert, "L", cert.big_l, cert.expected_big_l);
    }
  }
  return cert;
}

// --------------------------------------------------------------- calibration

Rational calibration(Variant variant, const Rational& epsilon) {
  const Rational upper = variant == Variant::big_l ? Rational(1, 88) : Rational(1, 80);
  if (epsilon <= 0 || epsilon >= upper)
    throw std::domain_error("epsilon " + to_string(epsilon) + " outside (0, " + to_string(upper) + ")");
  Rational delta = variant == Variant::big_l ? 11 * (1 - epsilon) - 10 - Rational(7, 8)
                                             : 11 - Rational(7, 8) - 10 * (1 + epsilon);
  if (delta <= 0 || delta >= Rational(1, 8)) throw std::logic_error("delta left (0, 1/8)");
  return delta;
}

bool additive_threshold(const Rational& c, const Rational& epsilon) {
  if (c <= 0) throw std::domain_error("c must be positive, got " + to_string(c));
  if (epsilon <= 0 || epsilon >= Rational(1, 8))
    throw std::domain_error("epsilon " + to_string(epsilon) + " outside (0, 1/8)");
  return c < Rational(1, 256) - epsilon / 32;
}

}  // namespace resmatch
