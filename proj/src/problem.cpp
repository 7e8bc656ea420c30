#include <fittkit/problem.hpp>

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

namespace fittkit {

namespace {

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"fitt-comm", "fitt-nc", "nrd",       "adjoint",   "conductor",
                                                 "conductor-variant", "intring", "denom", "dual", "additivity",
                                                 "morita-fitt", "demo"};
  return names;
}

// ---------------------------------------------------------------- parsing

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(const std::string& line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (c == '{') {
      std::size_t close = line.find('}', i);
      if (close == std::string::npos) throw ParseError(line_no, start + 1, "unterminated '{'");
      i = close + 1;
    } else {
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#') {
        if (line[i] == '{' || line[i] == '}') throw ParseError(line_no, i + 1, "unexpected brace");
        ++i;
      }
    }
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

class LineParser {
 public:
  LineParser(std::size_t line_no, std::vector<Token> tokens) : line_(line_no), tokens_(std::move(tokens)) {}

  std::size_t line() const { return line_; }
  const std::vector<Token>& tokens() const { return tokens_; }
  const Token& at(std::size_t k) const {
    if (k >= tokens_.size()) {
      std::size_t col = tokens_.empty() ? 1 : tokens_.back().column + tokens_.back().text.size();
      throw ParseError(line_, col, "missing field after '" + tokens_.back().text + "'");
    }
    return tokens_[k];
  }
  ParseError error(std::size_t k, const std::string& message) const {
    return ParseError(line_, k < tokens_.size() ? tokens_[k].column : 1, message);
  }
  void expect_count(std::size_t n) const {
    if (tokens_.size() > n) throw error(n, "unexpected field '" + tokens_[n].text + "'");
    if (tokens_.size() < n) at(n - 1);
  }

  Integer integer(std::size_t k) const {
    const Token& t = at(k);
    try {
      Rational r = parse_rational(t.text);
      if (r.get_den() != 1) throw MathError("");
      return r.get_num();
    } catch (const MathError&) {
      throw error(k, "expected an integer, found '" + t.text + "'");
    }
  }
  std::size_t size(std::size_t k) const {
    Integer v = integer(k);
    if (sgn(v) < 0 || !v.fits_ulong_p()) throw error(k, "expected a non-negative size, found '" + at(k).text + "'");
    return v.get_ui();
  }
  long signed_long(std::size_t k) const {
    Integer v = integer(k);
    if (!v.fits_slong_p()) throw error(k, "integer out of range");
    return v.get_si();
  }

  Coefficients coefficients(std::size_t k, std::size_t dimension) const {
    const Token& t = at(k);
    if (t.text.front() != '{') throw error(k, "expected a coefficient map {index: rational, ...}");
    std::string body = t.text.substr(1, t.text.size() - 2);
    Coefficients out;
    if (trim(body).empty()) return out;
    std::size_t pos = 0;
    while (pos <= body.size()) {
      std::size_t comma = body.find(',', pos);
      std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      std::size_t col = t.column + 1 + pos;
      std::size_t colon = item.find(':');
      if (colon == std::string::npos) throw ParseError(line_, col, "expected 'index: rational' in coefficient map");
      std::string index_text = trim(item.substr(0, colon)), value_text = trim(item.substr(colon + 1));
      std::size_t index = 0;
      bool index_ok = !index_text.empty() && index_text.size() < 10 &&
                      std::all_of(index_text.begin(), index_text.end(), [](char c) { return c >= '0' && c <= '9'; });
      if (!index_ok) throw ParseError(line_, col, "bad basis index '" + index_text + "'");
      index = std::stoul(index_text);
      if (index >= dimension)
        throw ParseError(line_, col, "basis index " + index_text + " out of range (dimension " + std::to_string(dimension) + ")");
      if (out.count(index)) throw ParseError(line_, col, "basis index " + index_text + " repeated");
      Rational value;
      try {
        value = parse_rational(value_text);
      } catch (const MathError& e) {
        throw ParseError(line_, col + colon + 1, e.what());
      }
      if (!is_zero(value)) out[index] = value;
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return out;
  }

 private:
  std::size_t line_;
  std::vector<Token> tokens_;
};

std::size_t coefficient_dimension(const Problem& p, const LineParser& lp, std::size_t k) {
  if (p.order) {
    switch (p.order->kind) {
      case OrderSpecKind::group:
        return FiniteGroup::builtin(p.order->group).order();
      case OrderSpecKind::table:
        return p.order->table.size();
      case OrderSpecKind::matrix:
        return p.order->size * p.order->size;
      case OrderSpecKind::hereditary:
        return 4;
    }
  }
  if (p.ring) return (p.ring->kind == RingKind::quadratic || p.ring->kind == RingKind::quadratic_residues) ? 2 : 1;
  throw lp.error(k, "matrix given before 'order' or 'ring'");
}

void parse_ring(Problem& p, const LineParser& lp) {
  if (p.ring) throw lp.error(0, "ring given twice");
  if (p.order) throw lp.error(0, "'ring' and 'order' are exclusive");
  RingSpec r;
  const std::string& kind = lp.at(1).text;
  if (kind == "integers") {
    lp.expect_count(2);
    r.kind = RingKind::integers;
  } else if (kind == "local") {
    lp.expect_count(3);
    r.kind = RingKind::localized;
    r.parameter = lp.integer(2);
  } else if (kind == "residues") {
    lp.expect_count(3);
    r.kind = RingKind::residues;
    r.parameter = lp.integer(2);
  } else if (kind == "quadratic") {
    lp.expect_count(3);
    r.kind = RingKind::quadratic;
    r.radicand = lp.signed_long(2);
  } else if (kind == "quadratic-residues") {
    lp.expect_count(4);
    r.kind = RingKind::quadratic_residues;
    r.radicand = lp.signed_long(2);
    r.parameter = lp.integer(3);
  } else {
    throw lp.error(1, "unknown ring '" + kind + "'");
  }
  p.ring = r;
}

void parse_order(Problem& p, const LineParser& lp) {
  if (p.order) throw lp.error(0, "order given twice");
  if (p.ring || p.morita) throw lp.error(0, "'order' excludes 'ring' and 'morita'");
  OrderSpec o;
  const std::string& kind = lp.at(1).text;
  if (kind == "group") {
    lp.expect_count(4);
    o.kind = OrderSpecKind::group;
    o.group = lp.at(2).text;
    try {
      FiniteGroup::builtin(o.group);
    } catch (const MathError& e) {
      throw lp.error(2, e.what());
    }
    o.prime = lp.integer(3);
  } else if (kind == "table") {
    lp.expect_count(5);
    o.kind = OrderSpecKind::table;
    o.group = lp.at(2).text;
    std::size_t n = lp.size(3);
    if (n == 0) throw lp.error(3, "empty group table");
    o.table.reserve(n);
    o.table.resize(0);
    o.size = n;  // rows still to come; reset once complete
    o.prime = lp.integer(4);
  } else if (kind == "matrix") {
    lp.expect_count(4);
    o.kind = OrderSpecKind::matrix;
    o.size = lp.size(2);
    if (o.size == 0) throw lp.error(2, "matrix size must be positive");
    o.prime = lp.integer(3);
  } else if (kind == "hereditary") {
    lp.expect_count(3);
    o.kind = OrderSpecKind::hereditary;
    o.prime = lp.integer(2);
  } else {
    throw lp.error(1, "unknown order '" + kind + "'");
  }
  p.order = o;
}

void parse_morita(Problem& p, const LineParser& lp) {
  if (p.morita) throw lp.error(0, "morita given twice");
  if (!p.ring) throw lp.error(0, "'morita' needs a preceding 'ring'");
  MoritaSpec m;
  const std::string& kind = lp.at(1).text;
  if (kind == "matrix") {
    lp.expect_count(3);
    m.size = lp.size(2);
    if (m.size == 0) throw lp.error(2, "matrix size must be positive");
  } else if (kind == "twisted") {
    if (p.ring->kind != RingKind::quadratic) throw lp.error(1, "twisted endomorphism orders need a quadratic ring");
    m.size = 2;
    lp.at(2);
    for (std::size_t k = 2; k < lp.tokens().size(); ++k) m.twist.push_back(lp.coefficients(k, 2));
  } else {
    throw lp.error(1, "unknown morita order '" + kind + "'");
  }
  p.morita = m;
}

void parse_sampler(Problem& p, const LineParser& lp) {
  const auto& t = lp.tokens();
  if (t.size() % 2 == 0) throw lp.error(t.size() - 1, "sampler expects key value pairs");
  for (std::size_t k = 1; k < t.size(); k += 2) {
    const std::string& key = t[k].text;
    if (key == "max-size") {
      p.sampler.max_size = lp.size(k + 1);
    } else if (key == "coeff-bound") {
      p.sampler.coeff_bound = lp.signed_long(k + 1);
      if (p.sampler.coeff_bound < 0) throw lp.error(k + 1, "coefficient bound must be non-negative");
    } else if (key == "samples") {
      p.sampler.samples = lp.size(k + 1);
    } else if (key == "seed") {
      Integer s = lp.integer(k + 1);
      if (sgn(s) < 0 || mpz_sizeinbase(s.get_mpz_t(), 2) > 64) throw lp.error(k + 1, "seed must fit in 64 bits");
      p.sampler.seed = std::stoull(s.get_str());
    } else {
      throw lp.error(k, "unknown sampler key '" + key + "'");
    }
  }
}

bool needs(const std::string& command, const char* what) {
  static const std::map<std::string, std::string> req = {
      {"fitt-comm", "ring h"},   {"fitt-nc", "order anymatrix"}, {"nrd", "order h"},
      {"adjoint", "order h"},    {"conductor", "order"},           {"conductor-variant", "order"},
      {"intring", "order"},      {"denom", "order"},               {"dual", "order h"},
      {"additivity", "order h second"},                            {"morita-fitt", "ring morita h"},
      {"demo", ""}};
  std::istringstream is(req.at(command));
  std::string w;
  while (is >> w)
    if (w == what) return true;
  return false;
}

void validate(const Problem& p, std::size_t last_line) {
  auto fail = [&](const std::string& m) { return ParseError(last_line, 1, m); };
  if (p.command.empty()) throw fail("missing 'command'");
  if (p.command == "demo") {
    if (p.ring || p.order || p.morita || !p.matrices.empty()) throw fail("'command demo' takes no other sections");
    return;
  }
  if (needs(p.command, "ring") && !p.ring) throw fail("command " + p.command + " needs a 'ring'");
  if (needs(p.command, "order") && !p.order) throw fail("command " + p.command + " needs an 'order'");
  if (needs(p.command, "morita") && !p.morita) throw fail("command " + p.command + " needs a 'morita' order");
  if (!needs(p.command, "morita") && p.morita) throw fail("'morita' is only used by morita-fitt");
  for (const char* m : {"h", "second"})
    if (needs(p.command, m) && !p.find_matrix(m)) throw fail(std::string("command ") + p.command + " needs matrix '" + m + "'");
  if (needs(p.command, "anymatrix") && p.matrices.empty()) throw fail("command " + p.command + " needs a matrix");
}

// ---------------------------------------------------------------- printing problems

std::string coefficients_text(const Coefficients& c) {
  std::string s = "{";
  bool first = true;
  for (const auto& [k, v] : c) {
    if (!first) s += ", ";
    first = false;
    s += std::to_string(k) + ": " + to_string(v);
  }
  return s + "}";
}

bool default_sampler(const SamplerOptions& s) {
  SamplerOptions d;
  return s.max_size == d.max_size && s.coeff_bound == d.coeff_bound && s.samples == d.samples && s.seed == d.seed;
}

// ---------------------------------------------------------------- kernel objects

BaseRing make_ring(const RingSpec& r) {
  switch (r.kind) {
    case RingKind::integers:
      return BaseRing::integers();
    case RingKind::localized:
      return BaseRing::localized(r.parameter);
    case RingKind::residues:
      return BaseRing::residues(r.parameter);
    case RingKind::quadratic:
      return BaseRing::quadratic(QuadraticOrder(r.radicand));
    case RingKind::quadratic_residues:
      return BaseRing::quadratic_residues(QuadraticOrder(r.radicand), r.parameter);
  }
  throw MathError("unknown ring");
}

OrderPtr make_order(const OrderSpec& o) {
  switch (o.kind) {
    case OrderSpecKind::group:
      return Order::group_ring(std::make_shared<const FiniteGroup>(FiniteGroup::builtin(o.group)), o.prime);
    case OrderSpecKind::table:
      return Order::group_ring(std::make_shared<const FiniteGroup>(FiniteGroup::from_table(o.group, o.table)), o.prime);
    case OrderSpecKind::matrix:
      return Order::matrix_ring(o.size, o.prime);
    case OrderSpecKind::hereditary:
      return Order::congruence_hereditary(o.prime);
  }
  throw MathError("unknown order");
}

AlgebraElement algebra_element(const Order& order, const Coefficients& c) {
  RatVector v(order.dimension(), Rational(0));
  for (const auto& [k, x] : c) v.at(k) = x;
  return AlgebraElement(order.algebra(), v);
}

Coefficients coefficients_of(const RatVector& v) {
  Coefficients c;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!is_zero(v[k])) c[k] = v[k];
  return c;
}

AlgebraMatrix algebra_matrix(const Order& order, const ProblemMatrix& m) {
  AlgebraMatrix h = algebra_zero(order.algebra(), m.rows, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) h(i, j) = algebra_element(order, m.entries[i][j]);
  return h;
}

RingElement ring_element(const BaseRing& ring, const Coefficients& c) {
  auto get = [&](std::size_t k) { return c.count(k) ? c.at(k) : Rational(0); };
  return ring.element(get(0), get(1));
}

RingMatrix ring_matrix(const BaseRing& ring, const ProblemMatrix& m) {
  RingMatrix h(m.rows, m.cols, ring.element(0));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) h(i, j) = ring_element(ring, m.entries[i][j]);
  return h;
}

ProblemMatrix problem_matrix(const std::string& name, const AlgebraMatrix& h) {
  ProblemMatrix m{name, h.rows(), h.cols(), {}};
  for (std::size_t i = 0; i < h.rows(); ++i) {
    m.entries.emplace_back();
    for (std::size_t j = 0; j < h.cols(); ++j) m.entries.back().push_back(coefficients_of(h(i, j).coeffs()));
  }
  return m;
}

// ---------------------------------------------------------------- reports

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

class Report {
 public:
  explicit Report(OutputFormat format) : format_(format) {}

  void value(const std::string& label, const std::string& text) {
    if (format_ == OutputFormat::text)
      os_ << label << ": " << text << '\n';
    else
      os_ << "value " << label << ' ' << text << '\n';
  }
  void flag(const std::string& label, bool on) {
    if (format_ == OutputFormat::text)
      os_ << label << ": " << (on ? "yes" : "no") << '\n';
    else
      os_ << "flag " << label << ' ' << (on ? 1 : 0) << '\n';
  }
  // Text only.
  void note(const std::string& text) {
    if (format_ == OutputFormat::text) os_ << text << '\n';
  }
  void lattice(const std::string& label, const IntegerLattice& l, const std::string& ring,
               const std::vector<std::pair<std::string, bool>>& flags = {}) {
    if (format_ == OutputFormat::text) {
      os_ << label << ": " << describe(l) << " over " << ring;
      for (const auto& [name, on] : flags) os_ << (on ? " [" : " [not ") << name << ']';
      os_ << '\n';
      return;
    }
    os_ << "lattice " << label << ' ' << l.dimension() << ' ' << to_string(l.denominator()) << ' ';
    if (l.is_zero()) os_ << '-';
    for (std::size_t i = 0; i < l.rank(); ++i) {
      if (i) os_ << ';';
      for (std::size_t j = 0; j < l.dimension(); ++j) os_ << (j ? "," : "") << to_string(l.basis()(i, j));
    }
    os_ << ' ';
    if (flags.empty()) os_ << '-';
    for (std::size_t k = 0; k < flags.size(); ++k) os_ << (k ? "," : "") << flags[k].first << '=' << (flags[k].second ? 1 : 0);
    os_ << '\n';
  }
  void lattice(const std::string& label, const LocalLattice& l, const std::vector<std::pair<std::string, bool>>& flags = {}) {
    lattice(label, l.lattice(), "Z_(" + to_string(l.prime()) + ")", flags);
  }
  // A lattice in centre coordinates with each basis vector described by its components.
  void center_lattice(const Order& order, const std::string& label, const LocalLattice& l,
                      const std::vector<std::pair<std::string, bool>>& flags = {}) {
    lattice(label, l, flags);
    for (std::size_t i = 0; i < l.rank(); ++i) {
      RatVector g = l.lattice().generator(i);
      std::string text = order.describe_center(g);
      if (order.kind() == OrderKind::group_ring) text += " = " + order.central_element(g).to_string();
      note("  " + label + " generator: " + text);
    }
  }
  void ideal(const std::string& label, const CommIdeal& ideal) {
    const BaseRing& ring = ideal.ring();
    if (format_ == OutputFormat::text) {
      std::string gens;
      const IntegerLattice& l = ideal.lattice();
      for (std::size_t i = 0; i < l.rank(); ++i) {
        RatVector g = l.generator(i);
        gens += (i ? ", " : "") + ring.element(g[0], g.size() > 1 ? g[1] : Rational(0)).to_string();
      }
      os_ << label << ": (" << (gens.empty() ? "0" : gens) << ") in " << ring.name() << '\n';
      return;
    }
    lattice(label, ideal.lattice(), ring.name());
  }
  void matrix(const std::string& label, const ProblemMatrix& m) {
    if (format_ == OutputFormat::text) {
      os_ << label << ": " << m.rows << " x " << m.cols << '\n';
      for (const auto& row : m.entries) {
        os_ << "  row";
        for (const auto& c : row) os_ << ' ' << coefficients_text(c);
        os_ << '\n';
      }
      return;
    }
    os_ << "matrix " << label << ' ' << m.rows << ' ' << m.cols;
    for (const auto& row : m.entries)
      for (const auto& c : row) {
        std::string t = coefficients_text(c);
        t.erase(std::remove(t.begin(), t.end(), ' '), t.end());
        os_ << ' ' << t;
      }
    os_ << '\n';
  }

  std::string str() const { return os_.str(); }

 private:
  OutputFormat format_;
  std::ostringstream os_;
};

std::string coords_text(const RatVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + to_string(v[i]);
  return s + "]";
}

// ---------------------------------------------------------------- commands

int run_fitt_comm(const Problem& p, Report& r) {
  BaseRing ring = make_ring(*p.ring);
  const ProblemMatrix& hm = *p.find_matrix("h");
  CommPresentation pres(ring, ring_matrix(ring, hm));
  r.value("ring", ring.name());
  r.value("presentation", std::to_string(pres.relations()) + " x " + std::to_string(pres.generators()));
  CommIdeal fitt = fitting_ideal(pres);
  r.ideal("fitt", fitt);
  for (std::size_t i = 1; i <= pres.generators(); ++i) {
    CommIdeal higher = higher_fitting(pres, i);
    r.ideal("fitt^" + std::to_string(i), higher);
    if (higher.is_unit()) break;
  }
  if ((ring.kind() == RingKind::integers || ring.kind() == RingKind::localized) && !fitt.is_zero())
    r.ideal("annihilator", annihilator_finite(pres));
  return 0;
}

void report_fitt(const Order& order, const std::string& label, const FittingInvariantNC& f, Report& r) {
  for (std::size_t k = 0; k < f.nrd_generators.size(); ++k) {
    std::string text = order.describe_center(f.nrd_generators[k]);
    if (order.kind() == OrderKind::group_ring) text += " = " + order.central_element(f.nrd_generators[k]).to_string();
    r.value(label + ".nrd[" + std::to_string(k) + "]", text);
  }
  r.center_lattice(order, label + ".fitt", f.lattice, {{"max-certified", f.max_certified}, {"zero", f.is_zero}});
}

int run_fitt_nc(const Problem& p, Report& r) {
  OrderPtr order = make_order(*p.order);
  r.value("order", order->name());
  for (const auto& m : p.matrices) {
    PresentationNC pres(order, algebra_matrix(*order, m));
    r.value(m.name, std::to_string(m.rows) + " x " + std::to_string(m.cols));
    report_fitt(*order, m.name, fitt_presentation(pres), r);
  }
  return 0;
}

int run_nrd(const Problem& p, Report& r) {
  OrderPtr order = make_order(*p.order);
  AlgebraMatrix h = PresentationNC(order, algebra_matrix(*order, *p.find_matrix("h"))).matrix();
  r.value("order", order->name());
  RatVector n = order->nrd(h);
  r.value("nrd", order->describe_center(n));
  r.value("nrd.coords", coords_text(n));
  if (order->kind() == OrderKind::group_ring) r.value("nrd.element", order->central_element(n).to_string());
  return 0;
}

int run_adjoint(const Problem& p, Report& r) {
  OrderPtr order = make_order(*p.order);
  AlgebraMatrix h = PresentationNC(order, algebra_matrix(*order, *p.find_matrix("h"))).matrix();
  r.value("order", order->name());
  AlgebraMatrix adj = order->adjoint(h);
  r.matrix("adjoint", problem_matrix("adjoint", adj));
  AlgebraElement n = order->central_element(order->nrd(h));
  AlgebraMatrix scalar = algebra_zero(order->algebra(), h.rows(), h.cols());
  for (std::size_t i = 0; i < h.rows(); ++i) scalar(i, i) = n;
  r.flag("adjoint-law", adj * h == scalar && h * adj == scalar);
  bool integral = true;
  for (std::size_t i = 0; i < adj.rows(); ++i)
    for (std::size_t j = 0; j < adj.cols(); ++j) integral = integral && order->contains(adj(i, j));
  r.flag("integral", integral);
  return 0;
}

int run_conductor(const Problem& p, Report& r) {
  OrderPtr order = make_order(*p.order);
  r.value("order", order->name());
  ConductorData c = central_conductor(*order);
  for (std::size_t i = 0; i < c.components.size(); ++i) {
    const auto& comp = c.components[i];
    std::string label = "component[" + std::to_string(i) + "]";
    r.value(label + ".factor", to_string(comp.factor));
    r.lattice(label + ".trace-dual", comp.trace_dual);
    r.lattice(label + ".conductor", comp.lattice);
  }
  r.center_lattice(*order, "conductor", c.aggregate);
  return 0;
}

int run_conductor_variant(const Problem& p, Report& r) {
  OrderPtr order = make_order(*p.order);
  r.value("order", order->name());
  LocalLattice conductor = central_conductor(*order).aggregate;
  LocalLattice variant = conductor_variant(*order);
  r.center_lattice(*order, "conductor", conductor);
  r.center_lattice(*order, "conductor-variant", variant);
  r.flag("conductor-in-variant", lattice_contains_local(variant, conductor));
  r.value("index", to_string(order->prime()) + "^" + std::to_string(local_index_exponent(variant, conductor)));
  return 0;
}

void report_sampler(const SamplerOptions& s, std::size_t used, Report& r) {
  r.value("sampler", "max-size " + std::to_string(s.max_size) + " coeff-bound " + std::to_string(s.coeff_bound) +
                         " samples " + std::to_string(s.samples) + " seed " + std::to_string(s.seed));
  r.value("matrices-used", std::to_string(used));
}

int run_intring(const Problem& p, Report& r) {
  OrderPtr order = make_order(*p.order);
  r.value("order", order->name());
  IntegralityBounds b = integrality_ring_bounds(*order, p.sampler);
  report_sampler(p.sampler, b.matrices_used, r);
  r.center_lattice(*order, "center", order->center());
  r.center_lattice(*order, "maximal-center", order->maximal_center());
  r.center_lattice(*order, "integrality-ring", b.lower, {{"certified", b.certified}});
  r.flag("equals-center", b.lower == order->center());
  r.flag("equals-maximal-center", b.lower == order->maximal_center());
  return b.certified ? 0 : 2;
}

int run_denom(const Problem& p, Report& r) {
  OrderPtr order = make_order(*p.order);
  r.value("order", order->name());
  DenominatorBounds b = denominator_bounds(*order, p.sampler);
  report_sampler(p.sampler, b.matrices_used, r);
  r.center_lattice(*order, "denominator.lower", b.lower);
  r.center_lattice(*order, "denominator.upper", b.upper, {{"certified", b.certified}});
  bool inside = lattice_contains_local(b.upper, b.lower);
  r.flag("lower-in-upper", inside);
  r.flag("strict", inside && !(b.lower == b.upper));
  r.flag("upper-is-center", b.upper == order->center());
  return b.certified ? 0 : 2;
}

int run_dual(const Problem& p, Report& r) {
  OrderPtr order = make_order(*p.order);
  if (order->kind() != OrderKind::group_ring) throw MathError("dual needs a group ring");
  const WedderburnData& w = *order->wedderburn();
  PresentationNC pres(order, algebra_matrix(*order, *p.find_matrix("h")));
  PresentationNC dual = dual_presentation(pres);
  r.value("order", order->name());
  r.matrix("dual", problem_matrix("dual", dual.matrix()));
  bool square = pres.relations() == pres.generators();
  if (square) {
    CentralTuple n = nrd(pres.matrix(), w), nd = nrd(dual.matrix(), w);
    r.value("nrd", n.to_string());
    r.value("nrd.dual", nd.to_string());
    r.flag("dual-is-sharp", nd == conjugate_tuple(n, w));
  }
  LocalLattice f = fitt_presentation(pres).lattice, fd = fitt_presentation(dual).lattice;
  r.center_lattice(*order, "fitt", f);
  r.center_lattice(*order, "fitt.dual", fd);
  r.flag("fitt-dual-is-sharp", fd == sharp_lattice(*order, f));
  return 0;
}

int run_additivity(const Problem& p, Report& r) {
  OrderPtr order = make_order(*p.order);
  r.value("order", order->name());
  PresentationNC first(order, algebra_matrix(*order, *p.find_matrix("h")));
  PresentationNC second(order, algebra_matrix(*order, *p.find_matrix("second")));
  std::optional<PresentationNC> sum;
  if (const ProblemMatrix* s = p.find_matrix("direct-sum")) sum.emplace(order, algebra_matrix(*order, *s));
  report_fitt(*order, "h", fitt_presentation(first), r);
  report_fitt(*order, "second", fitt_presentation(second), r);
  AdditivityReport a = additivity_compare(first, second, sum);
  r.center_lattice(*order, "product", a.product);
  r.center_lattice(*order, "direct-sum", a.direct_sum);
  r.flag("additive", a.equal);
  r.flag("product-in-direct-sum", lattice_contains_local(a.direct_sum, a.product));
  if (!a.equal && lattice_contains_local(a.direct_sum, a.product))
    r.note("strict inclusion: product is a proper sublattice of direct-sum");
  return 0;
}

int run_morita_fitt(const Problem& p, Report& r) {
  BaseRing ring = make_ring(*p.ring);
  const MoritaSpec& ms = *p.morita;
  std::optional<QuadIdeal> twist;
  if (!ms.twist.empty()) {
    std::vector<QuadNumber> gens;
    for (const auto& c : ms.twist) gens.push_back(ring_element(ring, c));
    twist = QuadIdeal::generated_by(ring.order(), gens);
  }
  EndOrder order = twist ? EndOrder::twisted(*twist) : EndOrder::matrix_ring(ring, ms.size);
  const ProblemMatrix& hm = *p.find_matrix("h");
  if (hm.rows % ms.size != 0 || hm.cols % ms.size != 0)
    throw MathError("matrix h must have a multiple of " + std::to_string(ms.size) + " rows and columns");
  MoritaPresentation pres(order, ring_matrix(ring, hm));
  r.value("ring", ring.name());
  if (twist) {
    r.value("twist", twist->to_string());
    PrincipalSearch s = is_principal(*twist, Integer(64));
    r.value("twist.principal", !s.decided ? "undecided" : s.generator ? "yes, generated by " + s.generator->to_string()
                                                                      : "no (decided)");
  }
  r.value("endomorphism-order", twist ? "End(R + a)" : "M_" + std::to_string(ms.size) + "(R)");
  r.value("presentation", std::to_string(pres.relations()) + " x " + std::to_string(pres.generators()) + " over End");
  CommIdeal f = morita_fitt(pres);
  r.ideal("fitt", f);
  if (!twist) {
    CommIdeal restricted = fitting_ideal(restriction_presentation(pres));
    r.ideal("fitt.restriction", restricted);
    r.flag("power-law", restricted == f.power(static_cast<unsigned>(ms.size)));
  }
  return 0;
}

int run(const Problem& p, Report& r);

int run_demo(const Problem& p, Report& r) { return run(demo_problem(p.demo), r); }

int run(const Problem& p, Report& r) {
  static const std::map<std::string, int (*)(const Problem&, Report&)> table = {
      {"fitt-comm", run_fitt_comm}, {"fitt-nc", run_fitt_nc},       {"nrd", run_nrd},
      {"adjoint", run_adjoint},     {"conductor", run_conductor},   {"conductor-variant", run_conductor_variant},
      {"intring", run_intring},     {"denom", run_denom},           {"dual", run_dual},
      {"additivity", run_additivity}, {"morita-fitt", run_morita_fitt}, {"demo", run_demo}};
  return table.at(p.command)(p, r);
}

// ---------------------------------------------------------------- demos

ProblemMatrix make_matrix(const std::string& name, std::vector<std::vector<Coefficients>> rows) {
  ProblemMatrix m{name, rows.size(), rows.empty() ? 0 : rows[0].size(), std::move(rows)};
  return m;
}

Problem group_problem(const std::string& command, const std::string& group, long p) {
  Problem pr;
  pr.command = command;
  pr.order = OrderSpec{OrderSpecKind::group, group, {}, 0, Integer(p)};
  return pr;
}

unsigned demo_number(const std::vector<std::string>& demo, std::size_t k, unsigned fallback) {
  if (demo.size() <= k) return fallback;
  Rational v = parse_rational(demo[k]);
  if (v.get_den() != 1 || sgn(v) <= 0 || !v.get_num().fits_uint_p()) throw MathError("bad demo argument '" + demo[k] + "'");
  return static_cast<unsigned>(v.get_num().get_ui());
}

// Delta(G) = kernel of the augmentation, presented as Lambda^k / syzygies of (g_1 - 1, ..., g_k - 1).
Problem augmentation_demo(const std::string& group, unsigned p) {
  Problem pr = group_problem("fitt-nc", group, p);
  OrderPtr order = make_order(*pr.order);
  const auto& g = order->wedderburn()->group();
  std::vector<std::size_t> gens = g.generators();
  std::size_t n = g.order(), k = gens.size();
  AlgebraElement one = AlgebraElement::one(order->algebra());
  IntMatrix map = int_zero_matrix(k * n, n);
  for (std::size_t s = 0; s < k; ++s) {
    AlgebraElement d = AlgebraElement::basis(order->algebra(), gens[s]) - one;
    for (std::size_t x = 0; x < n; ++x) {
      AlgebraElement image = AlgebraElement::basis(order->algebra(), x) * d;
      for (std::size_t c = 0; c < n; ++c) map(s * n + x, c) = image.coeff(c).get_num();
    }
  }
  IntMatrix kernel = integer_left_kernel(map);
  std::vector<std::vector<AlgebraElement>> rows;
  for (std::size_t i = 0; i < kernel.rows(); ++i) {
    std::vector<AlgebraElement> row;
    for (std::size_t s = 0; s < k; ++s) {
      RatVector v(n);
      for (std::size_t c = 0; c < n; ++c) v[c] = Rational(kernel(i, s * n + c));
      row.emplace_back(order->algebra(), v);
    }
    rows.push_back(std::move(row));
  }
  pr.matrices.push_back(problem_matrix("h", presentation_of_submodule(order, rows, k).matrix()));
  return pr;
}

}  // namespace

// ---------------------------------------------------------------- public

const ProblemMatrix* Problem::find_matrix(const std::string& name) const {
  for (const auto& m : matrices)
    if (m.name == name) return &m;
  return nullptr;
}

bool operator==(const Problem& a, const Problem& b) {
  return a.version == b.version && a.command == b.command && a.demo == b.demo && a.ring == b.ring &&
         a.order == b.order && a.morita == b.morita && a.matrices == b.matrices &&
         a.sampler.max_size == b.sampler.max_size && a.sampler.coeff_bound == b.sampler.coeff_bound &&
         a.sampler.samples == b.sampler.samples && a.sampler.seed == b.sampler.seed && a.format == b.format;
}

Problem parse_problem(const std::string& text) {
  Problem p;
  bool header = false;
  std::size_t line_no = 0, pending_table = 0, pending_rows = 0;
  std::istringstream is(text);
  std::string line;
  std::set<std::string> seen;
  while (std::getline(is, line)) {
    ++line_no;
    LineParser lp(line_no, tokenize(line, line_no));
    if (lp.tokens().empty()) continue;
    const std::string& key = lp.at(0).text;
    if (!header) {
      if (key != "fittkit") throw lp.error(0, "expected 'fittkit <version>' header");
      lp.expect_count(2);
      if (lp.integer(1) != 1) throw lp.error(1, "unsupported format version");
      header = true;
      continue;
    }
    if (pending_table) {
      if (key != "table") throw lp.error(0, "expected 'table' row");
      std::size_t n = p.order->size;
      lp.expect_count(n + 1);
      std::vector<std::size_t> row;
      for (std::size_t k = 1; k <= n; ++k) {
        row.push_back(lp.size(k));
        if (row.back() >= n) throw lp.error(k, "group element index out of range");
      }
      p.order->table.push_back(row);
      if (--pending_table == 0) p.order->size = 0;
      continue;
    }
    if (pending_rows) {
      if (key != "row") throw lp.error(0, "expected 'row'");
      ProblemMatrix& m = p.matrices.back();
      lp.expect_count(m.cols + 1);
      std::size_t dim = coefficient_dimension(p, lp, 0);
      std::vector<Coefficients> row;
      for (std::size_t k = 1; k <= m.cols; ++k) row.push_back(lp.coefficients(k, dim));
      m.entries.push_back(std::move(row));
      --pending_rows;
      continue;
    }
    if (key == "command") {
      if (!p.command.empty()) throw lp.error(0, "command given twice");
      const std::string& name = lp.at(1).text;
      if (std::find(command_names().begin(), command_names().end(), name) == command_names().end())
        throw lp.error(1, "unknown command '" + name + "'");
      p.command = name;
      if (name == "demo") {
        lp.at(2);
        for (std::size_t k = 2; k < lp.tokens().size(); ++k) p.demo.push_back(lp.tokens()[k].text);
      } else {
        lp.expect_count(2);
      }
    } else if (key == "ring") {
      parse_ring(p, lp);
    } else if (key == "order") {
      parse_order(p, lp);
      if (p.order->kind == OrderSpecKind::table) pending_table = p.order->size;
    } else if (key == "morita") {
      parse_morita(p, lp);
    } else if (key == "matrix") {
      lp.expect_count(4);
      std::string name = lp.at(1).text;
      if (p.find_matrix(name)) throw lp.error(1, "matrix '" + name + "' given twice");
      coefficient_dimension(p, lp, 0);
      p.matrices.push_back({name, lp.size(2), lp.size(3), {}});
      pending_rows = p.matrices.back().rows;
    } else if (key == "sampler") {
      if (!seen.insert(key).second) throw lp.error(0, "sampler given twice");
      parse_sampler(p, lp);
    } else if (key == "format") {
      if (!seen.insert(key).second) throw lp.error(0, "format given twice");
      lp.expect_count(2);
      const std::string& f = lp.at(1).text;
      if (f == "text")
        p.format = OutputFormat::text;
      else if (f == "machine")
        p.format = OutputFormat::machine;
      else
        throw lp.error(1, "format must be 'text' or 'machine'");
    } else {
      throw lp.error(0, "unknown keyword '" + key + "'");
    }
  }
  if (!header) throw ParseError(std::max<std::size_t>(line_no, 1), 1, "empty problem: missing 'fittkit <version>' header");
  if (pending_table) throw ParseError(line_no, 1, "group table incomplete");
  if (pending_rows) throw ParseError(line_no, 1, "matrix '" + p.matrices.back().name + "' is missing rows");
  if (p.order && p.order->kind == OrderSpecKind::table) {
    try {
      FiniteGroup::from_table(p.order->group, p.order->table);
    } catch (const MathError& e) {
      throw ParseError(line_no, 1, e.what());
    }
  }
  validate(p, line_no);
  return p;
}

std::string print_problem(const Problem& p) {
  std::ostringstream os;
  os << "fittkit " << p.version << '\n';
  os << "command " << p.command;
  for (const auto& d : p.demo) os << ' ' << d;
  os << '\n';
  if (p.ring) {
    const RingSpec& r = *p.ring;
    os << "ring ";
    switch (r.kind) {
      case RingKind::integers: os << "integers"; break;
      case RingKind::localized: os << "local " << r.parameter; break;
      case RingKind::residues: os << "residues " << r.parameter; break;
      case RingKind::quadratic: os << "quadratic " << r.radicand; break;
      case RingKind::quadratic_residues: os << "quadratic-residues " << r.radicand << ' ' << r.parameter; break;
    }
    os << '\n';
  }
  if (p.morita) {
    if (p.morita->twist.empty()) {
      os << "morita matrix " << p.morita->size << '\n';
    } else {
      os << "morita twisted";
      for (const auto& c : p.morita->twist) os << ' ' << coefficients_text(c);
      os << '\n';
    }
  }
  if (p.order) {
    const OrderSpec& o = *p.order;
    switch (o.kind) {
      case OrderSpecKind::group: os << "order group " << o.group << ' ' << o.prime << '\n'; break;
      case OrderSpecKind::table:
        os << "order table " << o.group << ' ' << o.table.size() << ' ' << o.prime << '\n';
        for (const auto& row : o.table) {
          os << "table";
          for (auto x : row) os << ' ' << x;
          os << '\n';
        }
        break;
      case OrderSpecKind::matrix: os << "order matrix " << o.size << ' ' << o.prime << '\n'; break;
      case OrderSpecKind::hereditary: os << "order hereditary " << o.prime << '\n'; break;
    }
  }
  for (const auto& m : p.matrices) {
    os << "matrix " << m.name << ' ' << m.rows << ' ' << m.cols << '\n';
    for (const auto& row : m.entries) {
      os << "row";
      for (const auto& c : row) os << ' ' << coefficients_text(c);
      os << '\n';
    }
  }
  if (!default_sampler(p.sampler) || p.command == "intring" || p.command == "denom")
    os << "sampler max-size " << p.sampler.max_size << " coeff-bound " << p.sampler.coeff_bound << " samples "
       << p.sampler.samples << " seed " << p.sampler.seed << '\n';
  if (p.format == OutputFormat::machine) os << "format machine\n";
  return os.str();
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

ExecutionResult execute(const Problem& problem) {
  Report r(problem.format);
  std::string header = "input fnv1a:" + hex64(fnv1a(print_problem(problem)));
  ExecutionResult result;
  try {
    int code = run(problem, r);
    result.exit_code = code;
    std::string status = code == 0 ? "ok" : "uncertified";
    result.output = (problem.format == OutputFormat::text ? "fittkit 1\n" : "") + header + "\ncommand " + problem.command +
                    "\n" + r.str() + "status " + status + '\n';
  } catch (const std::exception& e) {
    result.exit_code = 1;
    result.output = (problem.format == OutputFormat::text ? "fittkit 1\n" : "") + header + "\ncommand " + problem.command +
                    "\n" + r.str() + "error " + e.what() + "\nstatus error\n";
  }
  return result;
}

std::vector<std::string> demo_names() {
  return {"abelian", "dependence_on_h", "hereditary", "delta-g", "dihedral-variant", "s4-denom", "aff-denom", "sqrt-5"};
}

Problem demo_problem(const std::vector<std::string>& demo) {
  if (demo.empty()) throw MathError("demo needs a name");
  const std::string& name = demo[0];
  auto c = [](std::initializer_list<std::pair<const std::size_t, Rational>> items) {
    Coefficients out;
    for (const auto& [k, v] : items)
      if (!is_zero(v)) out[k] = v;
    return out;
  };
  auto max_args = [&](std::size_t n) {
    if (demo.size() > n + 1) throw MathError("too many arguments for demo " + name);
  };
  Problem pr;
  if (name == "abelian") {
    max_args(0);
    pr.command = "fitt-comm";
    pr.ring = RingSpec{};
    pr.matrices.push_back(make_matrix("h", {{c({{0, 2}}), {}}, {{}, c({{0, 4}})}}));
  } else if (name == "dependence_on_h") {
    max_args(0);
    pr.command = "fitt-nc";
    pr.order = OrderSpec{OrderSpecKind::matrix, "", {}, 2, Integer(3)};
    pr.matrices.push_back(make_matrix("h", {{c({{0, 4}, {1, 1}, {2, 1}, {3, 4}})}, {c({{0, 5}, {1, 1}, {2, 1}, {3, 5}})}}));
    pr.matrices.push_back(make_matrix("identity", {{c({{0, 1}, {3, 1}})}}));
  } else if (name == "hereditary") {
    max_args(1);
    unsigned p = demo_number(demo, 1, 3);
    pr.command = "additivity";
    pr.order = OrderSpec{OrderSpecKind::hereditary, "", {}, 0, Integer(p)};
    // X = p E12 + E21 generates the radical
    Coefficients x = c({{1, Rational(p)}, {2, 1}});
    pr.matrices.push_back(make_matrix("h", {{x}, {c({{3, 1}})}}));
    pr.matrices.push_back(make_matrix("second", {{x}, {c({{0, 1}})}}));
    pr.matrices.push_back(make_matrix("direct-sum", {{x}}));
  } else if (name == "delta-g") {
    max_args(2);
    std::string group = demo.size() > 1 ? demo[1] : "S3";
    pr = augmentation_demo(group, demo_number(demo, 2, 3));
  } else if (name == "dihedral-variant") {
    max_args(1);
    unsigned a = demo_number(demo, 1, 3);
    if (a < 2 || a > 6) throw MathError("dihedral-variant takes 2 <= a <= 6");
    pr = group_problem("conductor-variant", "D" + std::to_string(1u << a), 2);
  } else if (name == "s4-denom") {
    max_args(0);
    pr = group_problem("denom", "S4", 2);
    pr.sampler = SamplerOptions{1, 1, 6, 1};
  } else if (name == "aff-denom") {
    max_args(1);
    unsigned q = demo_number(demo, 1, 4);
    pr = group_problem("denom", "Aff(" + std::to_string(q) + ")", 2);
    pr.sampler = SamplerOptions{1, 1, 6, 1};
  } else if (name == "sqrt-5") {
    max_args(0);
    pr.command = "morita-fitt";
    pr.ring = RingSpec{RingKind::quadratic, -5, Integer(0)};
    pr.morita = MoritaSpec{2, {c({{0, 2}}), c({{0, 1}, {1, 1}})}};
    pr.matrices.push_back(make_matrix("h", {{c({{0, 2}}), {}}, {{}, c({{0, 2}})}}));
  } else {
    throw MathError("unknown demo '" + name + "'");
  }
  return pr;
}

}  // namespace fittkit
