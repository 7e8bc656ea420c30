#include <fittkit/ncfit.hpp>
#include <fittkit/random.hpp>

#include <algorithm>

namespace fittkit {

namespace {

RatVector unit_vector(std::size_t n, std::size_t i) {
  RatVector v(n, Rational(0));
  v[i] = 1;
  return v;
}

// Block sum of m copies of a lattice.
IntegerLattice power_lattice(const IntegerLattice& l, std::size_t m) {
  const std::size_t d = l.dimension();
  std::vector<RatVector> gens;
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < l.rank(); ++k) {
      RatVector v(m * d, Rational(0));
      RatVector g = l.generator(k);
      std::copy(g.begin(), g.end(), v.begin() + static_cast<long>(j * d));
      gens.push_back(std::move(v));
    }
  return IntegerLattice::from_generators(m * d, gens);
}

RatVector flatten_row(const std::vector<AlgebraElement>& row, std::size_t dim) {
  RatVector v;
  v.reserve(row.size() * dim);
  for (const auto& x : row) v.insert(v.end(), x.coeffs().begin(), x.coeffs().end());
  return v;
}

std::vector<AlgebraElement> unflatten_row(const AlgebraPtr& alg, const RatVector& v, std::size_t b) {
  const std::size_t dim = alg->dimension();
  std::vector<AlgebraElement> row;
  for (std::size_t j = 0; j < b; ++j)
    row.emplace_back(alg, RatVector(v.begin() + static_cast<long>(j * dim), v.begin() + static_cast<long>((j + 1) * dim)));
  return row;
}

std::vector<std::vector<AlgebraElement>> rows_of(const AlgebraMatrix& h) {
  std::vector<std::vector<AlgebraElement>> out;
  for (std::size_t i = 0; i < h.rows(); ++i) out.push_back(h.row(i));
  return out;
}

// M_b(M_n(Q)) as (b n) x (b n) rational matrices.
RatMatrix flatten_matrix(const AlgebraMatrix& h, std::size_t n) {
  RatMatrix f = rat_zero_matrix(h.rows() * n, h.cols() * n);
  for (std::size_t r = 0; r < h.rows(); ++r)
    for (std::size_t c = 0; c < h.cols(); ++c)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) f(r * n + i, c * n + j) = h(r, c).coeff(i * n + j);
  return f;
}

AlgebraMatrix unflatten_matrix(const AlgebraPtr& alg, const RatMatrix& f, std::size_t n) {
  const std::size_t b = f.rows() / n;
  AlgebraMatrix h = algebra_zero(alg, b, f.cols() / n);
  for (std::size_t r = 0; r < h.rows(); ++r)
    for (std::size_t c = 0; c < h.cols(); ++c) {
      RatVector v(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) v[i * n + j] = f(r * n + i, c * n + j);
      h(r, c) = AlgebraElement(alg, std::move(v));
    }
  return h;
}

bool lex_less(const AlgebraMatrix& a, const AlgebraMatrix& b) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto& x = a(i, j).coeffs();
      const auto& y = b(i, j).coeffs();
      for (std::size_t k = 0; k < x.size(); ++k)
        if (x[k] != y[k]) return x[k] < y[k];
    }
  return false;
}

const WedderburnData& require_group_ring(const Order& order, const char* what) {
  if (order.kind() != OrderKind::group_ring) throw MathError(std::string(what) + " needs a group ring");
  return *order.wedderburn();
}

}  // namespace

Order::Order(OrderKind kind, Integer p)
    : kind_(kind),
      p_(std::move(p)),
      lattice_(0),
      local_(p_, IntegerLattice(0)),
      center_order_(p_, IntegerLattice(0)),
      center_max_(p_, IntegerLattice(0)) {
  if (!is_prime(p_)) throw MathError("orders are localized at a prime, got " + to_string(p_));
}

std::shared_ptr<const Order> Order::group_ring(std::shared_ptr<const WedderburnData> data, Integer p) {
  if (!data) throw MathError("group ring without Wedderburn data");
  std::shared_ptr<Order> o(new Order(OrderKind::group_ring, std::move(p)));
  o->algebra_ = data->algebra();
  o->lattice_ = IntegerLattice::standard(data->group().order());
  o->local_ = LocalLattice(o->p_, o->lattice_);
  o->center_ = std::shared_ptr<const StructureAlgebra>(data, &data->center_algebra());
  o->center_order_ = LocalLattice(o->p_, data->center_of_group_ring());
  o->center_max_ = LocalLattice::standard(o->p_, data->center_dimension());
  o->data_ = std::move(data);
  return o;
}

std::shared_ptr<const Order> Order::group_ring(GroupPtr g, Integer p) {
  return group_ring(std::make_shared<const WedderburnData>(WedderburnData::builtin(std::move(g))), std::move(p));
}

std::shared_ptr<const Order> Order::matrix_ring(std::size_t n, Integer p) {
  if (n == 0) throw MathError("matrix ring of size zero");
  std::shared_ptr<Order> o(new Order(OrderKind::matrix_ring, std::move(p)));
  o->algebra_ = std::make_shared<const MatrixAlgebra>(n);
  o->matrix_size_ = n;
  o->lattice_ = IntegerLattice::standard(n * n);
  o->local_ = LocalLattice(o->p_, o->lattice_);
  o->center_ = std::make_shared<const StructureAlgebra>(StructureAlgebra::rationals());
  o->center_order_ = LocalLattice::standard(o->p_, 1);
  o->center_max_ = o->center_order_;
  return o;
}

std::shared_ptr<const Order> Order::congruence_hereditary(Integer p) {
  std::shared_ptr<Order> o(new Order(OrderKind::congruence_hereditary, std::move(p)));
  o->algebra_ = std::make_shared<const MatrixAlgebra>(2);
  o->matrix_size_ = 2;
  RatVector pe12 = unit_vector(4, 1);
  pe12[1] = Rational(o->p_);
  o->lattice_ = IntegerLattice::from_generators(4, {unit_vector(4, 0), pe12, unit_vector(4, 2), unit_vector(4, 3)});
  o->local_ = LocalLattice(o->p_, o->lattice_);
  o->center_ = std::make_shared<const StructureAlgebra>(StructureAlgebra::rationals());
  o->center_order_ = LocalLattice::standard(o->p_, 1);
  o->center_max_ = o->center_order_;
  return o;
}

std::string Order::name() const {
  const std::string local = "Z_(" + p_.get_str() + ")";
  switch (kind_) {
    case OrderKind::group_ring:
      return local + "[" + data_->group().name() + "]";
    case OrderKind::matrix_ring:
      return "M_" + std::to_string(matrix_size_) + "(" + local + ")";
    case OrderKind::congruence_hereditary:
      return "hereditary order in M_2(" + local + ")";
  }
  return local;
}

AlgebraElement Order::basis_element(std::size_t k) const { return AlgebraElement(algebra_, lattice_.generator(k)); }

bool Order::contains(const AlgebraElement& x) const {
  return x.structure() == algebra_ && lattice_membership(x.coeffs(), local_);
}

AlgebraElement Order::element(const RatVector& coeffs) const {
  AlgebraElement x(algebra_, coeffs);
  if (!contains(x)) throw MathError("element " + x.to_string() + " is not in " + name());
  return x;
}

AlgebraElement Order::central_element(const RatVector& coords) const {
  if (coords.size() != center_dimension()) throw MathError("centre coordinates have the wrong length");
  if (data_) return data_->central_element(coords);
  return coords[0] * AlgebraElement::one(algebra_);
}

RatVector Order::central_coords(const AlgebraElement& x) const {
  if (data_) return data_->central_coords(x);
  const Rational c = x.coeff(0);
  if (!(x == c * AlgebraElement::one(algebra_))) throw MathError("element is not central");
  return {c};
}

RatVector Order::nrd(const AlgebraMatrix& h) const {
  if (h.rows() != h.cols()) throw MathError("reduced norm of a non-square matrix");
  if (data_) {
    if (h.rows() == 0) return data_->tuple_coords(std::vector<CyclotomicNumber>(data_->components(), CyclotomicNumber(1, Rational(1))));
    return data_->tuple_coords(fittkit::nrd(h, *data_).values());
  }
  if (h.rows() == 0) return {Rational(1)};
  return {det_exact(flatten_matrix(h, matrix_size_), Rational(1))};
}

AlgebraMatrix Order::adjoint(const AlgebraMatrix& h) const {
  if (h.rows() != h.cols()) throw MathError("adjoint of a non-square matrix");
  if (h.rows() == 0) return h;
  if (data_) return generalized_adjoint(h, *data_);
  const RatMatrix f = flatten_matrix(h, matrix_size_);
  const std::size_t n = f.rows();
  const auto c = charpoly_exact(f, Rational(1));
  RatMatrix acc = rat_identity(n);  // c_n = 1
  for (std::size_t j = n - 1; j >= 1; --j) {
    acc = acc * f;
    RatMatrix next = acc;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[j];
    acc = std::move(next);
  }
  if (n % 2 == 1) return unflatten_matrix(algebra_, acc, matrix_size_);
  return unflatten_matrix(algebra_, map_matrix(acc, [](const Rational& x) { return Rational(-x); }), matrix_size_);
}

std::string Order::describe_center(const RatVector& coords) const {
  if (data_) return CentralTuple(*data_, data_->coords_tuple(coords)).to_string();
  return to_string(coords.at(0));
}

PresentationNC::PresentationNC(OrderPtr order, AlgebraMatrix h) : order_(std::move(order)), h_(std::move(h)) {
  if (!order_) throw MathError("presentation without an order");
  for (std::size_t i = 0; i < h_.rows(); ++i)
    for (std::size_t j = 0; j < h_.cols(); ++j) {
      if (h_(i, j).structure() != order_->algebra())
        throw MathError("presentation entry lives in a different algebra");
      if (!order_->contains(h_(i, j)))
        throw MathError("presentation entry " + h_(i, j).to_string() + " is not in " + order_->name());
    }
}

PresentationNC PresentationNC::identity(OrderPtr order, std::size_t b) {
  auto h = algebra_identity(order->algebra(), b);
  return PresentationNC(std::move(order), std::move(h));
}

PresentationNC PresentationNC::from_rows(OrderPtr order, const std::vector<std::vector<AlgebraElement>>& rows, std::size_t b) {
  AlgebraMatrix h = AlgebraMatrix::with_cols(b);
  for (const auto& r : rows) {
    if (r.size() != b) throw MathError("relation has " + std::to_string(r.size()) + " entries, expected " + std::to_string(b));
    h.append_row(r);
  }
  return PresentationNC(std::move(order), std::move(h));
}

FittingInvariantNC fitt_presentation(const PresentationNC& pres, const LocalLattice* integrality) {
  const Order& order = *pres.order();
  const std::size_t a = pres.relations(), b = pres.generators();
  const std::size_t c = order.center_dimension();
  FittingInvariantNC out{{}, LocalLattice::zero(order.prime(), c)};
  out.max_certified = a == b;
  if (a < b) {
    out.is_zero = true;
    return out;
  }
  if (binomial(a, b) > minor_cap())
    throw MinorCapExceeded("Fitting invariant needs " + std::to_string(binomial(a, b)) + " reduced norms, cap is " +
                           std::to_string(minor_cap()));
  std::vector<std::size_t> subset(b), cols(b);
  for (std::size_t i = 0; i < b; ++i) subset[i] = cols[i] = i;
  do {
    AlgebraMatrix sub = b == 0 ? AlgebraMatrix::with_cols(0) : submatrix(pres.matrix(), subset, cols);
    out.nrd_generators.push_back(order.nrd(sub));
  } while (b > 0 && next_combination(subset, a));
  LocalLattice span(order.prime(), IntegerLattice::from_generators(c, out.nrd_generators));
  out.lattice = lattice_combine(order.center(), span, CombineMode::product, &order.center_algebra());
  if (integrality) {
    out.lattice = lattice_combine(out.lattice, *integrality, CombineMode::product, &order.center_algebra());
    out.integrality_applied = true;
  }
  out.is_zero = out.lattice.is_zero();
  return out;
}

PresentationNC pad_presentation(const PresentationNC& pres, std::size_t b) {
  if (b < pres.generators()) throw MathError("cannot pad a presentation to fewer generators");
  return direct_sum(pres, PresentationNC::identity(pres.order(), b - pres.generators()));
}

PresentationNC join_presentations(const PresentationNC& first, const PresentationNC& second) {
  if (first.order() != second.order()) throw MathError("presentations over different orders");
  const std::size_t b = std::max(first.generators(), second.generators());
  auto a = pad_presentation(first, b), c = pad_presentation(second, b);
  AlgebraMatrix h = a.matrix();
  for (std::size_t i = 0; i < c.relations(); ++i) h.append_row(c.matrix().row(i));
  return PresentationNC(first.order(), std::move(h));
}

PresentationNC direct_sum(const PresentationNC& first, const PresentationNC& second) {
  if (first.order() != second.order()) throw MathError("presentations over different orders");
  const auto& alg = first.order()->algebra();
  const std::size_t b1 = first.generators(), b2 = second.generators();
  AlgebraMatrix h = AlgebraMatrix::with_cols(b1 + b2);
  const auto zero = AlgebraElement::zero(alg);
  for (std::size_t i = 0; i < first.relations(); ++i) {
    auto r = first.matrix().row(i);
    r.resize(b1 + b2, zero);
    h.append_row(r);
  }
  for (std::size_t i = 0; i < second.relations(); ++i) {
    std::vector<AlgebraElement> r(b1, zero);
    auto s = second.matrix().row(i);
    r.insert(r.end(), s.begin(), s.end());
    h.append_row(r);
  }
  return PresentationNC(first.order(), std::move(h));
}

IntegerLattice row_module_lattice(const Order& order, const std::vector<std::vector<AlgebraElement>>& rows, std::size_t b) {
  const std::size_t dim = order.dimension();
  std::vector<RatVector> gens;
  for (const auto& r : rows) {
    if (r.size() != b) throw MathError("row has the wrong length");
    for (std::size_t k = 0; k < order.lattice().rank(); ++k) {
      const auto beta = order.basis_element(k);
      std::vector<AlgebraElement> scaled;
      for (const auto& x : r) scaled.push_back(beta * x);
      gens.push_back(flatten_row(scaled, dim));
    }
  }
  return IntegerLattice::from_generators(b * dim, gens);
}

PresentationNC presentation_of_submodule(const OrderPtr& order, const std::vector<std::vector<AlgebraElement>>& rows,
                                         std::size_t b) {
  const Integer& p = order->prime();
  const LocalLattice target(p, row_module_lattice(*order, rows, b));
  std::vector<std::vector<AlgebraElement>> chosen;
  LocalLattice current = LocalLattice::zero(p, b * order->dimension());
  for (const auto& r : rows) {
    if (current == target) break;
    chosen.push_back(r);
    LocalLattice next(p, row_module_lattice(*order, chosen, b));
    if (next == current)
      chosen.pop_back();
    else
      current = std::move(next);
  }
  return PresentationNC::from_rows(order, chosen, b);
}

CenterCoords maximal_center(const Order& order) {
  return {order.center_algebra_ptr(), order.center(), order.maximal_center()};
}

std::vector<AlgebraMatrix> sample_matrices(const Order& order, const SamplerOptions& options) {
  const auto& alg = order.algebra();
  const std::size_t rank = order.lattice().rank();
  Rng rng(options.seed);
  std::vector<AlgebraMatrix> out;
  for (std::size_t s = 1; s <= options.max_size; ++s) {
    std::vector<AlgebraMatrix> fixed;
    auto push_fixed = [&](AlgebraMatrix m) {
      if (std::find(fixed.begin(), fixed.end(), m) == fixed.end()) fixed.push_back(std::move(m));
    };
    push_fixed(algebra_zero(alg, s, s));
    push_fixed(algebra_identity(alg, s));
    for (std::size_t k = 0; k < rank; ++k) push_fixed(scale(order.basis_element(k), algebra_identity(alg, s)));
    if (s == 1 && order.dimension() <= 12)
      for (std::size_t j = 0; j < rank; ++j)
        for (std::size_t k = j + 1; k < rank; ++k) {
          push_fixed(AlgebraMatrix(1, 1, order.basis_element(j) + order.basis_element(k)));
          push_fixed(AlgebraMatrix(1, 1, order.basis_element(j) - order.basis_element(k)));
        }
    std::vector<AlgebraMatrix> random;
    for (std::size_t t = 0; t < options.samples; ++t) {
      AlgebraMatrix m = algebra_zero(alg, s, s);
      for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j)
          for (std::size_t k = 0; k < rank; ++k) {
            const long c = rng.uniform(-options.coeff_bound, options.coeff_bound);
            if (c != 0) m(i, j) = m(i, j) + Rational(c) * order.basis_element(k);
          }
      random.push_back(std::move(m));
    }
    std::sort(random.begin(), random.end(), lex_less);
    random.erase(std::unique(random.begin(), random.end()), random.end());
    out.insert(out.end(), fixed.begin(), fixed.end());
    for (auto& m : random)
      if (std::find(fixed.begin(), fixed.end(), m) == fixed.end()) out.push_back(std::move(m));
  }
  return out;
}

IntegralityBounds integrality_ring_bounds(const Order& order, const SamplerOptions& options) {
  const auto& alg = order.center_algebra();
  IntegralityBounds out{order.center()};
  out.certified = out.lower == order.maximal_center();
  if (out.certified) return out;
  for (const auto& h : sample_matrices(order, options)) {
    ++out.matrices_used;
    const RatVector n = order.nrd(h);
    if (lattice_membership(n, out.lower)) continue;
    LocalLattice l = lattice_combine(
        out.lower,
        lattice_combine(order.center(), LocalLattice(order.prime(), IntegerLattice::from_generators(n.size(), {n})),
                        CombineMode::product, &alg),
        CombineMode::sum);
    for (;;) {
      LocalLattice next = lattice_combine(l, lattice_combine(l, l, CombineMode::product, &alg), CombineMode::sum);
      if (next == l) break;
      l = std::move(next);
    }
    out.lower = std::move(l);
    if (out.lower == order.maximal_center()) {
      out.certified = true;
      break;
    }
  }
  return out;
}

DenominatorBounds denominator_bounds(const Order& order, const SamplerOptions& options) {
  // Matrix rings and the hereditary order have integral adjoints (the latter is a conjugate of a
  // matrix ring intersected with it), so the centre itself is a lower bound there.
  LocalLattice lower = order.center();
  if (order.kind() == OrderKind::group_ring)
    lower = lattice_combine(central_conductor(order).aggregate, conductor_variant(order), CombineMode::sum);
  DenominatorBounds out{lower, order.center()};
  const std::size_t c = order.center_dimension(), dim = order.dimension();
  for (const auto& h : sample_matrices(order, options)) {
    if (out.lower == out.upper) break;
    ++out.matrices_used;
    const AlgebraMatrix adj = order.adjoint(h);
    const std::size_t b = h.rows();
    RatMatrix t = rat_zero_matrix(c, b * b * dim);
    for (std::size_t k = 0; k < c; ++k) {
      const auto z = order.central_element(unit_vector(c, k));
      for (std::size_t r = 0; r < b; ++r)
        for (std::size_t s = 0; s < b; ++s) {
          const auto x = z * adj(r, s);
          for (std::size_t i = 0; i < dim; ++i) t(k, (r * b + s) * dim + i) = x.coeff(i);
        }
    }
    out.upper = LocalLattice(order.prime(),
                             lattice_preimage(out.upper.lattice(), t, power_lattice(order.lattice(), b * b)));
  }
  out.certified = out.lower == out.upper;
  return out;
}

ConductorData central_conductor(const Order& order) {
  const Integer& p = order.prime();
  if (order.kind() == OrderKind::matrix_ring) {
    auto one = LocalLattice::standard(p, 1);
    return {{{Rational(1), one, one}}, one};
  }
  const auto& data = require_group_ring(order, "the central conductor");
  const auto& alg = data.center_algebra();
  const std::size_t c = data.center_dimension();
  ConductorData out{{}, LocalLattice::zero(p, c)};
  std::vector<RatVector> aggregate;
  for (std::size_t i = 0; i < data.components(); ++i) {
    const std::size_t off = data.offset(i), deg = data.field_degree(i);
    RatMatrix form = rat_zero_matrix(deg, deg);
    for (std::size_t a = 0; a < deg; ++a)
      for (std::size_t b = 0; b < deg; ++b) {
        const RatMatrix mult = alg.right_mult_matrix(alg.multiply(unit_vector(c, off + a), unit_vector(c, off + b)));
        Rational tr = 0;
        for (std::size_t k = 0; k < deg; ++k) tr += mult(off + k, off + k);
        form(a, b) = tr;
      }
    const auto inv = inverse(form);
    if (!inv) throw MathError("degenerate trace form");
    const Rational factor = ratio(Integer(data.group().order()), Integer(data.irrep(i).dimension));
    std::vector<RatVector> dual_rows;
    for (std::size_t a = 0; a < deg; ++a) dual_rows.push_back(inv->row(a));
    LocalLattice dual(p, IntegerLattice::from_generators(deg, dual_rows));
    LocalLattice scaled = lattice_scale(dual, factor);
    for (std::size_t k = 0; k < scaled.rank(); ++k) {
      RatVector v(c, Rational(0));
      const RatVector g = scaled.lattice().generator(k);
      std::copy(g.begin(), g.end(), v.begin() + static_cast<long>(off));
      aggregate.push_back(std::move(v));
    }
    out.components.push_back({factor, std::move(dual), std::move(scaled)});
  }
  out.aggregate = LocalLattice(p, IntegerLattice::from_generators(c, aggregate));
  return out;
}

LocalLattice conductor_variant(const Order& order) {
  const auto& alg = order.center_algebra();
  LocalLattice into = lattice_combine(order.maximal_center(), order.center(), CombineMode::conductor, &alg);
  return lattice_intersection(into, order.maximal_center());
}

PresentationNC dual_presentation(const PresentationNC& pres) {
  require_group_ring(*pres.order(), "the dual presentation");
  if (pres.relations() != pres.generators()) throw MathError("the dual presentation needs a square matrix");
  return PresentationNC(pres.order(), sharp_transpose(pres.matrix()));
}

bool verify_annihilation(const PresentationNC& pres, const RatVector& central_coords) {
  const Order& order = *pres.order();
  const std::size_t b = pres.generators(), dim = order.dimension();
  const IntegerLattice rows = row_module_lattice(order, rows_of(pres.matrix()), b);
  if (rows.rank() < b * dim) throw MathError("the presented module is infinite");
  const LocalLattice local(order.prime(), rows);
  const AlgebraElement x = order.central_element(central_coords);
  for (std::size_t j = 0; j < b; ++j)
    for (std::size_t k = 0; k < order.lattice().rank(); ++k) {
      RatVector v(b * dim, Rational(0));
      const auto y = x * order.basis_element(k);
      std::copy(y.coeffs().begin(), y.coeffs().end(), v.begin() + static_cast<long>(j * dim));
      if (!lattice_membership(v, local)) return false;
    }
  return true;
}

AdditivityReport additivity_compare(const PresentationNC& first, const PresentationNC& second,
                                    const std::optional<PresentationNC>& direct_sum_presentation) {
  const Order& order = *first.order();
  const auto f1 = fitt_presentation(first), f2 = fitt_presentation(second);
  const auto sum = fitt_presentation(direct_sum_presentation ? *direct_sum_presentation : direct_sum(first, second));
  AdditivityReport out{lattice_combine(f1.lattice, f2.lattice, CombineMode::product, &order.center_algebra()),
                       sum.lattice};
  out.equal = out.product == out.direct_sum;
  return out;
}

LocalLattice sharp_lattice(const Order& order, const LocalLattice& l) {
  if (order.kind() != OrderKind::group_ring) return l;
  std::vector<RatVector> gens;
  for (std::size_t k = 0; k < l.rank(); ++k)
    gens.push_back(order.central_coords(sharp(order.central_element(l.lattice().generator(k)))));
  return LocalLattice(order.prime(), IntegerLattice::from_generators(l.dimension(), gens));
}

PresentationNC presentation_of_quotient(const OrderPtr& order, const IntegerLattice& top, const IntegerLattice& bottom,
                                        std::size_t b) {
  const Integer& p = order->prime();
  const std::size_t dim = order->dimension();
  const auto& alg = order->algebra();
  // Lambda-generators of top
  const LocalLattice top_local(p, top);
  std::vector<std::vector<AlgebraElement>> gens;
  LocalLattice current = LocalLattice::zero(p, b * dim);
  for (std::size_t k = 0; k < top.rank() && !(current == top_local); ++k) {
    gens.push_back(unflatten_row(alg, top.generator(k), b));
    LocalLattice next(p, row_module_lattice(*order, gens, b));
    if (next == current)
      gens.pop_back();
    else
      current = std::move(next);
  }
  const std::size_t m = gens.size();
  // relations: lambda in Lambda^m with sum lambda_j t_j in bottom
  RatMatrix t = rat_zero_matrix(m * dim, b * dim);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t g = 0; g < dim; ++g) {
      const auto e = AlgebraElement::basis(alg, g);
      for (std::size_t s = 0; s < b; ++s) {
        const auto x = e * gens[j][s];
        for (std::size_t i = 0; i < dim; ++i) t(j * dim + g, s * dim + i) = x.coeff(i);
      }
    }
  const IntegerLattice kernel = lattice_preimage(power_lattice(order->lattice(), m), t, bottom);
  std::vector<std::vector<AlgebraElement>> rows;
  for (std::size_t k = 0; k < kernel.rank(); ++k) rows.push_back(unflatten_row(alg, kernel.generator(k), m));
  return presentation_of_submodule(order, rows, m);
}

FourTermReport four_term_check(const OrderPtr& order, const AlgebraMatrix& q, const AlgebraMatrix& q_prime,
                               const AlgebraMatrix& f) {
  const auto& data = require_group_ring(*order, "the four-term check");
  if (!data.group().is_abelian()) throw MathError("the four-term check needs a commutative group ring");
  const std::size_t n = q.rows(), dim = order->dimension();
  if (q.cols() != n || q_prime.rows() != n || q_prime.cols() != n || f.rows() != n || f.cols() != n)
    throw MathError("the four-term check needs square matrices of one size");
  const auto& alg = order->algebra();
  const auto& calg = order->center_algebra();
  const std::size_t total = n * dim;

  // M = L / L0 with L0 = row(q) and L = {x : x f in row(q')}
  const IntegerLattice l0 = row_module_lattice(*order, rows_of(q), n);
  const IntegerLattice rows_prime = row_module_lattice(*order, rows_of(q_prime), n);
  RatMatrix fmap = rat_zero_matrix(total, total);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t g = 0; g < dim; ++g) {
      const auto e = AlgebraElement::basis(alg, g);
      for (std::size_t s = 0; s < n; ++s) {
        const auto x = e * f(j, s);
        for (std::size_t i = 0; i < dim; ++i) fmap(j * dim + g, s * dim + i) = x.coeff(i);
      }
    }
  const IntegerLattice l = lattice_preimage(power_lattice(order->lattice(), n), fmap, rows_prime);
  if (!l0.is_full_rank() || !rows_prime.is_full_rank()) throw MathError("the chain has infinite terms");

  // the dual of M as L0^perp / L^perp for <x, y> = sum_i coefficient of 1 in x_i y_i
  const auto& grp = data.group();
  RatMatrix pairing = rat_zero_matrix(total, total);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t g = 0; g < dim; ++g) pairing(i * dim + g, i * dim + grp.inverse(g)) = 1;
  auto perp = [&](const IntegerLattice& lat) {
    const auto inv = inverse(transpose(lat.generators() * pairing));
    if (!inv) throw MathError("degenerate lattice in the four-term check");
    return IntegerLattice::from_generators(*inv);
  };
  const auto dual = presentation_of_quotient(order, perp(l0), perp(l), n);

  AlgebraMatrix stacked = q_prime;
  for (std::size_t i = 0; i < n; ++i) stacked.append_row(f.row(i));
  const auto cokernel = fitt_presentation(PresentationNC(order, stacked));
  const auto dual_fitt = fitt_presentation(dual);
  const auto det_q = fitt_presentation(PresentationNC(order, q));
  const auto det_qp = fitt_presentation(PresentationNC(order, q_prime));

  FourTermReport out{dual_fitt.lattice, cokernel.lattice,
                     lattice_combine(dual_fitt.lattice, det_qp.lattice, CombineMode::product, &calg),
                     lattice_combine(cokernel.lattice, det_q.lattice, CombineMode::product, &calg)};
  out.equal = out.lhs == out.rhs;
  return out;
}

}  // namespace fittkit
