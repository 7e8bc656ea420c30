#include <fittkit/group.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <regex>

namespace fittkit {

FiniteGroup FiniteGroup::build(std::string name, GroupFamily family, unsigned parameter, std::size_t n,
                               std::vector<std::size_t> table, std::vector<std::size_t> generators) {
  if (n == 0) throw MathError("a group needs at least one element");
  if (table.size() != n * n) throw MathError("multiplication table must be " + std::to_string(n) + " x " + std::to_string(n));
  for (auto x : table)
    if (x >= n) throw MathError("multiplication table entry " + std::to_string(x) + " is out of range");
  FiniteGroup g;
  g.name_ = std::move(name);
  g.family_ = family;
  g.parameter_ = parameter;
  g.n_ = n;
  g.table_ = std::move(table);

  // Latin square rows and columns
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<bool> row(n, false), col(n, false);
    for (std::size_t b = 0; b < n; ++b) {
      if (row[g.mul(a, b)] || col[g.mul(b, a)]) throw MathError("multiplication table is not a Latin square");
      row[g.mul(a, b)] = col[g.mul(b, a)] = true;
    }
  }
  std::size_t e = n;
  for (std::size_t a = 0; a < n && e == n; ++a)
    if (g.mul(a, a) == a) e = a;
  g.identity_ = e;
  for (std::size_t a = 0; a < n; ++a)
    if (g.mul(e, a) != a || g.mul(a, e) != a) throw MathError("multiplication table has no identity");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
          throw MathError("multiplication table is not associative at (" + std::to_string(a) + ", " + std::to_string(b) +
                          ", " + std::to_string(c) + ")");

  g.inverse_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (g.mul(a, b) == e) g.inverse_[a] = b;
  g.orders_.assign(n, 1);
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t x = a;
    unsigned k = 1;
    while (x != e) {
      x = g.mul(x, a);
      ++k;
    }
    g.orders_[a] = k;
    g.exponent_ = lcm_u(g.exponent_, k);
  }

  if (generators.empty()) {
    // greedy: smallest element outside the subgroup generated so far
    std::vector<bool> in(n, false);
    in[e] = true;
    std::size_t covered = 1;
    while (covered < n) {
      std::size_t pick = 0;
      while (in[pick]) ++pick;
      generators.push_back(pick);
      std::deque<std::size_t> queue;
      for (std::size_t x = 0; x < n; ++x)
        if (in[x]) queue.push_back(x);
      while (!queue.empty()) {
        std::size_t x = queue.front();
        queue.pop_front();
        for (auto s : generators) {
          std::size_t y = g.mul(x, s);
          if (!in[y]) {
            in[y] = true;
            ++covered;
            queue.push_back(y);
          }
        }
      }
    }
  }
  for (auto s : generators)
    if (s >= n) throw MathError("generator index out of range");
  g.generators_ = std::move(generators);

  g.class_index_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    if (g.class_index_[a] != n) continue;
    std::vector<std::size_t> cls;
    for (std::size_t h = 0; h < n; ++h) cls.push_back(g.mul(g.mul(h, a), g.inverse(h)));
    std::sort(cls.begin(), cls.end());
    cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
    for (auto x : cls) g.class_index_[x] = g.classes_.size();
    g.classes_.push_back(std::move(cls));
  }
  return g;
}

std::size_t FiniteGroup::power(std::size_t a, long k) const {
  std::size_t base = k < 0 ? inverse(a) : a;
  unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
  std::size_t r = identity_;
  for (unsigned long i = 0; i < e; ++i) r = mul(r, base);
  return r;
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = a + 1; b < n_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

FiniteGroup FiniteGroup::cyclic(unsigned n) {
  if (n == 0) throw MathError("cyclic group order must be positive");
  std::vector<std::size_t> t(n * n);
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b) t[a * n + b] = (a + b) % n;
  return build("C" + std::to_string(n), GroupFamily::cyclic, n, n, std::move(t), n == 1 ? std::vector<std::size_t>{} : std::vector<std::size_t>{1});
}

FiniteGroup FiniteGroup::dihedral(unsigned order) {
  if (order < 2 || order % 2 != 0) throw MathError("dihedral group order must be even and at least 2, got " + std::to_string(order));
  const unsigned n = order / 2;
  std::vector<std::size_t> t(order * order);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < 2; ++j)
      for (unsigned k = 0; k < n; ++k)
        for (unsigned l = 0; l < 2; ++l) {
          // sigma^i tau^j sigma^k tau^l = sigma^(i +- k) tau^(j + l)
          unsigned r = j == 0 ? (i + k) % n : (i + n - k) % n;
          t[(i + n * j) * order + (k + n * l)] = r + n * ((j + l) % 2);
        }
  std::vector<std::size_t> gens = n == 1 ? std::vector<std::size_t>{1} : std::vector<std::size_t>{1, n};
  return build("D" + std::to_string(order), GroupFamily::dihedral, order, order, std::move(t), gens);
}

FiniteGroup FiniteGroup::quaternion8() {
  std::vector<std::size_t> t(64);
  for (unsigned a = 0; a < 4; ++a)
    for (unsigned b = 0; b < 2; ++b)
      for (unsigned c = 0; c < 4; ++c)
        for (unsigned d = 0; d < 2; ++d) {
          // i^a j^b i^c j^d = i^(a +- c) j^(b + d), with j^2 = i^2
          unsigned e = b == 0 ? (a + c) % 4 : (a + 4 - c) % 4;
          unsigned f = b + d;
          if (f == 2) {
            e = (e + 2) % 4;
            f = 0;
          }
          t[(a + 4 * b) * 8 + (c + 4 * d)] = e + 4 * f;
        }
  return build("Q8", GroupFamily::quaternion, 8, 8, std::move(t), {1, 4});
}

FiniteGroup FiniteGroup::symmetric(unsigned n) {
  if (n < 1 || n > 4) throw MathError("symmetric groups are built in for n <= 4, got " + std::to_string(n));
  std::vector<std::vector<unsigned>> perms;
  std::vector<unsigned> p(n);
  std::iota(p.begin(), p.end(), 0u);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<unsigned>, std::size_t> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = i;
  const std::size_t order = perms.size();
  std::vector<std::size_t> t(order * order);
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) {
      std::vector<unsigned> c(n);
      for (unsigned x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];
      t[a * order + b] = index[c];
    }
  std::vector<std::size_t> gens;
  if (n >= 2) {
    std::vector<unsigned> swap01(n), cycle(n);
    std::iota(swap01.begin(), swap01.end(), 0u);
    std::swap(swap01[0], swap01[1]);
    for (unsigned x = 0; x < n; ++x) cycle[x] = (x + 1) % n;
    gens.push_back(index[swap01]);
    if (n >= 3) gens.push_back(index[cycle]);
  }
  return build("S" + std::to_string(n), GroupFamily::symmetric, n, order, std::move(t), gens);
}

FiniteField::FiniteField(unsigned q) : q_(q) {
  if (is_prime(Integer(q))) return;
  static const unsigned polys[] = {0, 0, 0b111, 0b1011, 0b10011};
  for (unsigned n = 2; n <= 4; ++n)
    if (q == (1u << n)) {
      modulus_ = polys[n];
      return;
    }
  throw MathError("finite fields are built in for primes and 4, 8, 16 only, got " + std::to_string(q));
}

unsigned FiniteField::add(unsigned x, unsigned y) const { return modulus_ ? (x ^ y) : (x + y) % q_; }

unsigned FiniteField::mul(unsigned x, unsigned y) const {
  if (!modulus_) return static_cast<unsigned>(static_cast<unsigned long>(x) * y % q_);
  unsigned r = 0;
  for (; y; y >>= 1) {
    if (y & 1) r ^= x;
    x <<= 1;
    if (x & q_) x ^= modulus_;
  }
  return r;
}

unsigned FiniteField::primitive_element() const {
  for (unsigned cand = 1; cand < q_; ++cand) {
    unsigned x = cand, k = 1;
    while (x != 1) {
      x = mul(x, cand);
      ++k;
    }
    if (k == q_ - 1) return cand;
  }
  return 1;
}

FiniteGroup FiniteGroup::affine(unsigned q) {
  const FiniteField f(q);
  const std::size_t order = static_cast<std::size_t>(q) * (q - 1);
  auto idx = [q](unsigned a, unsigned b) { return static_cast<std::size_t>(b) + q * (a - 1); };
  std::vector<std::size_t> t(order * order);
  for (unsigned a = 1; a < q; ++a)
    for (unsigned b = 0; b < q; ++b)
      for (unsigned c = 1; c < q; ++c)
        for (unsigned d = 0; d < q; ++d)
          // (a x + b) o (c x + d) = a c x + (a d + b)
          t[idx(a, b) * order + idx(c, d)] = idx(f.mul(a, c), f.add(f.mul(a, d), b));
  std::vector<std::size_t> gens{idx(1, 1)};
  if (q > 2) gens.push_back(idx(f.primitive_element(), 0));
  return build("Aff(" + std::to_string(q) + ")", GroupFamily::affine, q, order, std::move(t), gens);
}

std::vector<unsigned> affine_permutation(const FiniteGroup& g, std::size_t x) {
  if (g.family() != GroupFamily::affine) throw MathError(g.name() + " is not an affine group");
  const unsigned q = g.family_parameter();
  const FiniteField f(q);
  const unsigned b = static_cast<unsigned>(x % q), a = static_cast<unsigned>(x / q) + 1;
  std::vector<unsigned> perm(q);
  for (unsigned y = 0; y < q; ++y) perm[y] = f.add(f.mul(a, y), b);
  return perm;
}

FiniteGroup FiniteGroup::builtin(const std::string& descriptor) {
  static const std::regex call(R"(\s*([A-Za-z]+)\s*\(\s*(\d+)\s*\)\s*)");
  static const std::regex shorthand(R"(\s*([A-Za-z]+?)(\d+)\s*)");
  std::smatch m;
  std::string fam;
  unsigned param = 0;
  if (std::regex_match(descriptor, m, call) || std::regex_match(descriptor, m, shorthand)) {
    fam = m[1];
    param = static_cast<unsigned>(std::stoul(m[2]));
  } else {
    throw MathError("unknown group descriptor '" + descriptor + "'");
  }
  if (fam == "cyclic" || fam == "C") return cyclic(param);
  if (fam == "dihedral" || fam == "D") return dihedral(param);
  if (fam == "symmetric" || fam == "S") return symmetric(param);
  if (fam == "affine" || fam == "Aff") return affine(param);
  if ((fam == "quaternion" || fam == "Q") && param == 8) return quaternion8();
  throw MathError("unknown group descriptor '" + descriptor + "'");
}

FiniteGroup FiniteGroup::from_table(std::string name, const std::vector<std::vector<std::size_t>>& table,
                                    std::vector<std::size_t> generators) {
  const std::size_t n = table.size();
  std::vector<std::size_t> flat;
  for (const auto& row : table) {
    if (row.size() != n) throw MathError("multiplication table must be square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return build(std::move(name), GroupFamily::table, 0, n, std::move(flat), std::move(generators));
}

std::vector<std::size_t> commutator_subgroup(const FiniteGroup& g) {
  std::vector<bool> in(g.order(), false);
  std::vector<std::size_t> elems;
  auto add = [&](std::size_t x) {
    if (!in[x]) {
      in[x] = true;
      elems.push_back(x);
    }
  };
  add(g.identity());
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b) add(g.mul(g.mul(g.inverse(a), g.inverse(b)), g.mul(a, b)));
  // closure under products
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      add(g.mul(elems[i], elems[j]));
      add(g.mul(elems[j], elems[i]));
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

std::vector<std::vector<std::size_t>> conjugacy_classes(const FiniteGroup& g) { return g.classes(); }

std::size_t class_of(const FiniteGroup& g, std::size_t x) { return g.class_index(x); }

bool isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return false;
  std::vector<unsigned> oa, ob;
  for (std::size_t x = 0; x < a.order(); ++x) {
    oa.push_back(a.element_order(x));
    ob.push_back(b.element_order(x));
  }
  std::sort(oa.begin(), oa.end());
  std::sort(ob.begin(), ob.end());
  if (oa != ob) return false;
  const auto& gens = a.generators();
  const std::size_t n = a.order();
  std::vector<std::size_t> img(gens.size(), 0);
  // odometer over candidate images with matching element orders
  std::vector<std::vector<std::size_t>> cands(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t y = 0; y < n; ++y)
      if (b.element_order(y) == a.element_order(gens[i])) cands[i].push_back(y);
  std::vector<std::size_t> pos(gens.size(), 0);
  for (;;) {
    for (std::size_t i = 0; i < gens.size(); ++i) img[i] = cands[i][pos[i]];
    std::vector<std::size_t> map(n, n);
    map[a.identity()] = b.identity();
    std::deque<std::size_t> queue{a.identity()};
    bool ok = true;
    while (!queue.empty() && ok) {
      std::size_t x = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < gens.size(); ++i) {
        std::size_t y = a.mul(x, gens[i]);
        std::size_t fy = b.mul(map[x], img[i]);
        if (map[y] == n) {
          map[y] = fy;
          queue.push_back(y);
        } else if (map[y] != fy) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      std::vector<bool> hit(n, false);
      for (auto y : map) {
        if (y == n || hit[y]) ok = false;
        else hit[y] = true;
      }
    }
    if (ok)
      for (std::size_t x = 0; x < n && ok; ++x)
        for (std::size_t y = 0; y < n; ++y)
          if (map[a.mul(x, y)] != b.mul(map[x], map[y])) {
            ok = false;
            break;
          }
    if (ok) return true;
    std::size_t i = 0;
    while (i < pos.size() && ++pos[i] == cands[i].size()) pos[i++] = 0;
    if (i == pos.size()) return false;
  }
}

std::vector<unsigned> permutation_of(const FiniteGroup& g, std::size_t x) {
  if (g.family() != GroupFamily::symmetric) throw MathError(g.name() + " is not a builtin symmetric group");
  const unsigned n = g.family_parameter();
  std::vector<unsigned> p(n);
  std::iota(p.begin(), p.end(), 0u);
  for (std::size_t i = 0; i < x; ++i) std::next_permutation(p.begin(), p.end());
  return p;
}

}  // namespace fittkit
