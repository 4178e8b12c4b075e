#include "gaudin/algebra.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace gaudin {

namespace {

// Sign table sigma(a,b) defining the paired element E_{a,b} + sigma(a,b) E_{-b,-a}
// for the c and d windows. Satisfies sigma(-b,-a) = sigma(a,b) and
// sigma(b,a) = sigma(a,b) * (-1)^{#integral indices among a,b}.
int sigma(char type, Half a, Half b) {
  bool ia = half_is_int(a), ib = half_is_int(b);
  if (type == 'c') {
    if (ia && ib) return ((a > 0) == (b > 0)) ? -1 : 1;
    if (!ia && !ib) return -1;
    if (ia) return a > 0 ? 1 : -1;  // (int, half-odd)
    return b > 0 ? -1 : 1;          // (half-odd, int)
  }
  if (type == 'd') {
    if (ia && ib) return -1;
    if (!ia && !ib) return ((a > 0) == (b > 0)) ? -1 : 1;
    if (ia) return b > 0 ? 1 : -1;  // (int, half-odd)
    return a > 0 ? -1 : 1;          // (half-odd, int)
  }
  throw std::logic_error("sigma: only defined for types c and d");
}

bool pair_lex_ge(Half a, Half b, Half c, Half d) {
  if (a != c) return a > c;
  return b >= d;
}

// Canonical name of the +- pair {(a,b), (-b,-a)}: the lex-larger one.
std::pair<Half, Half> canonical_tag(char type, Half a, Half b) {
  if (type == 'a') return {a, b};
  if (pair_lex_ge(a, b, -b, -a)) return {a, b};
  return {-b, -a};
}

int tag_parity(Half a, Half b) { return (half_parity(a) + half_parity(b)) % 2; }

Weight root_of_tag(Half a, Half b) {
  Weight w;
  w.add(std::abs(a), a > 0 ? 1 : -1);
  w.add(std::abs(b), b > 0 ? -1 : 1);
  return w;
}

using Amb = std::map<std::pair<Half, Half>, Rat>;

void amb_add(Amb& m, Half r, Half s, const Rat& c) {
  if (c == 0) return;
  Rat v = m[{r, s}] + c;
  if (v == 0)
    m.erase({r, s});
  else
    m[{r, s}] = v;
}

Amb amb_of(const BasisElement& e) {
  Amb m;
  for (const auto& [r, s, c] : e.mat) amb_add(m, r, s, c);
  return m;
}

Amb amb_mul(const Amb& x, const Amb& y) {
  std::map<Half, std::vector<std::pair<Half, Rat>>> rows;
  for (const auto& [rs, c] : y) rows[rs.first].push_back({rs.second, c});
  Amb out;
  for (const auto& [rs, c] : x) {
    auto it = rows.find(rs.second);
    if (it == rows.end()) continue;
    for (const auto& [t, c2] : it->second) {
      Rat v = c * c2;
      amb_add(out, rs.first, t, v);
    }
  }
  return out;
}

Rat amb_supertrace(const Amb& x) {
  Rat s = 0;
  for (const auto& [rs, c] : x) {
    if (rs.first != rs.second) continue;
    if (half_is_int(rs.first))
      s += c;
    else
      s -= c;
  }
  return s;
}

// J is diagonal with J_rr = -1 for r > 0 and 0 for r < 0; [J, X] scales the
// (r, s) entry of X by J_rr - J_ss.
Amb amb_j_commutator(const Amb& x) {
  Amb out;
  for (const auto& [rs, c] : x) {
    int f = (rs.second > 0 ? 1 : 0) - (rs.first > 0 ? 1 : 0);
    if (f != 0) amb_add(out, rs.first, rs.second, c * f);
  }
  return out;
}

Rat amb_str_j(const Amb& x) {
  Rat s = 0;
  for (const auto& [rs, c] : x) {
    if (rs.first != rs.second || rs.first <= 0) continue;
    if (half_is_int(rs.first))
      s -= c;
    else
      s += c;
  }
  return s;
}

void lc_add(LinComb& m, int id, const Rat& c) {
  if (c == 0) return;
  Rat v = m[id] + c;
  if (v == 0)
    m.erase(id);
  else
    m[id] = v;
}

}  // namespace

std::string AlgebraSpec::str() const {
  std::ostringstream os;
  os << type << "/" << fam_str(fam) << "(" << m << "|" << n << ")" << (extended ? "+K" : "");
  return os.str();
}

std::string Tag::str() const {
  if (is_K) return "K";
  return "(" + half_str(a) + "," + half_str(b) + ")";
}

struct TableBuilder {
  static std::shared_ptr<const StructureTable> run(const AlgebraSpec& s, bool allow_large) {
    if (s.type != 'a' && s.type != 'c' && s.type != 'd')
      throw std::invalid_argument("algebra type must be a, c, or d");
    if (s.fam == Fam::tilde && (s.type != 'a' || s.m != 0))
      throw std::invalid_argument("tilde windows only carry type a with m = 0");
    if (s.n < 1 || s.m < 0) throw std::invalid_argument("need n >= 1 and m >= 0");
    if (!allow_large && (s.m > 4 || s.n > 6))
      throw std::invalid_argument("table size beyond supported range (pass allow_large to override)");

    auto tp = std::shared_ptr<StructureTable>(new StructureTable());
    StructureTable& t = *tp;
    t.spec = s;
    t.pos = positive_indices(s.fam, s.m, s.n);
    t.window = (s.type == 'a') ? t.pos : signed_window(s.fam, s.m, s.n);

    const long N = static_cast<long>(t.window.size());
    for (long i = 0; i < N; ++i) t.h_[t.window[i]] = (N - 1) - 2 * i;

    build_basis(t);
    build_tables(t);
    build_roots(t);

    if (s.m <= 3 && s.n <= 3) {
      t.check_antisymmetry();
      t.check_jacobi();
    }
    return tp;
  }

  static void build_basis(StructureTable& t) {
    const char ty = t.spec.type;
    const Fam fam = t.spec.fam;

    // Cartan part: E_{r,r} for type a, E_{a,a} - E_{-a,-a} for c/d, r over the
    // positive set in its family order.
    for (Half r : t.pos) {
      BasisElement e;
      e.tag = Tag{false, r, r};
      e.parity = 0;
      e.cartan = true;
      if (ty == 'a')
        e.mat = {{r, r, Rat(1)}};
      else
        e.mat = {{r, r, Rat(1)}, {-r, -r, Rat(-1)}};
      push(t, std::move(e));
    }
    if (t.spec.extended) {
      BasisElement k;
      k.tag = Tag{true, 0, 0};
      k.parity = 0;
      k.cartan = true;
      t.k_id = static_cast<int>(t.basis.size());
      push(t, std::move(k));
    }
    t.cartan_ids.clear();
    for (const auto& e : t.basis)
      if (!e.tag.is_K) t.cartan_ids.push_back(e.id);

    // Off-diagonal canonical tags, split by root sign.
    std::vector<BasisElement> posi, nega;
    for (Half a : t.window)
      for (Half b : t.window) {
        if (a == b) continue;
        if (ty != 'a') {
          if (canonical_tag(ty, a, b) != std::pair<Half, Half>(a, b)) continue;
          if (b == -a && sigma(ty, a, b) == -1) continue;  // pairing cancels
        }
        BasisElement e;
        e.tag = Tag{false, a, b};
        e.parity = tag_parity(a, b);
        e.root = root_of_tag(a, b);
        if (ty == 'a')
          e.mat = {{a, b, Rat(1)}};
        else if (b == -a)
          e.mat = {{a, b, Rat(2)}};
        else
          e.mat = {{a, b, Rat(1)}, {-b, -a, Rat(sigma(ty, a, b))}};
        (order_less(fam, a, b) ? posi : nega).push_back(std::move(e));
      }

    auto delta_of = [&t](const BasisElement& e) { return t.h_.at(e.tag.a) - t.h_.at(e.tag.b); };
    std::sort(posi.begin(), posi.end(), [&](const BasisElement& x, const BasisElement& y) {
      long dx = delta_of(x), dy = delta_of(y);
      if (dx != dy) return dx < dy;
      if (x.tag.a != y.tag.a) return x.tag.a < y.tag.a;
      return x.tag.b < y.tag.b;
    });

    // Negatives follow in the order of their positive partners.
    std::map<std::pair<Half, Half>, BasisElement> negpool;
    for (auto& e : nega) negpool.emplace(std::pair<Half, Half>(e.tag.a, e.tag.b), std::move(e));
    std::vector<BasisElement> negord;
    for (const auto& p : posi) {
      auto nt = canonical_tag(ty, p.tag.b, p.tag.a);
      auto it = negpool.find(nt);
      if (it == negpool.end()) throw std::logic_error("missing lowering partner for " + p.tag.str());
      negord.push_back(std::move(it->second));
      negpool.erase(it);
    }
    if (!negpool.empty()) throw std::logic_error("unpaired lowering elements in window");

    t.first_pos_ = static_cast<int>(t.basis.size());
    for (auto& e : posi) push(t, std::move(e));
    t.first_neg_ = static_cast<int>(t.basis.size());
    for (auto& e : negord) push(t, std::move(e));

    t.neg_of_.assign(t.basis.size(), -1);
    for (int i = 0; i < t.first_pos_; ++i) t.neg_of_[i] = i;
    int np = t.first_neg_ - t.first_pos_;
    for (int i = 0; i < np; ++i) {
      t.neg_of_[t.first_pos_ + i] = t.first_neg_ + i;
      t.neg_of_[t.first_neg_ + i] = t.first_pos_ + i;
    }
  }

  static void push(StructureTable& t, BasisElement&& e) {
    e.id = static_cast<int>(t.basis.size());
    if (!e.tag.is_K) t.tag_to_id_[{e.tag.a, e.tag.b}] = e.id;
    t.basis.push_back(std::move(e));
  }

  static void build_tables(StructureTable& t) {
    const int d = t.dim();
    t.brk_.assign(static_cast<std::size_t>(d) * d, LinComb{});
    t.form_.assign(static_cast<std::size_t>(d) * d, Rat(0));
    std::vector<Amb> mats(d);
    for (int i = 0; i < d; ++i) mats[i] = amb_of(t.basis[i]);

    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        if (t.is_k(i) || t.is_k(j)) continue;  // K is central and form-isotropic
        Amb xy = amb_mul(mats[i], mats[j]);
        Rat str = amb_supertrace(xy);
        if (t.spec.type != 'a') str /= 2;
        t.form_[t.idx(i, j)] = str;

        Amb z = xy;
        int sg = (t.basis[i].parity && t.basis[j].parity) ? 1 : -1;
        for (const auto& [rs, c] : amb_mul(mats[j], mats[i])) amb_add(z, rs.first, rs.second, sg * c);
        std::vector<std::tuple<Half, Half, Rat>> zt;
        for (const auto& [rs, c] : z) zt.push_back({rs.first, rs.second, c});
        LinComb br = t.decompose_entries(zt);
        if (t.spec.extended) {
          Rat tv = amb_supertrace(amb_mul(amb_j_commutator(mats[i]), mats[j]));
          lc_add(br, t.k_id, tv);
        }
        t.brk_[t.idx(i, j)] = std::move(br);
      }
    }
  }

  static void build_roots(StructureTable& t) {
    for (int id = t.first_pos_; id < t.first_neg_; ++id) {
      const BasisElement& e = t.basis[id];
      Root r;
      r.weight = e.root;
      r.raising_id = id;
      r.parity = e.parity;
      r.delta = t.h_.at(e.tag.a) - t.h_.at(e.tag.b);
      int low = t.neg_of_[id];
      Rat f = t.form_[t.idx(id, low)];
      if (f == 0) throw std::logic_error("degenerate pairing for root " + e.tag.str());
      Rat inv = 1 / f;
      r.dual_lowering = {{low, inv}};
      t.positive_roots.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < t.positive_roots.size(); ++i) {
      const Weight& w = t.positive_roots[i].weight;
      bool decomposable = false;
      for (std::size_t j = 0; j < t.positive_roots.size() && !decomposable; ++j)
        for (std::size_t k = j; k < t.positive_roots.size(); ++k) {
          Weight s = t.positive_roots[j].weight + t.positive_roots[k].weight;
          if (s.eps == w.eps) {
            decomposable = true;
            break;
          }
        }
      if (!decomposable) t.simple_roots.push_back(static_cast<int>(i));
    }
  }
};

std::shared_ptr<const StructureTable> StructureTable::build(const AlgebraSpec& s, bool allow_large) {
  return TableBuilder::run(s, allow_large);
}

int StructureTable::tag_id(const Tag& t) const {
  if (t.is_K) {
    if (k_id < 0) throw std::invalid_argument("table is not extended, K is absent");
    return k_id;
  }
  auto it = tag_to_id_.find({t.a, t.b});
  if (it == tag_to_id_.end()) throw std::invalid_argument("unknown basis tag " + t.str());
  return it->second;
}

int StructureTable::neg_id(int id) const { return neg_of_.at(id); }

long StructureTable::hfun(Half k) const {
  auto it = h_.find(k);
  if (it == h_.end()) throw std::invalid_argument("index outside window: " + half_str(k));
  return it->second;
}

Rat StructureTable::delta_weight(const Weight& mu) const {
  Rat s = 0;
  for (const auto& [h, c] : mu.eps) s += c * hfun(h);
  return s;
}

LinComb StructureTable::bracket_lc(const LinComb& x, const LinComb& y) const {
  LinComb out;
  for (const auto& [i, ci] : x)
    for (const auto& [j, cj] : y) {
      Rat f = ci * cj;
      for (const auto& [k, ck] : brk_[idx(i, j)]) lc_add(out, k, f * ck);
    }
  return out;
}

Rat StructureTable::form_lc(const LinComb& x, const LinComb& y) const {
  Rat s = 0;
  for (const auto& [i, ci] : x)
    for (const auto& [j, cj] : y) s += ci * cj * form_[idx(i, j)];
  return s;
}

Rat StructureTable::cartan_value(const Weight& mu, int id) const {
  const BasisElement& e = basis.at(id);
  if (e.tag.is_K) return mu.level;
  if (!e.cartan) throw std::invalid_argument("cartan_value needs a Cartan element");
  return mu.coeff(e.tag.a);
}

LinComb StructureTable::decompose_entries(const std::vector<std::tuple<Half, Half, Rat>>& entries) const {
  Amb rest;
  for (const auto& [r, s, c] : entries) amb_add(rest, r, s, c);
  LinComb out;
  while (!rest.empty()) {
    auto [rs, c] = *rest.begin();
    auto [r, s] = rs;
    auto tag = canonical_tag(spec.type, r, s);
    auto it = tag_to_id_.find(tag);
    if (it == tag_to_id_.end())
      throw std::logic_error("ambient matrix not in the algebra span at entry (" + half_str(r) + "," +
                             half_str(s) + ")");
    if (out.count(it->second))
      throw std::logic_error("ambient matrix not proportional to the pair pattern at (" + half_str(r) +
                             "," + half_str(s) + ")");
    const BasisElement& e = basis[it->second];
    Rat entry = 0;
    for (const auto& [er, es, ec] : e.mat)
      if (er == r && es == s) entry = ec;
    if (entry == 0) throw std::logic_error("basis entry lookup failed");
    Rat coeff = c / entry;
    for (const auto& [er, es, ec] : e.mat) {
      Rat dv = -coeff * ec;
      amb_add(rest, er, es, dv);
    }
    out[it->second] = coeff;
  }
  return out;
}

namespace {

LinComb star_map(const StructureTable& t, int id, bool prime) {
  if (t.is_k(id)) return {{id, Rat(1)}};
  std::vector<std::tuple<Half, Half, Rat>> out;
  for (const auto& [r, s, c] : t.elem(id).mat) {
    int sg = 1;
    if (!prime) {
      if (r < 0 && half_is_odd_index(r)) sg = -sg;
      if (s < 0 && half_is_odd_index(s)) sg = -sg;
    } else {
      if (r < 0 && half_is_int(r)) sg = -sg;
      if (s < 0 && half_is_int(s)) sg = -sg;
    }
    out.push_back({s, r, Rat(sg * c)});
  }
  return t.decompose_entries(out);
}

}  // namespace

LinComb StructureTable::omega(int id) const { return star_map(*this, id, false); }
LinComb StructureTable::omega_prime(int id) const { return star_map(*this, id, true); }

LinComb StructureTable::omega_lc(const LinComb& x) const {
  LinComb out;
  for (const auto& [i, c] : x)
    for (const auto& [j, cj] : omega(i)) lc_add(out, j, c * cj);
  return out;
}

LinComb StructureTable::omega_prime_lc(const LinComb& x) const {
  LinComb out;
  for (const auto& [i, c] : x)
    for (const auto& [j, cj] : omega_prime(i)) lc_add(out, j, c * cj);
  return out;
}

Rat StructureTable::str_J(int id) const {
  if (is_k(id)) return 0;
  Amb a = amb_of(basis.at(id));
  return amb_str_j(a);
}

LinComb StructureTable::iota(int id) const {
  if (k_id < 0) throw std::invalid_argument("iota needs an extended table");
  if (is_k(id)) return {{id, Rat(1)}};
  LinComb out{{id, Rat(1)}};
  Rat s = str_J(id);
  lc_add(out, k_id, s);
  return out;
}

Rat StructureTable::tau(int i, int j) const {
  if (k_id < 0) return 0;
  auto it = brk_[idx(i, j)].find(k_id);
  return it == brk_[idx(i, j)].end() ? Rat(0) : it->second;
}

long StructureTable::signature_sum() const {
  long s = 0;
  for (Half r : pos) s += half_is_int(r) ? 1 : -1;
  return s;
}

void StructureTable::check_antisymmetry() const {
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) {
      LinComb l = bracket(i, j);
      int sg = (basis[i].parity && basis[j].parity) ? -1 : 1;
      for (const auto& [k, c] : bracket(j, i)) lc_add(l, k, sg * c);
      if (!l.empty())
        throw std::logic_error("antisymmetry fails at " + basis[i].tag.str() + "," + basis[j].tag.str());
    }
}

void StructureTable::check_jacobi() const {
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) {
      LinComb ij = bracket(i, j);
      for (int k = 0; k < dim(); ++k) {
        LinComb lhs = bracket_lc({{i, Rat(1)}}, bracket(j, k));
        LinComb r1 = bracket_lc(ij, {{k, Rat(1)}});
        LinComb r2 = bracket_lc({{j, Rat(1)}}, bracket(i, k));
        int sg = (basis[i].parity && basis[j].parity) ? -1 : 1;
        for (const auto& [t, c] : r1) lc_add(lhs, t, -c);
        for (const auto& [t, c] : r2) lc_add(lhs, t, -sg * c);
        if (!lhs.empty())
          throw std::logic_error("jacobi fails at " + basis[i].tag.str() + "," + basis[j].tag.str() + "," +
                                 basis[k].tag.str());
      }
    }
}

void StructureTable::check_form() const {
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) {
      Rat f = form(i, j);
      if (basis[i].parity != basis[j].parity && f != 0)
        throw std::logic_error("form couples opposite parities");
      Rat g = form(j, i);
      if (basis[i].parity && basis[j].parity) g = -g;
      if (f != g) throw std::logic_error("form supersymmetry fails");
      if (is_k(i) && f != 0) throw std::logic_error("K must be isotropic");
    }
  for (std::size_t a = 0; a < cartan_ids.size(); ++a)
    for (std::size_t b = 0; b < cartan_ids.size(); ++b) {
      Rat want = 0;
      if (a == b) want = half_is_int(pos[a]) ? 1 : -1;
      if (form(cartan_ids[a], cartan_ids[b]) != want)
        throw std::logic_error("Cartan pairing normalization fails");
    }
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      for (int k = 0; k < dim(); ++k) {
        Rat lhs = form_lc(bracket(i, j), {{k, Rat(1)}});
        Rat rhs = form_lc({{i, Rat(1)}}, bracket(j, k));
        if (lhs != rhs) throw std::logic_error("form invariance fails");
      }
}

void StructureTable::check_roots() const {
  for (const Root& r : positive_roots) {
    for (int h : cartan_ids) {
      Rat v = cartan_value(r.weight, h);
      LinComb want;
      lc_add(want, r.raising_id, v);
      if (bracket(h, r.raising_id) != want) throw std::logic_error("root value fails on raising");
      LinComb wantl;
      lc_add(wantl, neg_id(r.raising_id), -v);
      if (bracket(h, neg_id(r.raising_id)) != wantl) throw std::logic_error("root value fails on lowering");
    }
    if (k_id >= 0 && !bracket(k_id, r.raising_id).empty()) throw std::logic_error("K must be central");
    Rat p1 = form_lc({{r.raising_id, Rat(1)}}, r.dual_lowering);
    if (p1 != 1) throw std::logic_error("dual normalization fails");
    Rat p2 = form_lc(r.dual_lowering, {{r.raising_id, Rat(1)}});
    Rat want = r.parity ? Rat(-1) : Rat(1);
    if (p2 != want) throw std::logic_error("dual reverse pairing fails");
    if (r.delta < 2) throw std::logic_error("positive root with grading cost < 2");
  }
}

void StructureTable::check_star_structures() const {
  bool both = spec.type != 'a';
  for (int pass = 0; pass < (both ? 2 : 1); ++pass) {
    auto st = [&](int id) { return pass == 0 ? omega(id) : omega_prime(id); };
    auto stlc = [&](const LinComb& x) { return pass == 0 ? omega_lc(x) : omega_prime_lc(x); };
    for (int i = 0; i < dim(); ++i) {
      LinComb twice = stlc(st(i));
      if (twice != LinComb{{i, Rat(1)}}) throw std::logic_error("star map is not an involution");
      if (basis[i].cartan && st(i) != LinComb{{i, Rat(1)}})
        throw std::logic_error("star map must fix the Cartan part");
      for (int j = 0; j < dim(); ++j) {
        LinComb lhs = stlc(bracket(i, j));
        LinComb rhs = bracket_lc(st(j), st(i));
        if (lhs != rhs) throw std::logic_error("star antihomomorphism law fails");
      }
    }
  }
}

void StructureTable::check_cocycle() const {
  if (k_id < 0) return;
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) {
      Rat lhs = tau(i, j);
      Rat rhs = 0;
      for (const auto& [k, c] : bracket(i, j))
        if (k != k_id) rhs += c * str_J(k);
      if (lhs != rhs) throw std::logic_error("cocycle is not the boundary of str_J");
    }
}

void StructureTable::check_parities() const {
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) {
      int p = (basis[i].parity + basis[j].parity) % 2;
      for (const auto& [k, c] : bracket(i, j)) {
        (void)c;
        if (basis[k].parity != (k == k_id ? 0 : p))
          throw std::logic_error("bracket mixes parities");
        if (k == k_id && p != 0) throw std::logic_error("cocycle on odd pair");
      }
    }
}

std::string StructureTable::dump() const {
  std::ostringstream os;
  os << "ALGEBRA " << spec.type << " " << fam_str(spec.fam) << " m=" << spec.m << " n=" << spec.n
     << " ext=" << (spec.extended ? 1 : 0) << " dim=" << dim() << "\n";
  for (const auto& e : basis) {
    os << "ELEM " << e.id << " " << e.tag.str() << " p=" << e.parity;
    if (e.tag.is_K)
      os << " central";
    else if (e.cartan)
      os << " cartan";
    else if (is_raising(e.id))
      os << " raise";
    else
      os << " lower";
    os << "\n";
  }
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) {
      os << "BRK " << i << " " << j << " ->";
      const LinComb& b = brk_[idx(i, j)];
      if (b.empty()) {
        os << " 0";
      } else {
        bool first = true;
        for (const auto& [k, c] : b) {
          os << (first ? " " : " + ") << rat_str(c) << "*" << k;
          first = false;
        }
      }
      os << "\n";
    }
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      if (form(i, j) != 0) os << "FORM " << i << " " << j << " -> " << rat_str(form(i, j)) << "\n";
  return os.str();
}

namespace {

Half f_shift(Half h) {
  if (h > 0) return half_is_int(h) ? h - 1 : h + 1;
  return half_is_int(h) ? h + 1 : h - 1;
}

// The underlying space map carries a sign on negative half-odd indices; this
// is what makes the skew pairing conventions of the c window line up with the
// symmetric ones of the d window, so that conjugation lands inside the d span.
int f_sign(Half h) { return (h < 0 && half_is_odd_index(h)) ? -1 : 1; }

}  // namespace

LinComb phi_hat(const StructureTable& src, int id, const StructureTable& dst) {
  if (src.spec.type != 'c' || dst.spec.type != 'd')
    throw std::invalid_argument("phi_hat maps a c table to a d table");
  bool opp = (src.spec.fam == Fam::unbar && dst.spec.fam == Fam::bar) ||
             (src.spec.fam == Fam::bar && dst.spec.fam == Fam::unbar);
  if (!opp || src.spec.m != dst.spec.m || src.spec.n != dst.spec.n ||
      src.spec.extended != dst.spec.extended)
    throw std::invalid_argument("phi_hat needs opposite families with matching (m, n) and extension");
  if (src.is_k(id)) return {{dst.k_id, Rat(-1)}};

  const Tag& t = src.elem(id).tag;
  Half x = f_shift(t.a), y = f_shift(t.b);
  int sgn = f_sign(t.a) * f_sign(t.b);
  auto canon = canonical_tag('d', x, y);
  if (canon == std::pair<Half, Half>(x, y)) return {{dst.tag_id(x, y), Rat(sgn)}};
  return {{dst.tag_id(canon.first, canon.second), Rat(sgn * sigma('d', x, y))}};
}

}  // namespace gaudin
