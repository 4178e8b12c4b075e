#include "gaudin/duality.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace gaudin {

namespace {

WeightSide side_of(Fam f) {
  switch (f) {
    case Fam::unbar:
      return WeightSide::m_side;
    case Fam::bar:
      return WeightSide::bar_side;
    default:
      return WeightSide::tilde;
  }
}

// The signed signature vector of the (m|n) window: +1 on the integer
// indices, -1 on the half-odd ones. Level-carrying highest weights differ
// from their finite-rank realizations by a level multiple of this vector.
Weight window_signature(int m, int n) {
  Weight w;
  for (int i = 1; i <= m; ++i) w.set(2 * i, 1);
  for (int j = 1; j <= n; ++j) w.set(2 * j - 1, -1);
  return w;
}

}  // namespace

WeightPair correspond_weights(const Partition& p, const Rat& d, char type, int m, int n, int k) {
  if (type != 'a' && type != 'c' && type != 'd') throw std::invalid_argument("type must be a, c or d");
  if (type == 'a' && d != 0) throw std::invalid_argument("type a pairs carry level zero");
  if (d < 0) throw std::invalid_argument("level must be nonnegative");
  WeightPair wp;
  wp.super_w = weight_bar_m(p, d, m, n);
  wp.lie_w = weight_m(p, d, 0, k);
  wp.super_shifted = wp.super_w;
  if (d != 0) wp.super_shifted = wp.super_w - window_signature(m, n) * d;
  return wp;
}

TruncatedModule::TruncatedModule(RepModule source, std::shared_ptr<const StructureTable> table_k)
    : source_(std::move(source)), table_k_(std::move(table_k)) {
  const StructureTable& tn = *source_.table();
  const StructureTable& tk = *table_k_;
  if (tk.spec.type != tn.spec.type || tk.spec.fam != tn.spec.fam || tk.spec.m != tn.spec.m ||
      tk.spec.extended != tn.spec.extended || tk.spec.n > tn.spec.n)
    throw std::invalid_argument("truncation target is not a subwindow of the source");
  elem_map_.reserve(static_cast<std::size_t>(tk.dim()));
  for (int e = 0; e < tk.dim(); ++e) elem_map_.push_back(tn.tag_id(tk.elem(e).tag));
  LatticeId lat{side_of(tk.spec.fam), tk.spec.m, tk.spec.n};
  for (const auto& mb : source_.blocks())
    if (in_lattice(mb.mu, lat)) blocks_.push_back(mb);
}

long TruncatedModule::total_dim() const {
  long d = 0;
  for (const auto& mb : blocks_) d += mb.dim;
  return d;
}

int TruncatedModule::block_index(const Weight& mu) const {
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    if (blocks_[i].mu == mu) return static_cast<int>(i);
  return -1;
}

Mat TruncatedModule::action_block(int elem_id, const Weight& mu) const {
  int b = block_index(mu);
  if (b < 0) throw std::invalid_argument("weight is not a block of the truncation");
  const BasisElement& be = table_k_->elem(elem_id);
  Weight tau = mu + be.root;
  LatticeId lat{side_of(table_k_->spec.fam), table_k_->spec.m, table_k_->spec.n};
  if (!in_lattice(tau, lat))
    return Mat(0, static_cast<std::size_t>(blocks_[static_cast<std::size_t>(b)].dim));
  return source_.action_block(elem_map_.at(static_cast<std::size_t>(elem_id)), mu);
}

GramBlock TruncatedModule::gram_block(const Weight& mu) const {
  if (block_index(mu) < 0) throw std::invalid_argument("weight is not a block of the truncation");
  return source_.gram_block(mu);
}

TruncatedModule truncation_restrict(const RepModule& rep, int k) {
  const AlgebraSpec& s = rep.table()->spec;
  if (k < 1 || k > s.n) throw std::invalid_argument("truncation rank must lie between 1 and the source rank");
  AlgebraSpec sk = s;
  sk.n = k;
  return TruncatedModule(rep, StructureTable::build(sk));
}

bool truncation_check(char type, Fam fam, int m, int n, int k, const Weight& xi, int depth, StarKind star) {
  AlgebraSpec sn;
  sn.type = type;
  sn.fam = fam;
  sn.m = m;
  sn.n = n;
  sn.extended = xi.level != 0;
  RepModule Ln = RepModule::irreducible(StructureTable::build(sn), xi, depth, star);
  TruncatedModule tr = truncation_restrict(Ln, k);

  LatticeId lat{side_of(fam), m, k};
  if (!in_lattice(xi, lat)) return tr.zero();

  const auto& tk = tr.table();
  RepModule Lk = RepModule::irreducible(tk, xi, depth, star);

  if (tr.blocks().size() != Lk.blocks().size()) return false;
  for (const auto& mb : Lk.blocks()) {
    int b = tr.block_index(mb.mu);
    if (b < 0) return false;
    if (tr.blocks()[static_cast<std::size_t>(b)].dim != mb.dim) return false;
  }

  // canonical map per block: evaluate the small module's word basis inside
  // the big module, translating letters through the shared tags
  const StructureTable& tks = *tk;
  const StructureTable& tns = *Ln.table();
  std::map<Weight, Mat> C;
  for (const auto& mb : Lk.blocks()) {
    const auto& words = Lk.block_words(mb.mu);
    Mat Cmu(static_cast<std::size_t>(mb.dim), words.size());
    for (std::size_t w = 0; w < words.size(); ++w) {
      std::vector<int> wn;
      wn.reserve(words[w].size());
      for (int id : words[w]) wn.push_back(tns.tag_id(tks.elem(id).tag));
      auto [nu, coords] = Ln.word_coordinates(wn);
      if (nu != mb.mu) return false;
      if (coords.size() != static_cast<std::size_t>(mb.dim)) return false;
      for (std::size_t r = 0; r < coords.size(); ++r) Cmu.at(r, w) = coords[r];
    }
    if (rank(Cmu) != Cmu.cols) return false;
    C.emplace(mb.mu, std::move(Cmu));
  }

  for (const auto& mb : Lk.blocks()) {
    const Mat& Cs = C.at(mb.mu);
    for (int e = 0; e < tks.dim(); ++e) {
      Mat Ak = Lk.action_block(e, mb.mu);
      Mat An = tr.action_block(e, mb.mu);
      if (Ak.rows == 0 && An.rows == 0) continue;
      if (Ak.rows == 0) {
        if (!An.is_zero()) return false;
        continue;
      }
      if (An.rows == 0) {
        if (!Ak.is_zero()) return false;
        continue;
      }
      auto ct = C.find(mb.mu + tks.elem(e).root);
      if (ct == C.end()) return false;
      if (!(An * Cs == ct->second * Ak)) return false;
    }
    GramBlock gk = Lk.gram_block(mb.mu);
    GramBlock gn = tr.gram_block(mb.mu);
    if (!(Cs.transpose() * gn.matrix * Cs == gk.matrix)) return false;
  }
  return true;
}

std::vector<Rat> seeded_points(int l, unsigned long long seed, int attempt) {
  std::mt19937_64 gen(seed * 1000003ULL + static_cast<unsigned long long>(attempt));
  std::set<unsigned long long> used;
  std::vector<Rat> z;
  while (static_cast<int>(z.size()) < l) {
    unsigned long long v = gen() % 1000000ULL;
    if (used.insert(v).second) z.push_back(Rat(static_cast<long>(v)));
  }
  return z;
}

ComparisonReport compare_spectra(const CorrespondenceCase& c) {
  const int l = static_cast<int>(c.partitions.size());
  if (c.levels.size() != c.partitions.size()) throw std::invalid_argument("one level per partition");
  if (l < 2) throw std::invalid_argument("a comparison needs at least two factors");

  bool ext = false;
  Rat D = 0;
  for (const auto& d : c.levels) {
    if (d != 0) ext = true;
    D += d;
  }

  AlgebraSpec ss;
  ss.type = c.type;
  ss.fam = Fam::bar;
  ss.m = c.m;
  ss.n = c.n;
  ss.extended = ext;
  AlgebraSpec sl = ss;
  sl.fam = Fam::unbar;
  sl.m = 0;
  sl.n = c.k;
  auto ts = StructureTable::build(ss);
  auto tl = StructureTable::build(sl);

  std::vector<RepModule> fs, fl;
  for (int i = 0; i < l; ++i) {
    const Partition& p = c.partitions[static_cast<std::size_t>(i)];
    const Rat& d = c.levels[static_cast<std::size_t>(i)];
    fs.push_back(RepModule::irreducible(ts, weight_bar_m(p, d, c.m, c.n), c.super_depth));
    fl.push_back(RepModule::irreducible(tl, weight_m(p, d, 0, c.k), c.lie_depth));
  }
  Weight mu_s = weight_bar_m(c.mu, D, c.m, c.n);
  Weight mu_l = weight_m(c.mu, D, 0, c.k);

  ComparisonReport rep;
  std::vector<Rat> z = c.z.empty() ? default_points(l) : c.z;
  if (static_cast<int>(z.size()) != l) throw std::invalid_argument("one point per factor");

  for (int attempt = 0;; ++attempt) {
    rep.attempts = attempt + 1;
    rep.z_used = z;
    rep.hams.clear();

    TensorSystem sys_s(fs, z, CasimirVariant::central);
    TensorSystem sys_l(fl, z, CasimirVariant::central);
    rep.super_block_dim = sys_s.block_basis(mu_s).dim;
    rep.lie_block_dim = sys_l.block_basis(mu_l).dim;
    Mat Ss = sys_s.singular_block(mu_s);
    Mat Sl = sys_l.singular_block(mu_l);
    rep.super_sing_dim = static_cast<long>(Ss.cols);
    rep.lie_sing_dim = static_cast<long>(Sl.cols);
    if (Ss.cols != Sl.cols) {
      rep.ok = false;
      rep.notes.push_back("singular dimensions differ");
      return rep;
    }

    bool all_equal = true;
    bool all_diag = true;
    for (int i = 0; i < l; ++i) {
      HamiltonianComparison hc;
      Mat Rs = restrict_to(sys_s.hamiltonian(i, mu_s), Ss);
      Mat Rl = restrict_to(sys_l.hamiltonian(i, mu_l), Sl);
      hc.super_poly = charpoly(Rs);
      hc.lie_poly = charpoly(Rl);
      hc.equal = hc.super_poly == hc.lie_poly;
      hc.both_diagonalizable =
          Rs.rows == 0 || (diagonalizable(Rs).diagonalizable && diagonalizable(Rl).diagonalizable);
      all_equal = all_equal && hc.equal;
      all_diag = all_diag && hc.both_diagonalizable;
      rep.hams.push_back(std::move(hc));
    }
    rep.ok = all_equal;
    if (!all_equal) {
      rep.notes.push_back("characteristic polynomials differ");
      return rep;
    }
    if (all_diag || attempt + 1 >= c.max_attempts) {
      if (!all_diag) rep.notes.push_back("no sampled points gave a semisimple pair");
      return rep;
    }
    z = seeded_points(l, c.seed, attempt + 1);
  }
}

Mat joint_kernel(const TensorSystem& sys, const Weight& mu, const std::vector<int>& elem_ids) {
  const TensorBlockBasis& B = sys.block_basis(mu);
  std::vector<Mat> stack;
  for (int e : elem_ids) {
    BlockOperator op = sys.diagonal_action(e, mu);
    if (op.matrix.rows == 0) continue;
    stack.push_back(std::move(op.matrix));
  }
  if (stack.empty()) return Mat::identity(static_cast<std::size_t>(B.dim));
  return kernel_basis(vstack(stack));
}

bool window_consistency(const TensorSystem& sys, int m, const Weight& mu) {
  const StructureTable& t = *sys.table();
  if (t.spec.fam != Fam::tilde || t.spec.type != 'a')
    throw std::invalid_argument("window consistency requires a full one-sided window of type a");
  const int n = t.spec.n;

  auto as_set = [](std::vector<Half> v) { return std::set<Half>(v.begin(), v.end()); };
  std::set<Half> lower = as_set(positive_indices(Fam::unbar, m, n));
  std::set<Half> upper = as_set(positive_indices(Fam::bar, m, n));
  auto supported = [&](const std::set<Half>& S) {
    for (const auto& [h, cf] : mu.eps)
      if (cf != 0 && S.count(h) == 0) return false;
    return true;
  };
  std::vector<const std::set<Half>*> corners;
  if (supported(lower)) corners.push_back(&lower);
  if (supported(upper)) corners.push_back(&upper);
  if (corners.empty()) throw std::invalid_argument("weight is outside both corner windows");

  for (const auto* Sp : corners) {
    const std::set<Half>& S = *Sp;
    std::vector<int> root_ids, cartan_positions;
    for (int r = 0; r < static_cast<int>(t.positive_roots.size()); ++r) {
      const Tag& tag = t.elem(t.positive_roots[static_cast<std::size_t>(r)].raising_id).tag;
      if (S.count(tag.a) != 0 && S.count(tag.b) != 0) root_ids.push_back(r);
    }
    for (int q = 0; q < static_cast<int>(t.cartan_ids.size()); ++q)
      if (S.count(t.pos[static_cast<std::size_t>(q)]) != 0) cartan_positions.push_back(q);

    for (int i = 0; i < sys.size(); ++i) {
      BlockOperator full = sys.hamiltonian(i, mu);
      Mat sub(full.matrix.rows, full.matrix.cols);
      for (int j = 0; j < sys.size(); ++j) {
        if (j == i) continue;
        BlockOperator p = sys.casimir_pair_sub(i, j, mu, root_ids, cartan_positions);
        Rat cz = sys.points()[static_cast<std::size_t>(i)] - sys.points()[static_cast<std::size_t>(j)];
        sub = sub + p.matrix * (Rat(1) / cz);
      }
      if (!(sub == full.matrix)) return false;
    }
  }
  return true;
}

BlockVec apply_word(const TensorSystem& sys, const std::vector<int>& word, const BlockVec& v) {
  BlockVec cur = v;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    BlockOperator op = sys.diagonal_action(*it, cur.weight);
    cur.weight = cur.weight + sys.table()->elem(*it).root;
    cur.col = op.matrix * cur.col;
  }
  return cur;
}

BridgeReport bridge_example() {
  BridgeReport rep;
  auto fail = [&](const std::string& s) { rep.failures.push_back(s); };

  AlgebraSpec s;
  s.type = 'a';
  s.fam = Fam::tilde;
  s.m = 0;
  s.n = 4;
  auto t = StructureTable::build(s);
  RepModule nat = RepModule::natural(t);
  TensorSystem sys(std::vector<RepModule>(6, nat), default_points(6), CasimirVariant::ring);
  const StructureTable& tt = *sys.table();

  Weight mu0;
  mu0.set(2, 3);
  mu0.set(4, 1);
  mu0.set(6, 1);
  mu0.set(8, 1);
  rep.block_dim = sys.block_basis(mu0).dim;

  // singular space of the integer corner: joint kernel of its simple raisings
  std::vector<int> lower_raise = {tt.tag_id(2, 4), tt.tag_id(4, 6), tt.tag_id(6, 8)};
  Mat S = joint_kernel(sys, mu0, lower_raise);
  rep.sing_dim = static_cast<long>(S.cols);

  auto restricted = [&](const Weight& mu, const Mat& sub, int i) {
    Mat rhs = sys.hamiltonian_columns(i, mu, sub);
    Mat X = solve(sub, rhs);
    if (!(sub * X == rhs)) throw std::logic_error("hamiltonian leaves the singular space");
    return X;
  };

  Mat R0 = restricted(mu0, S, 0);
  rep.charpoly_src = charpoly(R0);

  // carry the singular space across the corner by an odd lowering word
  std::vector<int> word = {tt.tag_id(1, 4), tt.tag_id(1, 6), tt.tag_id(1, 8)};
  BlockVec img = apply_word(sys, word, BlockVec{mu0, S});
  Weight mubar;
  mubar.set(1, 3);
  mubar.set(2, 3);
  if (img.weight != mubar) {
    fail("word image lands at " + img.weight.str());
    return rep;
  }
  rep.image_dim = sys.block_basis(mubar).dim;

  // singular space of the mixed corner
  std::vector<int> upper_raise = {tt.tag_id(2, 1), tt.tag_id(1, 3), tt.tag_id(3, 5), tt.tag_id(5, 7)};
  Mat T = joint_kernel(sys, mubar, upper_raise);
  if (static_cast<long>(T.cols) != rep.sing_dim) {
    fail("singular dimensions differ across the corners");
    return rep;
  }

  Mat C;
  try {
    C = solve(T, img.col);
  } catch (const std::domain_error&) {
    fail("transported vectors leave the target singular space");
    return rep;
  }
  if (!(T * C == img.col)) {
    fail("transported vectors leave the target singular space");
    return rep;
  }
  if (rank(C) != C.cols) fail("the transport map is not injective");

  Mat R0bar = restricted(mubar, T, 0);
  rep.charpoly_tgt = charpoly(R0bar);
  if (!(rep.charpoly_src == rep.charpoly_tgt)) fail("characteristic polynomials differ at the first point");

  for (int i = 0; i < sys.size(); ++i) {
    Mat Ri = i == 0 ? R0 : restricted(mu0, S, i);
    Mat Rbar = i == 0 ? R0bar : restricted(mubar, T, i);
    if (!(Rbar * C == C * Ri)) fail("hamiltonian " + std::to_string(i) + " does not intertwine");
  }

  // eigenvalue data for the first Hamiltonian, with the eigenspace transport
  Poly mp = minpoly(R0);
  rep.eigenvalues = rational_roots(mp);
  for (const auto& [p, mult] : squarefree_factor(mp)) {
    if (mult > 1) {
      fail("first hamiltonian is not semisimple on the singular space");
      continue;
    }
    Mat K = kernel_basis(poly_apply(p, R0));
    if (K.cols == 0) continue;
    if (!(poly_apply(p, R0bar) * (C * K)).is_zero()) fail("eigenspace transport failed");
  }

  rep.ok = rep.failures.empty();
  return rep;
}

}  // namespace gaudin
