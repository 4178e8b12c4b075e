#include "gaudin/repmodule.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>

namespace gaudin {

namespace {

using Word = std::vector<int>;           // basis element ids, outermost first
using WordVec = std::map<Word, Rat>;     // formal combination of words

void wv_add(WordVec& out, const Word& w, const Rat& c) {
  if (c == 0) return;
  auto it = out.find(w);
  if (it == out.end()) {
    out.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second == 0) out.erase(it);
}

long delta_long(const StructureTable& t, const Weight& w) {
  Rat d = t.delta_weight(w);
  return rat_to_long(d);
}

// Weight of the defining basis vector v_r.
Weight nat_weight(Half r) {
  Weight w;
  w.add(std::abs(r), r > 0 ? Rat(1) : Rat(-1));
  return w;
}

std::string exps_label(const StructureTable& t, const std::vector<int>& exps) {
  std::string s;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] == 0) continue;
    int low = t.neg_id(t.positive_roots[i].raising_id);
    if (!s.empty()) s += " ";
    s += "f" + t.elem(low).tag.str();
    if (exps[i] > 1) s += "^" + std::to_string(exps[i]);
  }
  return s.empty() ? "1" : s;
}

// Parity of the block at weight mu inside the module with highest weight xi.
// The anchor is the parity of xi itself when that is defined (all half-odd
// coefficients integral), otherwise the highest block is declared even.
int block_parity(const Weight& xi, const Weight& mu) {
  int anchor = 0;
  bool integral = true;
  for (const auto& [h, c] : xi.eps)
    if (half_is_odd_index(h) && !is_integer(c)) integral = false;
  if (integral) anchor = weight_parity(xi);
  Rat drop = 0;
  Weight diff = xi - mu;
  for (const auto& [h, c] : diff.eps)
    if (half_is_odd_index(h)) drop += c;
  long d = rat_to_long(drop);
  return static_cast<int>(((anchor + d) % 2 + 2) % 2);
}

}  // namespace

struct RepModule::Engine {
  enum class Kind { natural, highest } kind = Kind::highest;
  std::shared_ptr<const StructureTable> table;
  Weight xi;
  Rat d = 0;
  StarKind star = StarKind::omega;
  bool complete = true;
  int depth = 0;

  std::vector<ModuleBlock> blocks;
  std::map<Weight, int> index;

  // defining-module data
  std::vector<Half> nat_index;  // window index of each block
  std::vector<Rat> nat_norm;    // <v_r, v_r>

  // highest-weight data, parallel to blocks
  struct HWBlock {
    std::vector<std::vector<int>> exps;  // kept exponent vectors
    std::vector<Word> words;             // kept monomial words
    Mat gram;                            // Gram of the kept words
    int radical_dim = 0;
    std::set<int> escapes;  // lowering ids with nonzero out-of-window image
  };
  std::vector<HWBlock> hw;
  std::map<int, LinComb> star_of;  // lowering id -> star expansion

  std::map<std::pair<int, Word>, WordVec> apply_memo;
  std::map<std::pair<Word, Word>, Rat> pair_memo;
  std::map<Weight, std::vector<Word>> verma_at;  // full monomial sets off the window
  std::map<std::pair<int, int>, Mat> act_cache;  // (elem id, block) -> matrix

  long budget() const { return 2L * depth; }

  Word word_of_exps(const std::vector<int>& exps) const {
    Word w;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      int low = table->neg_id(table->positive_roots[i].raising_id);
      for (int k = 0; k < exps[i]; ++k) w.push_back(low);
    }
    return w;
  }

  // Enumerates exponent vectors over the positive roots with total grading
  // cost <= cap, ascending lexicographically. Odd roots cap at exponent 1.
  void enumerate_exps(long cap, const std::function<void(const std::vector<int>&)>& emit) const {
    const auto& roots = table->positive_roots;
    std::vector<int> exps(roots.size(), 0);
    std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
      if (i == roots.size()) {
        emit(exps);
        return;
      }
      long step = roots[i].delta;
      long most = left / step;
      if (roots[i].parity == 1 && most > 1) most = 1;
      for (long k = 0; k <= most; ++k) {
        exps[i] = static_cast<int>(k);
        rec(i + 1, left - k * step);
      }
      exps[i] = 0;
    };
    rec(0, cap);
  }

  // Action of the basis element on a word class of the span: the element is
  // commuted inward, with the lowering base case appending a letter and the
  // Cartan / central base cases producing scalars.
  const WordVec& apply(int e, const Word& w) {
    auto key = std::make_pair(e, w);
    auto hit = apply_memo.find(key);
    if (hit != apply_memo.end()) return hit->second;
    const StructureTable& t = *table;
    WordVec out;
    if (t.is_k(e)) {
      wv_add(out, w, d);
    } else if (w.empty()) {
      if (t.is_lowering(e)) {
        wv_add(out, Word{e}, Rat(1));
      } else if (t.is_cartan(e)) {
        wv_add(out, Word{}, t.cartan_value(xi, e));
      }
      // raisings annihilate the highest weight vector
    } else {
      int h = w.front();
      Word rest(w.begin() + 1, w.end());
      for (const auto& [k, c] : t.bracket(e, h)) {
        for (const auto& [word, c2] : apply(k, rest)) wv_add(out, word, c * c2);
      }
      Rat sg = (t.elem(e).parity == 1 && t.elem(h).parity == 1) ? Rat(-1) : Rat(1);
      const WordVec& tail = apply(e, rest);
      for (const auto& [word, c2] : tail) {
        Word pw;
        pw.reserve(word.size() + 1);
        pw.push_back(h);
        pw.insert(pw.end(), word.begin(), word.end());
        wv_add(out, pw, sg * c2);
      }
    }
    return apply_memo.emplace(std::move(key), std::move(out)).first->second;
  }

  // Contravariant pairing <u v_hw, w v_hw>: the first letter of u crosses
  // over as its star image.
  Rat pair(const Word& u, const Word& w) {
    if (u.empty()) {
      if (w.empty()) return Rat(1);
      return Rat(0);
    }
    auto key = std::make_pair(u, w);
    auto hit = pair_memo.find(key);
    if (hit != pair_memo.end()) return hit->second;
    int f = u.front();
    Word rest(u.begin() + 1, u.end());
    Rat total = 0;
    for (const auto& [b, sg] : star_of.at(f)) {
      const WordVec wv = apply(b, w);  // copy: pair() below mutates the memo
      for (const auto& [word, c] : wv) {
        Rat p = pair(rest, word);
        total += sg * c * p;
      }
    }
    pair_memo.emplace(std::move(key), total);
    return total;
  }

  Rat pair_wordvec(const Word& u, const WordVec& x) {
    Rat total = 0;
    for (const auto& [word, c] : x) total += c * pair(u, word);
    return total;
  }

  // Full monomial set of the span at an exact weight (used for weights
  // outside the enumerated window).
  const std::vector<Word>& monomials_at(const Weight& nu) {
    auto hit = verma_at.find(nu);
    if (hit != verma_at.end()) return hit->second;
    std::vector<Word> out;
    long cap = delta_long(*table, xi - nu);
    if (cap >= 0) {
      enumerate_exps(cap, [&](const std::vector<int>& exps) {
        Weight mu = xi;
        for (std::size_t i = 0; i < exps.size(); ++i)
          if (exps[i] > 0) mu -= table->positive_roots[i].weight * Rat(exps[i]);
        if (mu == nu) out.push_back(word_of_exps(exps));
      });
    }
    return verma_at.emplace(nu, std::move(out)).first->second;
  }

  int block_of(const Weight& mu) const {
    auto it = index.find(mu);
    return it == index.end() ? -1 : it->second;
  }

  Mat natural_action(int e, int i) const {
    const StructureTable& t = *table;
    const BasisElement& el = t.elem(e);
    Half s = nat_index[static_cast<std::size_t>(i)];
    Weight nu = blocks[static_cast<std::size_t>(i)].mu + el.root;
    int j = block_of(nu);
    if (j < 0) return Mat(0, 1);
    Mat out(1, 1);
    for (const auto& [row, col, c] : el.mat) {
      if (col != s) continue;
      if (nat_weight(row) != nu)
        throw std::logic_error("defining module action left its weight block");
      out.at(0, 0) += c;
    }
    return out;
  }

  Mat highest_action(int e, int i, const Weight& mu) {
    const StructureTable& t = *table;
    const HWBlock& src = hw[static_cast<std::size_t>(i)];
    int sdim = blocks[static_cast<std::size_t>(i)].dim;
    Weight nu = mu + t.elem(e).root;
    int j = block_of(nu);
    if (j < 0) {
      if (t.is_lowering(e) && src.escapes.count(e))
        throw MarginError("action of " + t.elem(e).tag.str() + " from block " + mu.str() +
                          " leaves the window; rebuild with a larger depth");
      return Mat(0, static_cast<std::size_t>(sdim));
    }
    const HWBlock& tgt = hw[static_cast<std::size_t>(j)];
    int tdim = blocks[static_cast<std::size_t>(j)].dim;
    Mat P(static_cast<std::size_t>(tdim), static_cast<std::size_t>(sdim));
    for (int b = 0; b < sdim; ++b) {
      const WordVec img = apply(e, src.words[static_cast<std::size_t>(b)]);
      for (int a = 0; a < tdim; ++a)
        P.at(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) =
            pair_wordvec(tgt.words[static_cast<std::size_t>(a)], img);
    }
    return solve(tgt.gram, P);
  }
};

const std::shared_ptr<const StructureTable>& RepModule::table() const { return eng_->table; }
const Weight& RepModule::highest_weight() const { return eng_->xi; }
Rat RepModule::level_d() const { return eng_->d; }
StarKind RepModule::star() const { return eng_->star; }
bool RepModule::complete() const { return eng_->complete; }
int RepModule::depth() const { return eng_->depth; }
const std::vector<ModuleBlock>& RepModule::blocks() const { return eng_->blocks; }

int RepModule::block_index(const Weight& mu) const { return eng_->block_of(mu); }

long RepModule::total_dim() const {
  long n = 0;
  for (const auto& b : eng_->blocks) n += b.dim;
  return n;
}

Mat RepModule::action_block(int elem_id, const Weight& mu) const {
  Engine& e = *eng_;
  int i = e.block_of(mu);
  if (i < 0) throw std::invalid_argument("action_block: no block recorded at " + mu.str());
  const StructureTable& t = *e.table;
  if (elem_id < 0 || elem_id >= t.dim()) throw std::invalid_argument("action_block: bad element id");
  if (t.is_cartan(elem_id) || t.is_k(elem_id)) {
    std::size_t n = static_cast<std::size_t>(e.blocks[static_cast<std::size_t>(i)].dim);
    return Mat::identity(n) * t.cartan_value(mu, elem_id);
  }
  auto key = std::make_pair(elem_id, i);
  auto hit = e.act_cache.find(key);
  if (hit != e.act_cache.end()) return hit->second;
  Mat out = (e.kind == Engine::Kind::natural) ? e.natural_action(elem_id, i)
                                              : e.highest_action(elem_id, i, mu);
  e.act_cache.emplace(key, out);
  return out;
}

GramBlock RepModule::gram_block(const Weight& mu) const {
  Engine& e = *eng_;
  int i = e.block_of(mu);
  if (i < 0) throw std::invalid_argument("gram_block: no block recorded at " + mu.str());
  GramBlock g;
  g.weight = mu;
  if (e.kind == Engine::Kind::natural) {
    g.matrix = Mat(1, 1);
    g.matrix.at(0, 0) = e.nat_norm[static_cast<std::size_t>(i)];
    g.radical_dim = 0;
  } else {
    g.matrix = e.hw[static_cast<std::size_t>(i)].gram;
    g.radical_dim = e.hw[static_cast<std::size_t>(i)].radical_dim;
  }
  return g;
}

UnitarityReport RepModule::check_unitarizable() const {
  UnitarityReport rep;
  rep.unitarizable = true;
  for (const auto& b : eng_->blocks) {
    Mat g = gram_block(b.mu).matrix;
    // Exact symmetric elimination; every pivot of a positive definite matrix
    // is positive, and a zero or negative pivot certifies the failure.
    bool pd = true;
    std::size_t n = g.rows;
    for (std::size_t k = 0; k < n && pd; ++k) {
      if (g.at(k, k) <= 0) {
        pd = false;
        break;
      }
      for (std::size_t i2 = k + 1; i2 < n; ++i2) {
        Rat f = g.at(i2, k) / g.at(k, k);
        for (std::size_t j2 = k; j2 < n; ++j2) g.at(i2, j2) -= f * g.at(k, j2);
      }
    }
    rep.blocks.emplace_back(b.mu, pd ? "positive_definite" : "indefinite");
    if (!pd) rep.unitarizable = false;
  }
  return rep;
}

void RepModule::check_bracket_compatibility() const {
  Engine& e = *eng_;
  const StructureTable& t = *e.table;
  int N = t.dim();
  for (const auto& blk : e.blocks) {
    const Weight& mu = blk.mu;
    int sdim = blk.dim;
    for (int x = 0; x < N; ++x) {
      for (int y = x; y < N; ++y) {
        Weight tw = mu + t.elem(x).root + t.elem(y).root;
        int jt = e.block_of(tw);
        std::size_t tdim = jt < 0 ? 0 : static_cast<std::size_t>(e.blocks[static_cast<std::size_t>(jt)].dim);
        std::size_t sd = static_cast<std::size_t>(sdim);
        auto through = [&](int first, int second) -> Mat {
          Mat A = action_block(first, mu);  // throws when the window truncates a nonzero image
          if (A.rows == 0) return Mat(tdim, sd);
          Mat B = action_block(second, mu + t.elem(first).root);
          if (B.rows == 0) return Mat(tdim, sd);
          return B * A;
        };
        try {
          Mat lhs = through(y, x) - through(x, y) * Rat((t.elem(x).parity == 1 && t.elem(y).parity == 1) ? -1 : 1);
          Mat rhs(tdim, sd);
          for (const auto& [k, c] : t.bracket(x, y)) {
            Mat Ak = action_block(k, mu);
            if (Ak.rows == 0) continue;
            rhs = rhs + Ak * c;
          }
          if (lhs != rhs)
            throw std::logic_error("bracket compatibility fails for " + t.elem(x).tag.str() + ", " +
                                   t.elem(y).tag.str() + " on block " + mu.str());
        } catch (const MarginError&) {
          // one of the three actions leaves the window: not checkable here
        }
      }
    }
  }
}

const std::vector<std::vector<int>>& RepModule::block_words(const Weight& mu) const {
  Engine& e = *eng_;
  if (e.kind != Engine::Kind::highest)
    throw std::logic_error("block_words: module has no monomial presentation");
  int i = e.block_of(mu);
  if (i < 0) throw std::invalid_argument("block_words: no block recorded at " + mu.str());
  return e.hw[static_cast<std::size_t>(i)].words;
}

std::pair<Weight, std::vector<Rat>> RepModule::word_coordinates(const std::vector<int>& word) const {
  Engine& e = *eng_;
  if (e.kind != Engine::Kind::highest)
    throw std::logic_error("word_coordinates: module has no monomial presentation");
  const StructureTable& t = *e.table;
  Weight nu = e.xi;
  for (int id : word) {
    if (!t.is_lowering(id)) throw std::invalid_argument("word_coordinates: word must list lowering ids");
    nu += t.elem(id).root;
  }
  int i = e.block_of(nu);
  if (i < 0) {
    if (delta_long(t, e.xi - nu) > e.budget())
      throw MarginError("word lands outside the window at " + nu.str());
    return {nu, {}};
  }
  const Engine::HWBlock& blk = e.hw[static_cast<std::size_t>(i)];
  std::size_t n = blk.words.size();
  Mat p(n, 1);
  for (std::size_t a = 0; a < n; ++a) p.at(a, 0) = e.pair(blk.words[a], word);
  Mat x = solve(blk.gram, p);
  std::vector<Rat> coords(n);
  for (std::size_t a = 0; a < n; ++a) coords[a] = x.at(a, 0);
  return {nu, coords};
}

RepModule RepModule::natural(std::shared_ptr<const StructureTable> t, StarKind star) {
  RepModule m;
  m.eng_ = std::make_shared<Engine>();
  Engine& e = *m.eng_;
  e.kind = Engine::Kind::natural;
  e.table = std::move(t);
  e.star = star;
  e.complete = true;
  e.depth = 0;
  const StructureTable& tab = *e.table;

  Half hw_index = tab.window.front();
  e.xi = nat_weight(hw_index);
  e.d = 0;

  struct Row {
    Half r;
    long delta;
    Weight mu;
  };
  std::vector<Row> rows;
  for (Half r : tab.window) {
    Weight mu = nat_weight(r);
    rows.push_back(Row{r, delta_long(tab, e.xi - mu), mu});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.delta != b.delta) return a.delta < b.delta;
    return a.mu < b.mu;
  });
  for (const Row& row : rows) {
    ModuleBlock b;
    b.mu = row.mu;
    b.dim = 1;
    b.parity = half_parity(row.r);
    b.labels = {"v(" + half_str(row.r) + ")"};
    e.index.emplace(b.mu, static_cast<int>(e.blocks.size()));
    e.blocks.push_back(std::move(b));
    e.nat_index.push_back(row.r);
  }

  // Norms spread from <v_hw, v_hw> = 1 along lowerings: if f v_s = c v_u and
  // star(f) f v_s = kappa v_s then <v_u, v_u> = kappa <v_s, v_s> / c^2.
  e.nat_norm.assign(e.blocks.size(), Rat(0));
  std::vector<bool> known(e.blocks.size(), false);
  std::size_t hw_block = static_cast<std::size_t>(e.block_of(e.xi));
  e.nat_norm[hw_block] = 1;
  known[hw_block] = true;
  std::vector<int> lows;
  for (int id = 0; id < tab.dim(); ++id)
    if (tab.is_lowering(id)) lows.push_back(id);
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < e.blocks.size(); ++i) {
      if (!known[i]) continue;
      Half s = e.nat_index[i];
      for (int f : lows) {
        const BasisElement& el = tab.elem(f);
        Half target = 0;
        Rat c = 0;
        for (const auto& [row, col, coeff] : el.mat) {
          if (col != s) continue;
          target = row;
          c = coeff;
        }
        if (c == 0) continue;
        int j = e.block_of(nat_weight(target));
        if (j < 0 || known[static_cast<std::size_t>(j)]) continue;
        LinComb st = (e.star == StarKind::omega) ? tab.omega(f) : tab.omega_prime(f);
        Rat kappa = 0;
        for (const auto& [b, sg] : st) {
          for (const auto& [row, col, coeff] : tab.elem(b).mat) {
            if (col != target) continue;
            if (row != s) throw std::logic_error("defining module norm propagation left the block");
            kappa += sg * coeff * c;
          }
        }
        e.nat_norm[static_cast<std::size_t>(j)] = kappa * e.nat_norm[i] / (c * c);
        known[static_cast<std::size_t>(j)] = true;
        grew = true;
      }
    }
  }
  for (std::size_t i = 0; i < e.blocks.size(); ++i)
    if (!known[i]) throw std::logic_error("defining module is not generated from its highest vector");
  for (const Rat& g : e.nat_norm)
    if (g == 0) throw std::logic_error("defining module norm vanished");
  return m;
}

RepModule RepModule::irreducible(std::shared_ptr<const StructureTable> t, const Weight& xi, int depth,
                                 StarKind star) {
  if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
  RepModule m;
  m.eng_ = std::make_shared<Engine>();
  Engine& e = *m.eng_;
  e.kind = Engine::Kind::highest;
  e.table = std::move(t);
  e.xi = xi;
  e.d = xi.level;
  e.star = star;
  e.depth = depth;
  const StructureTable& tab = *e.table;
  if (tab.k_id < 0 && xi.level != 0)
    throw std::invalid_argument("nonzero level needs an extended table");

  for (int id = 0; id < tab.dim(); ++id)
    if (tab.is_lowering(id))
      e.star_of.emplace(id, star == StarKind::omega ? tab.omega(id) : tab.omega_prime(id));

  // Collect monomial exponent vectors by weight.
  std::map<Weight, std::vector<std::vector<int>>> span;
  e.enumerate_exps(e.budget(), [&](const std::vector<int>& exps) {
    Weight mu = xi;
    for (std::size_t i = 0; i < exps.size(); ++i)
      if (exps[i] > 0) mu -= tab.positive_roots[i].weight * Rat(exps[i]);
    span[mu].push_back(exps);
  });

  struct Key {
    long delta;
    Weight mu;
  };
  std::vector<Key> order;
  for (const auto& [mu, exps] : span) order.push_back(Key{delta_long(tab, xi - mu), mu});
  std::sort(order.begin(), order.end(), [](const Key& a, const Key& b) {
    if (a.delta != b.delta) return a.delta < b.delta;
    return a.mu < b.mu;
  });

  for (const Key& key : order) {
    const auto& exps_list = span[key.mu];
    std::size_t nf = exps_list.size();
    std::vector<Word> words(nf);
    for (std::size_t i = 0; i < nf; ++i) words[i] = e.word_of_exps(exps_list[i]);
    Mat G(nf, nf);
    for (std::size_t i = 0; i < nf; ++i)
      for (std::size_t j = 0; j < nf; ++j) G.at(i, j) = e.pair(words[i], words[j]);
    if (G != G.transpose())
      throw std::logic_error("contravariant Gram is not symmetric at " + key.mu.str());
    Mat R = G;
    std::vector<std::size_t> piv = rref(R);
    if (piv.empty()) continue;  // the whole weight space is radical

    Engine::HWBlock hb;
    hb.radical_dim = static_cast<int>(nf - piv.size());
    hb.gram = Mat(piv.size(), piv.size());
    for (std::size_t a = 0; a < piv.size(); ++a)
      for (std::size_t b = 0; b < piv.size(); ++b) hb.gram.at(a, b) = G.at(piv[a], piv[b]);
    ModuleBlock blk;
    blk.mu = key.mu;
    blk.dim = static_cast<int>(piv.size());
    blk.parity = block_parity(xi, key.mu);
    for (std::size_t a = 0; a < piv.size(); ++a) {
      hb.exps.push_back(exps_list[piv[a]]);
      hb.words.push_back(words[piv[a]]);
      blk.labels.push_back(exps_label(tab, exps_list[piv[a]]));
    }
    e.index.emplace(blk.mu, static_cast<int>(e.blocks.size()));
    e.blocks.push_back(std::move(blk));
    e.hw.push_back(std::move(hb));
  }
  if (e.blocks.empty()) throw std::logic_error("no block survived at the highest weight");

  // Window escape test: a lowering applied to a kept class whose target falls
  // past the window either pairs to zero against the full monomial set there
  // (provably zero image) or marks the module as windowed.
  for (std::size_t i = 0; i < e.blocks.size(); ++i) {
    long D = delta_long(tab, xi - e.blocks[i].mu);
    for (std::size_t r = 0; r < tab.positive_roots.size(); ++r) {
      const Root& root = tab.positive_roots[r];
      if (D + root.delta <= e.budget()) continue;
      int f = tab.neg_id(root.raising_id);
      Weight nu = e.blocks[i].mu - root.weight;
      const std::vector<Word>& full = e.monomials_at(nu);
      bool escapes = false;
      for (const Word& s : e.hw[i].words) {
        const WordVec img = e.apply(f, s);
        for (const Word& tw : full) {
          if (e.pair_wordvec(tw, img) != 0) {
            escapes = true;
            break;
          }
        }
        if (escapes) break;
      }
      if (escapes) {
        e.hw[i].escapes.insert(f);
        e.complete = false;
      }
    }
  }
  return m;
}

}  // namespace gaudin
