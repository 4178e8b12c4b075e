#include "gaudin/tensor.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace gaudin {

namespace {

bool rat_is_int(const Rat& r) { return r.get_den() == 1; }

long rat_long(const Rat& r) { return r.get_num().get_si(); }

}  // namespace

std::vector<std::pair<int, int>> TensorBlockBasis::item(long flat) const {
  for (const auto& c : combos) {
    if (flat < c.offset || flat >= c.offset + c.size) continue;
    long rem = flat - c.offset;
    std::size_t l = c.block.size();
    std::vector<std::pair<int, int>> out(l);
    for (std::size_t k = l; k-- > 0;) {
      out[k] = {c.block[k], static_cast<int>(rem % c.dims[k])};
      rem /= c.dims[k];
    }
    return out;
  }
  throw std::out_of_range("tensor basis item index");
}

std::vector<Rat> default_points(int l) {
  std::vector<Rat> z;
  long p = 1;
  for (int i = 0; i < l; ++i) {
    z.push_back(Rat(p - 1));
    p *= 2;
  }
  return z;
}

TensorSystem::TensorSystem(std::vector<RepModule> factors, std::vector<Rat> points, CasimirVariant variant)
    : factors_(std::move(factors)), z_(std::move(points)), variant_(variant) {
  if (factors_.size() < 2) throw std::invalid_argument("tensor system needs at least two factors");
  if (z_.size() != factors_.size()) throw std::invalid_argument("tensor system needs one point per factor");
  const AlgebraSpec& s0 = factors_.front().table()->spec;
  for (const auto& f : factors_) {
    const AlgebraSpec& s = f.table()->spec;
    if (s.type != s0.type || s.fam != s0.fam || s.m != s0.m || s.n != s0.n || s.extended != s0.extended)
      throw std::invalid_argument("tensor factors must live over one algebra");
  }
  for (std::size_t i = 0; i < z_.size(); ++i)
    for (std::size_t j = i + 1; j < z_.size(); ++j)
      if (z_[i] == z_[j]) throw std::invalid_argument("evaluation points must be pairwise distinct");
}

const std::shared_ptr<const StructureTable>& TensorSystem::table() const {
  return factors_.front().table();
}

Weight TensorSystem::top_weight() const {
  Weight w;
  for (const auto& f : factors_) w += f.highest_weight();
  return w;
}

void TensorSystem::margin_guard(const Weight& mu) const {
  const StructureTable& t = *table();
  Rat dtot_r = t.delta_weight(top_weight() - mu);
  if (!rat_is_int(dtot_r)) return;  // unreachable from the joint top: empty block
  long dtot = rat_long(dtot_r);
  if (dtot < 0) return;

  // A tuple can place two factors beyond their windows only when the total
  // grading cost exceeds the two smallest budgets combined; the per-factor
  // scan below only certifies single escapes.
  std::vector<long> budgets;
  for (const auto& f : factors_)
    if (!f.complete()) budgets.push_back(2L * f.depth());
  if (budgets.size() >= 2) {
    std::sort(budgets.begin(), budgets.end());
    if (dtot > budgets[0] + budgets[1])
      throw MarginError("tensor block at " + mu.str() +
                        " may combine two factors beyond their windows; enlarge depth");
  }

  const std::size_t l = factors_.size();
  for (std::size_t i = 0; i < l; ++i) {
    if (factors_[i].complete()) continue;
    std::function<void(std::size_t, const Weight&)> rec = [&](std::size_t k, const Weight& acc) {
      if (k == l) {
        Weight need = mu - acc;
        if (factors_[i].block_index(need) >= 0) return;
        if (need.level != factors_[i].level_d()) return;
        Rat dr = t.delta_weight(factors_[i].highest_weight() - need);
        if (!rat_is_int(dr)) return;
        long dd = rat_long(dr);
        if (dd < 0 || dd % 2 != 0) return;
        if (dd <= 2L * factors_[i].depth()) return;  // inside the window: provably zero
        throw MarginError("tensor block at " + mu.str() + " needs factor " + std::to_string(i) +
                          " beyond its window at " + need.str() + "; enlarge depth");
      }
      if (k == i) {
        rec(k + 1, acc);
        return;
      }
      for (const auto& mb : factors_[k].blocks()) rec(k + 1, acc + mb.mu);
    };
    rec(0, Weight{});
  }
}

const TensorBlockBasis& TensorSystem::block_basis(const Weight& mu) const {
  auto it = basis_cache_.find(mu);
  if (it != basis_cache_.end()) return it->second;
  margin_guard(mu);

  TensorBlockBasis B;
  B.mu = mu;
  const std::size_t l = factors_.size();
  std::vector<int> pick(l, 0);
  std::function<void(std::size_t, const Weight&)> rec = [&](std::size_t k, const Weight& acc) {
    if (k + 1 == l) {
      int b = factors_[k].block_index(mu - acc);
      if (b < 0) return;
      pick[k] = b;
      TensorBlockBasis::Combo c;
      c.block = pick;
      c.dims.resize(l);
      c.prefix.resize(l);
      int par = 0;
      long sz = 1;
      for (std::size_t q = 0; q < l; ++q) {
        const ModuleBlock& mb = factors_[q].blocks()[static_cast<std::size_t>(pick[q])];
        c.prefix[q] = par;
        par = (par + mb.parity) % 2;
        c.dims[q] = mb.dim;
        sz *= mb.dim;
      }
      c.offset = B.dim;
      c.size = sz;
      B.dim += sz;
      B.combos.push_back(std::move(c));
      return;
    }
    const auto& blocks = factors_[k].blocks();
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
      pick[k] = b;
      rec(k + 1, acc + blocks[static_cast<std::size_t>(b)].mu);
    }
  };
  rec(0, Weight{});
  return basis_cache_.emplace(mu, std::move(B)).first->second;
}

const TensorSystem::SparseOp& TensorSystem::slot_sparse(int elem_id, int slot, const TensorBlockBasis& src,
                                                        const TensorBlockBasis& tgt) const {
  auto key = std::make_tuple(elem_id, slot, src.mu);
  auto hit = slot_cache_.find(key);
  if (hit != slot_cache_.end()) return hit->second;

  const StructureTable& t = *table();
  const BasisElement& be = t.elem(elem_id);
  SparseOp op;
  op.rows = tgt.dim;
  op.cols = src.dim;

  std::map<std::vector<int>, std::size_t> pos;
  for (std::size_t i = 0; i < tgt.combos.size(); ++i) pos[tgt.combos[i].block] = i;

  const std::size_t l = factors_.size();
  std::vector<int> labels(l, 0);
  for (const auto& c : src.combos) {
    const Weight& nu = factors_[static_cast<std::size_t>(slot)]
                           .blocks()[static_cast<std::size_t>(c.block[static_cast<std::size_t>(slot)])]
                           .mu;
    Mat A = factors_[static_cast<std::size_t>(slot)].action_block(elem_id, nu);
    if (A.rows == 0) continue;
    int tb = factors_[static_cast<std::size_t>(slot)].block_index(nu + be.root);
    std::vector<int> tblock = c.block;
    tblock[static_cast<std::size_t>(slot)] = tb;
    auto pit = pos.find(tblock);
    if (pit == pos.end()) throw std::logic_error("tensor slot action left the expected block");
    const auto& tc = tgt.combos[pit->second];

    bool negate = (be.parity != 0) && (c.prefix[static_cast<std::size_t>(slot)] & 1);
    std::vector<long> tstride(l, 1);
    for (std::size_t q = l - 1; q-- > 0;) tstride[q] = tstride[q + 1] * tc.dims[q + 1];

    for (long f = 0; f < c.size; ++f) {
      long rem = f;
      for (std::size_t q = l; q-- > 0;) {
        labels[q] = static_cast<int>(rem % c.dims[q]);
        rem /= c.dims[q];
      }
      long base = tc.offset;
      for (std::size_t q = 0; q < l; ++q)
        if (q != static_cast<std::size_t>(slot)) base += labels[q] * tstride[q];
      int lslot = labels[static_cast<std::size_t>(slot)];
      for (std::size_t r = 0; r < A.rows; ++r) {
        const Rat& cv = A.at(r, static_cast<std::size_t>(lslot));
        if (cv == 0) continue;
        Rat v = cv;
        if (negate) v = -v;
        op.entries.emplace_back(base + static_cast<long>(r) * tstride[static_cast<std::size_t>(slot)],
                                c.offset + f, std::move(v));
      }
    }
  }
  return slot_cache_.emplace(std::move(key), std::move(op)).first->second;
}

Mat TensorSystem::slot_op(int elem_id, int slot, const TensorBlockBasis& src, const TensorBlockBasis& tgt) const {
  const SparseOp& op = slot_sparse(elem_id, slot, src, tgt);
  Mat M(static_cast<std::size_t>(op.rows), static_cast<std::size_t>(op.cols));
  for (const auto& [r, c, v] : op.entries) M.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) += v;
  return M;
}

BlockOperator TensorSystem::diagonal_action(int elem_id, const Weight& mu) const {
  const StructureTable& t = *table();
  const TensorBlockBasis& B = block_basis(mu);
  const BasisElement& be = t.elem(elem_id);
  const TensorBlockBasis& T = be.root.is_zero() ? B : block_basis(mu + be.root);
  Mat M(static_cast<std::size_t>(T.dim), static_cast<std::size_t>(B.dim));
  for (int s = 0; s < size(); ++s) M = M + slot_op(elem_id, s, B, T);
  return BlockOperator{mu, std::move(M), "sum over slots of " + be.tag.str()};
}

Mat TensorSystem::casimir_apply(int i, int j, const Weight& mu, const std::vector<int>* root_ids,
                                const std::vector<int>* cartan_positions, const Mat& x) const {
  if (i == j || i < 0 || j < 0 || i >= size() || j >= size())
    throw std::invalid_argument("casimir pair needs two distinct slots");
  const StructureTable& t = *table();
  const TensorBlockBasis& B = block_basis(mu);
  if (x.rows != static_cast<std::size_t>(B.dim))
    throw std::invalid_argument("column height does not match the block");
  Mat M(static_cast<std::size_t>(B.dim), x.cols);

  auto apply_acc = [](const SparseOp& op, const Mat& v, const Rat& cf, Mat& out) {
    for (const auto& [r, c, val] : op.entries)
      for (std::size_t q = 0; q < v.cols; ++q) {
        const Rat& s = v.at(static_cast<std::size_t>(c), q);
        if (s != 0) out.at(static_cast<std::size_t>(r), q) += val * cf * s;
      }
  };
  auto apply_new = [&](const SparseOp& op, const Mat& v) {
    Mat out(static_cast<std::size_t>(op.rows), v.cols);
    apply_acc(op, v, Rat(1), out);
    return out;
  };

  auto do_root = [&](const Root& rt) {
    // dual pair term: lowering combination in slot i, raising in slot j,
    // the slot-j factor applied first
    {
      const TensorBlockBasis& mid = block_basis(mu + rt.weight);
      Mat up_j = apply_new(slot_sparse(rt.raising_id, j, B, mid), x);
      if (!up_j.is_zero())
        for (const auto& [id, cf] : rt.dual_lowering) apply_acc(slot_sparse(id, i, mid, B), up_j, cf, M);
    }
    // mirrored term with the root parity sign
    {
      const TensorBlockBasis& mid = block_basis(mu - rt.weight);
      Mat down_j(static_cast<std::size_t>(mid.dim), x.cols);
      for (const auto& [id, cf] : rt.dual_lowering) apply_acc(slot_sparse(id, j, B, mid), x, cf, down_j);
      if (!down_j.is_zero())
        apply_acc(slot_sparse(rt.raising_id, i, mid, B), down_j, rt.parity != 0 ? Rat(-1) : Rat(1), M);
    }
  };
  if (root_ids) {
    for (int ri : *root_ids) do_root(t.positive_roots.at(static_cast<std::size_t>(ri)));
  } else {
    for (const Root& rt : t.positive_roots) do_root(rt);
  }

  Rat di = factors_[static_cast<std::size_t>(i)].level_d();
  Rat dj = factors_[static_cast<std::size_t>(j)].level_d();
  auto do_cartan = [&](std::size_t q) {
    int er = t.cartan_ids.at(q);
    // The window Casimir lives in the non-extended algebra; on extended
    // factors its legs act through the centering map, which shifts exactly
    // the diagonal elements by a multiple of the level.
    Rat shift = variant_ == CasimirVariant::ring ? t.str_J(er) : Rat(0);
    Mat cj = apply_new(slot_sparse(er, j, B, B), x);
    if (shift != 0 && dj != 0) cj = cj + x * (shift * dj);
    Mat ci = apply_new(slot_sparse(er, i, B, B), cj);
    if (shift != 0 && di != 0) ci = ci + cj * (shift * di);
    if (half_is_int(t.pos.at(q)))
      M = M + ci;
    else
      M = M - ci;
    if (variant_ == CasimirVariant::central && t.k_id >= 0) {
      if (di != 0) apply_acc(slot_sparse(er, j, B, B), x, -di, M);
      if (dj != 0) apply_acc(slot_sparse(er, i, B, B), x, -dj, M);
    }
  };
  if (cartan_positions) {
    for (int q : *cartan_positions) do_cartan(static_cast<std::size_t>(q));
  } else {
    for (std::size_t q = 0; q < t.cartan_ids.size(); ++q) do_cartan(q);
  }

  return M;
}

BlockOperator TensorSystem::casimir_pair(int i, int j, const Weight& mu) const {
  const TensorBlockBasis& B = block_basis(mu);
  Mat M = casimir_apply(i, j, mu, nullptr, nullptr, Mat::identity(static_cast<std::size_t>(B.dim)));
  return BlockOperator{mu, std::move(M),
                       "two slot casimir (" + std::to_string(i) + "," + std::to_string(j) + ")"};
}

BlockOperator TensorSystem::casimir_pair_sub(int i, int j, const Weight& mu, const std::vector<int>& root_ids,
                                             const std::vector<int>& cartan_positions) const {
  const StructureTable& t = *table();
  for (int ri : root_ids)
    if (ri < 0 || ri >= static_cast<int>(t.positive_roots.size()))
      throw std::invalid_argument("root index out of range");
  for (int q : cartan_positions)
    if (q < 0 || q >= static_cast<int>(t.cartan_ids.size()))
      throw std::invalid_argument("cartan position out of range");
  const TensorBlockBasis& B = block_basis(mu);
  Mat M = casimir_apply(i, j, mu, &root_ids, &cartan_positions,
                        Mat::identity(static_cast<std::size_t>(B.dim)));
  return BlockOperator{mu, std::move(M),
                       "restricted two slot casimir (" + std::to_string(i) + "," + std::to_string(j) + ")"};
}

BlockOperator TensorSystem::hamiltonian(int i, const Weight& mu) const {
  if (i < 0 || i >= size()) throw std::invalid_argument("hamiltonian slot out of range");
  const TensorBlockBasis& B = block_basis(mu);
  Mat M(static_cast<std::size_t>(B.dim), static_cast<std::size_t>(B.dim));
  for (int j = 0; j < size(); ++j) {
    if (j == i) continue;
    BlockOperator p = casimir_pair(i, j, mu);
    Rat c = z_[static_cast<std::size_t>(i)] - z_[static_cast<std::size_t>(j)];
    M = M + p.matrix * (Rat(1) / c);
  }
  return BlockOperator{mu, std::move(M), "hamiltonian " + std::to_string(i)};
}

Mat TensorSystem::hamiltonian_columns(int i, const Weight& mu, const Mat& cols) const {
  if (i < 0 || i >= size()) throw std::invalid_argument("hamiltonian slot out of range");
  Mat M(cols.rows, cols.cols);
  for (int j = 0; j < size(); ++j) {
    if (j == i) continue;
    Mat p = casimir_apply(i, j, mu, nullptr, nullptr, cols);
    Rat c = z_[static_cast<std::size_t>(i)] - z_[static_cast<std::size_t>(j)];
    M = M + p * (Rat(1) / c);
  }
  return M;
}

Mat TensorSystem::singular_block(const Weight& mu) const {
  const StructureTable& t = *table();
  const TensorBlockBasis& B = block_basis(mu);
  std::vector<Mat> stack;
  for (int ri : t.simple_roots) {
    int e = t.positive_roots[static_cast<std::size_t>(ri)].raising_id;
    BlockOperator up = diagonal_action(e, mu);
    if (up.matrix.rows == 0) continue;
    stack.push_back(std::move(up.matrix));
  }
  if (stack.empty()) return Mat::identity(static_cast<std::size_t>(B.dim));
  return kernel_basis(vstack(stack));
}

Mat restrict_to(const BlockOperator& op, const Mat& sub) {
  if (sub.rows != op.matrix.cols) throw std::invalid_argument("subspace basis has the wrong height");
  if (sub.cols == 0) return Mat(0, 0);
  Mat rhs = op.matrix * sub;
  Mat X;
  try {
    X = solve(sub, rhs);
  } catch (const std::domain_error&) {
    throw std::logic_error("operator leaves the subspace on block " + op.weight.str());
  }
  if (!(sub * X == rhs)) throw std::logic_error("operator leaves the subspace on block " + op.weight.str());
  return X;
}

Mat commutator(const BlockOperator& a, const BlockOperator& b) {
  if (a.weight != b.weight || a.matrix.rows != b.matrix.rows || a.matrix.cols != b.matrix.cols)
    throw std::invalid_argument("commutator needs two operators on one block");
  return a.matrix * b.matrix - b.matrix * a.matrix;
}

DiagReport diagonalizable(const Mat& m) {
  DiagReport r;
  r.minimal = minpoly(m);
  if (is_squarefree(r.minimal)) {
    r.diagonalizable = true;
    r.certificate = r.minimal;
    return r;
  }
  for (const auto& [p, mult] : squarefree_factor(r.minimal))
    if (mult > 1) {
      r.certificate = p;
      break;
    }
  return r;
}

std::vector<CF> spectrum_numeric(const Mat& m, int digits) {
  return roots_numeric(charpoly(m), digits);
}

}  // namespace gaudin
