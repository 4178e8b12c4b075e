#ifndef GAUDIN_TENSOR_HPP
#define GAUDIN_TENSOR_HPP

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gaudin/matrix.hpp"
#include "gaudin/poly.hpp"
#include "gaudin/repmodule.hpp"

namespace gaudin {

// Which quadratic Casimir the pair operators use: the window form, or the
// centrally extended form with the K cross terms. On extended tables the
// window form routes every leg through the centering map, so that levels
// enter only through the documented scalar discrepancy.
enum class CasimirVariant { ring, central };

// One total-weight block of the tensor product, materialized lazily. The
// basis lists every tuple of factor blocks whose weights sum to the block
// weight, ordered lexicographically by factor-block index, each expanded over
// the factor labels in odometer order (last factor fastest).
struct TensorBlockBasis {
  Weight mu;
  struct Combo {
    std::vector<int> block;   // block index per factor
    std::vector<int> prefix;  // parity of slots before k, per slot k
    std::vector<int> dims;    // label count per factor
    long offset = 0;          // flat position of the combo's first item
    long size = 1;
  };
  std::vector<Combo> combos;
  long dim = 0;

  // Decodes a flat position into (factor block index, label index) pairs.
  std::vector<std::pair<int, int>> item(long flat) const;
};

struct BlockOperator {
  Weight weight;
  Mat matrix;
  std::string meta;
};

struct DiagReport {
  bool diagonalizable = false;
  Poly minimal;
  Poly certificate;  // the squarefree minimal polynomial, or a repeated factor
};

// z_i = 2^i - 1: the default pairwise-distinct evaluation points.
std::vector<Rat> default_points(int l);

// An ordered tensor product of modules over one algebra with marked points.
// Handles are cheap to copy; block bases are cached per weight
// (single-threaded use per system).
class TensorSystem {
 public:
  TensorSystem(std::vector<RepModule> factors, std::vector<Rat> points, CasimirVariant variant);

  const std::shared_ptr<const StructureTable>& table() const;
  int size() const { return static_cast<int>(factors_.size()); }
  const RepModule& factor(int i) const { return factors_.at(static_cast<std::size_t>(i)); }
  const std::vector<Rat>& points() const { return z_; }
  CasimirVariant variant() const { return variant_; }
  Weight top_weight() const;

  // Throws MarginError naming factor and weight when a windowed factor might
  // hide a contributing block.
  const TensorBlockBasis& block_basis(const Weight& mu) const;

  // Sum over slots of the element with the parity-prefix sign. The matrix
  // maps the mu block to the mu + root block (0 rows when that is empty).
  BlockOperator diagonal_action(int elem_id, const Weight& mu) const;

  // The two-slot Casimir in slots i != j (0-based), square on the mu block.
  BlockOperator casimir_pair(int i, int j, const Weight& mu) const;

  // Same operator summed only over the listed positive roots (indices into
  // positive_roots) and Cartan entries (positions into cartan_ids), for
  // sub-window comparisons.
  BlockOperator casimir_pair_sub(int i, int j, const Weight& mu, const std::vector<int>& root_ids,
                                 const std::vector<int>& cartan_positions) const;

  // Sum of casimir_pair(i, j) / (z_i - z_j) over j != i.
  BlockOperator hamiltonian(int i, const Weight& mu) const;

  // The Hamiltonian applied to given columns without materializing the full
  // block matrix; the workhorse for large blocks.
  Mat hamiltonian_columns(int i, const Weight& mu, const Mat& cols) const;

  // Columns span the joint kernel of the simple raising actions on the block.
  Mat singular_block(const Weight& mu) const;

 private:
  std::vector<RepModule> factors_;
  std::vector<Rat> z_;
  CasimirVariant variant_ = CasimirVariant::ring;
  mutable std::map<Weight, TensorBlockBasis> basis_cache_;

  // Slot operators are sparse (a handful of entries per tuple) and heavily
  // shared between Casimir pairs, so they are cached as triplet lists keyed
  // by (element, slot, source weight); the target weight is determined.
  struct SparseOp {
    long rows = 0;
    long cols = 0;
    std::vector<std::tuple<long, long, Rat>> entries;
  };
  mutable std::map<std::tuple<int, int, Weight>, SparseOp> slot_cache_;

  struct SlotCtx;
  const SparseOp& slot_sparse(int elem_id, int slot, const TensorBlockBasis& src,
                              const TensorBlockBasis& tgt) const;
  Mat slot_op(int elem_id, int slot, const TensorBlockBasis& src, const TensorBlockBasis& tgt) const;
  // Applies the two-slot Casimir restricted to the given root / Cartan lists
  // to the columns of x (pass identity to materialize the block matrix).
  Mat casimir_apply(int i, int j, const Weight& mu, const std::vector<int>* root_ids,
                    const std::vector<int>* cartan_positions, const Mat& x) const;
  void margin_guard(const Weight& mu) const;
};

// Matrix of the operator in the subspace basis (columns of sub). A vector
// leaving the span is an internal invariant violation, not a user error.
Mat restrict_to(const BlockOperator& op, const Mat& sub);

// ab - ba on one block; both operators are even so no super sign enters.
Mat commutator(const BlockOperator& a, const BlockOperator& b);

// Squarefree test of the exact minimal polynomial, with the witness factor.
DiagReport diagonalizable(const Mat& m);

// Approximate eigenvalues: numeric roots of the exact characteristic
// polynomial. Presentation only, never used in exact reasoning.
std::vector<CF> spectrum_numeric(const Mat& m, int digits);

}  // namespace gaudin

#endif
