#ifndef GAUDIN_DUALITY_HPP
#define GAUDIN_DUALITY_HPP

#include <memory>
#include <string>
#include <vector>

#include "gaudin/tensor.hpp"

namespace gaudin {

// The matched pair of highest weights attached to one partition at level d:
// the (m|n) window value, the rank-k truncated value, and the finite-rank
// realization weight for the level-carrying families (the shifted eps part
// plus d*L0; equals super_w when d = 0).
struct WeightPair {
  Weight super_w;
  Weight lie_w;
  Weight super_shifted;
};

WeightPair correspond_weights(const Partition& p, const Rat& d, char type, int m, int n, int k);

// A module over a rank-n table cut down to the rank-k weight lattice. Blocks
// outside the lattice are dropped; actions of rank-k elements delegate to the
// source module through the shared index tags, and components landing outside
// the lattice are projected away.
class TruncatedModule {
 public:
  TruncatedModule(RepModule source, std::shared_ptr<const StructureTable> table_k);

  const std::shared_ptr<const StructureTable>& table() const { return table_k_; }
  const RepModule& source() const { return source_; }
  bool zero() const { return blocks_.empty(); }
  long total_dim() const;
  const std::vector<ModuleBlock>& blocks() const { return blocks_; }
  int block_index(const Weight& mu) const;  // -1 when absent
  // Matrix of the rank-k element from the mu block to the mu + root block,
  // in the source module's label bases; 0 rows when the target is projected
  // away or provably missing.
  Mat action_block(int elem_id, const Weight& mu) const;
  GramBlock gram_block(const Weight& mu) const;

 private:
  RepModule source_;
  std::shared_ptr<const StructureTable> table_k_;
  std::vector<ModuleBlock> blocks_;
  std::vector<int> elem_map_;  // rank-k element id -> source element id
};

// Restriction of rep to the rank-k lattice of its own family. Requires
// k <= the source rank.
TruncatedModule truncation_restrict(const RepModule& rep, int k);

// Builds the xi module at rank n, truncates to rank k, builds the xi module
// at rank k directly, and compares: same blocks and dimensions, matching
// actions of every rank-k element, and matching contravariant forms, all up
// to the canonical basis map evaluated on the standard word bases. When xi
// lies outside the rank-k lattice the truncation must vanish. Intended for
// complete constructions; a window cut at depth can differ across ranks.
bool truncation_check(char type, Fam fam, int m, int n, int k, const Weight& xi, int depth,
                      StarKind star = StarKind::omega);

// One spectra comparison: a list of partition/level factor pairs realized on
// both sides of the correspondence, one target singular weight, shared
// evaluation points. Depths bound the windowed constructions; seed and
// max_attempts drive the deterministic resampling used when a Hamiltonian
// fails the diagonalizability certificate at unlucky points.
struct CorrespondenceCase {
  char type = 'a';
  int m = 1;
  int n = 1;
  int k = 1;
  std::vector<Partition> partitions;
  std::vector<Rat> levels;  // one per partition
  Partition mu;             // target weight, realized at level sum(levels)
  std::vector<Rat> z;       // empty -> default_points
  int super_depth = 8;
  int lie_depth = 8;
  unsigned long long seed = 12345;
  int max_attempts = 5;
};

struct HamiltonianComparison {
  Poly super_poly;
  Poly lie_poly;
  bool equal = false;
  bool both_diagonalizable = false;
};

struct ComparisonReport {
  bool ok = false;  // dimensions agree and every characteristic polynomial matches
  long super_block_dim = 0;
  long lie_block_dim = 0;
  long super_sing_dim = -1;
  long lie_sing_dim = -1;
  std::vector<Rat> z_used;
  int attempts = 1;
  std::vector<HamiltonianComparison> hams;  // one per marked point
  std::vector<std::string> notes;
};

// Characteristic polynomials of every Hamiltonian on the singular subspaces
// of the matched blocks, super side against truncated side, both with the
// centrally extended Casimir. A dimension mismatch is reported, not thrown;
// window escapes propagate as MarginError.
ComparisonReport compare_spectra(const CorrespondenceCase& c);

// l distinct integer points below one million, deterministic in (seed,
// attempt) across platforms (raw engine output only).
std::vector<Rat> seeded_points(int l, unsigned long long seed, int attempt);

// Columns span the joint kernel of the diagonal actions of the listed
// elements on the mu block.
Mat joint_kernel(const TensorSystem& sys, const Weight& mu, const std::vector<int>& elem_ids);

// Checks, on a full-window system of type a, that every Hamiltonian on the
// mu block equals the sum restricted to the rank-(m, n) subalgebra whose
// window contains the support of mu; works for whichever of the two opposite
// corners match, and throws when neither does.
bool window_consistency(const TensorSystem& sys, int m, const Weight& mu);

// Columns in one total-weight block, moved around by element words.
struct BlockVec {
  Weight weight;
  Mat col;
};

// Applies the word left to right as operators, so the rightmost element acts
// first. Letters are element ids of the system's table.
BlockVec apply_word(const TensorSystem& sys, const std::vector<int>& word, const BlockVec& v);

// The full-window demonstration on six copies of the rank-four defining
// module: the singular space of a split-degree block is carried across the
// window boundary by an explicit odd lowering word, and the transported
// Hamiltonian data is verified to match in exact arithmetic.
struct BridgeReport {
  bool ok = false;
  long block_dim = 0;      // source block
  long image_dim = 0;      // image block under the word
  long sing_dim = 0;       // singular dimension on both corners
  Poly charpoly_src;       // first Hamiltonian on the source singular space
  Poly charpoly_tgt;       // the same operator on the image side
  std::vector<Rat> eigenvalues;  // rational eigenvalues of the first Hamiltonian
  std::vector<std::string> failures;
};

BridgeReport bridge_example();

}  // namespace gaudin

#endif
