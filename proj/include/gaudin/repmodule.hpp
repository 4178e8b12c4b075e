#ifndef GAUDIN_REPMODULE_HPP
#define GAUDIN_REPMODULE_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gaudin/algebra.hpp"
#include "gaudin/matrix.hpp"
#include "gaudin/rational.hpp"
#include "gaudin/weight.hpp"

namespace gaudin {

// Thrown when a computation needs a block outside a windowed module and the
// image there is not provably zero. Callers must enlarge the window depth.
struct MarginError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Which anti-involution defines the contravariant form of a module.
enum class StarKind { omega, omega_prime };

struct ModuleBlock {
  Weight mu;
  int dim = 0;     // quotient dimension (radical removed)
  int parity = 0;  // common parity of all basis vectors in the block
  std::vector<std::string> labels;
};

struct GramBlock {
  Weight weight;
  Mat matrix;  // Gram of the quotient basis, symmetric and nondegenerate
  int radical_dim = 0;
};

struct UnitarityReport {
  bool unitarizable = false;  // every recorded block positive definite
  std::vector<std::pair<Weight, std::string>> blocks;  // verdict per block
};

// A highest-weight module presented as weight-graded exact data. Either the
// defining module on the indexed basis vectors, or the irreducible quotient
// of a lowering-monomial span by the radical of its contravariant form. The
// handle is cheap to copy; the underlying data is immutable except for the
// lazily filled action cache (single-threaded use per module).
class RepModule {
 public:
  const std::shared_ptr<const StructureTable>& table() const;
  const Weight& highest_weight() const;  // includes the level
  Rat level_d() const;
  StarKind star() const;
  bool complete() const;  // no lowering leaves the recorded blocks
  int depth() const;      // construction window, meaningful when !complete

  const std::vector<ModuleBlock>& blocks() const;
  int block_index(const Weight& mu) const;  // -1 when absent
  long total_dim() const;

  // Matrix of the basis element from the mu block to the mu + root block,
  // shaped (target dim) x (source dim); a missing target gives 0 rows when
  // the image is provably zero. Cartan elements give mu(h) times identity, K
  // gives the level. Throws MarginError when the image would leave the
  // window of an incomplete module with a nonzero component, and
  // std::invalid_argument when mu itself is not recorded.
  Mat action_block(int elem_id, const Weight& mu) const;

  GramBlock gram_block(const Weight& mu) const;

  // Exact definiteness check of every recorded Gram block.
  UnitarityReport check_unitarizable() const;

  // Verifies action(x) action(y) - (-1)^{|x||y|} action(y) action(x) equals
  // the action of [x, y] on every block where all pieces stay recorded.
  // Throws std::logic_error on the first violation.
  void check_bracket_compatibility() const;

  // Lowering-monomial words (basis element id sequences, outermost first)
  // whose classes form the quotient basis of the block. Only available on
  // modules built from a highest weight.
  const std::vector<std::vector<int>>& block_words(const Weight& mu) const;

  // Coordinates of word * highest-weight-vector in the recorded basis of its
  // weight block, together with that weight. The word lists lowering ids of
  // this module's table, outermost first.
  std::pair<Weight, std::vector<Rat>> word_coordinates(const std::vector<int>& word) const;

  // The defining module on the window's indexed basis vectors. K acts by 0.
  static RepModule natural(std::shared_ptr<const StructureTable> t, StarKind star = StarKind::omega);

  // Irreducible highest-weight module, materialized on all weights mu with
  // grading cost delta(xi - mu) <= 2 * depth and cut by the Gram radical.
  static RepModule irreducible(std::shared_ptr<const StructureTable> t, const Weight& xi, int depth,
                               StarKind star = StarKind::omega);

 private:
  RepModule() = default;
  struct Engine;
  std::shared_ptr<Engine> eng_;
};

}  // namespace gaudin

#endif
