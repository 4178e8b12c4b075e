#ifndef GAUDIN_ALGEBRA_HPP
#define GAUDIN_ALGEBRA_HPP

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gaudin/indices.hpp"
#include "gaudin/rational.hpp"
#include "gaudin/weight.hpp"

namespace gaudin {

// Which finite-rank algebra to build. The tilde family is the one-sided
// half-integer window and only exists for type a; unbar/bar windows exist for
// types a, c, d. For c and d the index window is signed (P and -P); for type a
// it is the positive set only.
struct AlgebraSpec {
  char type = 'a';  // 'a', 'c', 'd'
  Fam fam = Fam::unbar;
  int m = 0;
  int n = 1;
  bool extended = false;  // include the central element K and the 2-cocycle

  std::string str() const;
};

// Basis tag: either the central element K or a pair (a, b) naming E_{a,b}
// (types c, d store one canonical representative per +- pair).
struct Tag {
  bool is_K = false;
  Half a = 0, b = 0;

  bool operator==(const Tag& o) const { return is_K == o.is_K && a == o.a && b == o.b; }
  bool operator<(const Tag& o) const {
    if (is_K != o.is_K) return o.is_K;
    if (a != o.a) return a < o.a;
    return b < o.b;
  }
  std::string str() const;
};

struct BasisElement {
  int id = -1;
  Tag tag;
  int parity = 0;  // 0 even, 1 odd
  bool cartan = false;
  Weight root;  // zero for Cartan elements and K
  // Ambient matrix: list of (row, col, coeff) over the index window.
  std::vector<std::tuple<Half, Half, Rat>> mat;
};

using LinComb = std::map<int, Rat>;  // basis id -> coefficient, no zero entries

struct Root {
  Weight weight;
  int raising_id = -1;
  LinComb dual_lowering;  // E^beta, normalized so <E_beta, E^beta> = 1
  int parity = 0;
  long delta = 0;  // grading cost of the root (see hfun)
};

// Immutable structure constants of one finite-rank algebra. All tables are
// computed at construction; afterwards every query is const and thread-safe.
class StructureTable {
 public:
  AlgebraSpec spec;
  std::vector<Half> pos;     // positive index set, ascending in the family order
  std::vector<Half> window;  // full index window (signed for c/d)
  std::vector<BasisElement> basis;
  int k_id = -1;                   // id of K, -1 when not extended
  std::vector<int> cartan_ids;     // the E_r's, in pos order (K excluded)
  std::vector<Root> positive_roots;
  std::vector<int> simple_roots;  // indices into positive_roots

  static std::shared_ptr<const StructureTable> build(const AlgebraSpec& s, bool allow_large = false);

  int dim() const { return static_cast<int>(basis.size()); }
  const BasisElement& elem(int id) const { return basis.at(id); }
  int tag_id(const Tag& t) const;  // throws for unknown tags
  int tag_id(Half a, Half b) const { return tag_id(Tag{false, a, b}); }

  bool is_k(int id) const { return id == k_id; }
  bool is_cartan(int id) const { return basis[id].cartan; }
  bool is_raising(int id) const { return id >= first_pos_ && id < first_neg_; }
  bool is_lowering(int id) const { return id >= first_neg_; }
  // Raisings and their lowerings pair up by position; Cartan elements and K
  // are their own partners.
  int neg_id(int id) const;

  // Grading: hfun is antisymmetric and strictly decreasing along the window
  // order; a positive root (a, b) costs hfun(a) - hfun(b) >= 2.
  long hfun(Half k) const;
  Rat delta_weight(const Weight& mu) const;  // sum over eps coefficients

  LinComb bracket(int i, int j) const { return brk_[idx(i, j)]; }
  LinComb bracket_lc(const LinComb& x, const LinComb& y) const;
  Rat form(int i, int j) const { return form_[idx(i, j)]; }
  Rat form_lc(const LinComb& x, const LinComb& y) const;

  // Value of a weight on a Cartan-sublist element: eps coefficient for E_r,
  // the level for K.
  Rat cartan_value(const Weight& mu, int id) const;

  // Decompose an ambient window matrix, given as (row, col, coeff) entries,
  // over the basis. Throws std::logic_error when it is not in the span.
  LinComb decompose_entries(const std::vector<std::tuple<Half, Half, Rat>>& entries) const;

  // *-structures and the centering map, as basis maps (ambient transform
  // followed by exact decomposition). omega and omega_prime fix K; iota is
  // only defined on extended tables.
  LinComb omega(int id) const;
  LinComb omega_prime(int id) const;
  LinComb iota(int id) const;
  LinComb omega_lc(const LinComb& x) const;
  LinComb omega_prime_lc(const LinComb& x) const;

  // 2-cocycle of the central extension (zero on non-extended tables).
  Rat tau(int i, int j) const;

  // Supertrace of J x where J is the window-sign projector; iota(x) = x + str_J(x) K.
  Rat str_J(int id) const;

  // Sum of (-1)^{2r} over the positive index set (the supertrace of the
  // identity on the positive window).
  long signature_sum() const;

  // Exhaustive structure checks; each throws std::logic_error with a
  // description on the first failure.
  void check_antisymmetry() const;
  void check_jacobi() const;
  void check_form() const;
  void check_roots() const;
  void check_star_structures() const;
  void check_cocycle() const;
  void check_parities() const;

  std::string dump() const;

 private:
  StructureTable() = default;

  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * basis.size() + j; }

  int first_pos_ = 0, first_neg_ = 0;
  std::map<std::pair<Half, Half>, int> tag_to_id_;
  std::map<Half, long> h_;
  std::vector<LinComb> brk_;
  std::vector<Rat> form_;
  std::vector<int> neg_of_;

  friend struct TableBuilder;
};

// The index-shift isomorphism between extended c and d tables on opposite
// families with the same (m, n): E_{a,b} goes to the like-named element with
// every index moved half a step toward the other integrality type, times a
// sign that is -1 exactly when an odd number of the two indices are negative
// half-odds (the twist that aligns the two pairing conventions), and K goes
// to -K. Returns the image of src element id inside dst.
LinComb phi_hat(const StructureTable& src, int id, const StructureTable& dst);

}  // namespace gaudin

#endif
