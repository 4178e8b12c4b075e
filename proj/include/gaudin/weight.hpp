#ifndef GAUDIN_WEIGHT_HPP
#define GAUDIN_WEIGHT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gaudin/indices.hpp"
#include "gaudin/partition.hpp"
#include "gaudin/rational.hpp"

namespace gaudin {

// Finitely supported map eps_r -> rational plus a level (coefficient of L0,
// the value on the central element K). Keys are doubled indices; zero
// coefficients are never stored.
struct Weight {
  std::map<Half, Rat> eps;
  Rat level = 0;

  Weight() = default;

  const Rat coeff(Half h) const;
  void set(Half h, const Rat& c);
  void add(Half h, const Rat& c);
  bool is_zero() const { return eps.empty() && level == 0; }
  bool eps_zero() const { return eps.empty(); }

  Weight& operator+=(const Weight& o);
  Weight& operator-=(const Weight& o);
  Weight operator+(const Weight& o) const;
  Weight operator-(const Weight& o) const;
  Weight operator-() const;
  Weight operator*(const Rat& c) const;
  bool operator==(const Weight& o) const { return eps == o.eps && level == o.level; }
  bool operator!=(const Weight& o) const { return !(*this == o); }
  bool operator<(const Weight& o) const;  // deterministic total order

  // Canonical text form, eps terms sorted by doubled index ascending, level
  // term always last: "3*e(1/2) + 3*e(1) + 0*L0".
  std::string str() const;
};

inline Weight eps_weight(Half h, const Rat& c = 1) {
  Weight w;
  w.set(h, c);
  return w;
}

// Modified Frobenius coordinates of a partition as a weight:
// theta_{i-1/2} = max(p'_i - i + 1, 0), theta_i = max(p_i - i, 0), level 0.
Weight frobenius_theta(const Partition& p);

// The three weight maps. n = N_INF means no truncation. Out-of-range indices
// are dropped only when the hook precondition forces their coefficient to be
// zero; a nonzero drop raises std::invalid_argument.
Weight weight_tilde(const Partition& p, const Rat& d);
Weight weight_m(const Partition& p, const Rat& d, int m, int n);
Weight weight_bar_m(const Partition& p, const Rat& d, int m, int n);

enum class WeightSide { tilde, m_side, bar_side };

// Inverts weight_tilde / weight_m / weight_bar_m. Throws std::invalid_argument
// with the first inconsistent coefficient when w is not in the image.
std::pair<Partition, Rat> invert_weight_map(const Weight& w, WeightSide side, int m);

// Lattice identifier: one of the three nonnegative-integer spans with free
// level. kind selects the index set, (m, n) its parameters.
struct LatticeId {
  WeightSide kind;
  int m = 0;
  int n = N_INF;
};

// True iff every eps coefficient of w is a nonnegative integer supported
// inside the lattice's index set. The level is unconstrained.
bool in_lattice(const Weight& w, const LatticeId& L);

// Parity of the sum of half-odd-index coefficients. Throws when some half-odd
// coefficient is not an integer.
int weight_parity(const Weight& w);

// Membership record for one of the unitarizable weight sets.
struct UnitaryMembership {
  std::string set_name;  // e.g. "Qbar(c,I)"
  Partition lambda;
  Rat d;
  Weight module_weight;  // shifted eps part plus d*L0: the weight to build
  bool type_II = false;  // true -> contravariant form uses omega-prime
};

// Classifies a weight against the unitarizable weight sets for type x over
// (m|n). The level-carrying sets read d off the weight's own L0 coefficient;
// type a reports membership only for d=0. The finite-rank type I/II sets are
// only defined for finite n and only apply to eps-only weights (level 0).
std::vector<UnitaryMembership> classify_unitary_weight(const Weight& w, char x, int m, int n);

// Serialization helpers shared by the CLI and golden files.
std::string weight_json(const Weight& w);
Weight weight_from_json_text(const std::string& s);  // parses the output of weight_json
Weight weight_parse(const std::string& s);           // parses the str() text form

}  // namespace gaudin

#endif
