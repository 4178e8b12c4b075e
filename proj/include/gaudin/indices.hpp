#ifndef GAUDIN_INDICES_HPP
#define GAUDIN_INDICES_HPP

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace gaudin {

// A half-integer index r is stored as the doubled integer h = 2r, so r = h/2
// exactly. h even <=> integral index, h odd <=> half-odd index.
using Half = int;

inline bool half_is_int(Half h) { return (std::abs(h) % 2) == 0; }
inline bool half_is_odd_index(Half h) { return !half_is_int(h); }  // half-odd r
inline int half_parity(Half h) { return half_is_int(h) ? 0 : 1; }  // |v_r|

// Renders h/2 as "k" or "k/2".
inline std::string half_str(Half h) {
  if (half_is_int(h)) return std::to_string(h / 2);
  return std::to_string(h) + "/2";
}

// Index family: the three total orders used on index sets.
//   unbar:  ... < -2 < -1 < -3/2 < -1/2 < 0 < 1/2 < 3/2 < ... < 1 < 2 < ...
//   bar:    ... < -3/2 < -1/2 < -2 < -1 < 0 < 1 < 2 < ... < 1/2 < 3/2 < ...
//   tilde:  natural order on half-integers
enum class Fam { unbar, bar, tilde };

inline std::string fam_str(Fam f) {
  switch (f) {
    case Fam::unbar: return "unbar";
    case Fam::bar: return "bar";
    default: return "tilde";
  }
}

// Group key for the family order; indices compare by (group, value).
inline int order_group(Fam f, Half h) {
  if (f == Fam::tilde) return 0;
  bool i = half_is_int(h);
  if (f == Fam::unbar) {
    if (h < 0) return i ? 0 : 1;
    if (h == 0) return 2;
    return i ? 4 : 3;
  }
  // bar
  if (h < 0) return i ? 1 : 0;
  if (h == 0) return 2;
  return i ? 3 : 4;
}

inline bool order_less(Fam f, Half a, Half b) {
  int ga = order_group(f, a), gb = order_group(f, b);
  if (ga != gb) return ga < gb;
  return a < b;
}

// Positive index set for the family, sorted ascending in the family order.
//   unbar: {1/2,...,m-1/2} u {1,...,n}
//   bar:   {1,...,m} u {1/2,...,n-1/2}
//   tilde: {1/2,1,...,n} (m ignored)
std::vector<Half> positive_indices(Fam f, int m, int n);

// Full window: P u -P for c/d types (negatives included), sorted ascending in
// the family order. For type-a algebras the window is the positive set only.
std::vector<Half> signed_window(Fam f, int m, int n);

}  // namespace gaudin

#endif
