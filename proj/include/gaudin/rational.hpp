#ifndef GAUDIN_RATIONAL_HPP
#define GAUDIN_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace gaudin {

using Rat = mpq_class;

// Parse "p" or "p/q" into a canonical rational. The mpq_class string
// constructor does not canonicalize and accepts a zero denominator, so both
// are handled here.
inline Rat rat_parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rat r;
  if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

// Floor division is not needed; this extracts an exact long from an integral
// rational and refuses anything else.
inline long rat_to_long(const Rat& r) {
  if (!is_integer(r)) throw std::invalid_argument("not an integer: " + rat_str(r));
  if (!r.get_num().fits_slong_p()) throw std::overflow_error("integer too large");
  return r.get_num().get_si();
}

}  // namespace gaudin

#endif
