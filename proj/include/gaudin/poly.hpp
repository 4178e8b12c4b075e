#ifndef GAUDIN_POLY_HPP
#define GAUDIN_POLY_HPP

#include <string>
#include <utility>
#include <vector>

#include "gaudin/matrix.hpp"
#include "gaudin/rational.hpp"

namespace gaudin {

// Coefficients ascending by degree; an empty vector is the zero polynomial.
// All returned polynomials are trimmed (no trailing zero coefficients).
using Poly = std::vector<Rat>;

Poly poly_trim(Poly p);
int poly_deg(const Poly& p);  // -1 for the zero polynomial
Poly poly_add(const Poly& p, const Poly& q);
Poly poly_sub(const Poly& p, const Poly& q);
Poly poly_mul(const Poly& p, const Poly& q);
Poly poly_scale(const Poly& p, const Rat& c);
Poly poly_monic(const Poly& p);
Rat poly_eval(const Poly& p, const Rat& x);
Poly poly_derivative(const Poly& p);

// Exact division with remainder; q must be nonzero.
std::pair<Poly, Poly> poly_divmod(const Poly& p, const Poly& q);

// Monic gcd (0 for gcd(0,0)).
Poly poly_gcd(Poly p, Poly q);

// Yun's squarefree factorization: list of (monic squarefree factor, multiplicity)
// with multiplicities ascending; the product of factor^multiplicity is the monic
// normalization of p. p must be nonzero.
std::vector<std::pair<Poly, int>> squarefree_factor(const Poly& p);

bool is_squarefree(const Poly& p);

// Distinct rational roots, sorted. Divisor enumeration uses trial division, so
// this is intended for polynomials with modest integer-scaled coefficients.
std::vector<Rat> rational_roots(const Poly& p);

std::string poly_str(const Poly& p);  // "1*t^2 + -1/3*t + 5"

// Characteristic polynomial of a square matrix (monic, ascending coefficients)
// by the Faddeev-LeVerrier recurrence.
Poly charpoly(const Mat& A);

// Minimal polynomial via per-column Krylov annihilators and lcm.
Poly minpoly(const Mat& A);

// p(A) for square A.
Mat poly_apply(const Poly& p, const Mat& A);

// Fixed-precision complex value for numeric spectra.
struct CF {
  mpf_class re, im;
};

// Distinct complex roots of p: the squarefree part is extracted exactly, then
// Durand-Kerner runs at the requested decimal precision with deterministic
// starting points. Roots are sorted by (re, im).
std::vector<CF> roots_numeric(const Poly& p, int digits);

std::string cf_str(const CF& z, int digits);

}  // namespace gaudin

#endif
