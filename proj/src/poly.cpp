#include "gaudin/poly.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace gaudin {

Poly poly_trim(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

int poly_deg(const Poly& p) {
  for (std::size_t i = p.size(); i > 0; --i)
    if (p[i - 1] != 0) return static_cast<int>(i - 1);
  return -1;
}

Poly poly_add(const Poly& p, const Poly& q) {
  Poly r(std::max(p.size(), q.size()), Rat(0));
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[i];
  for (std::size_t i = 0; i < q.size(); ++i) r[i] += q[i];
  return poly_trim(r);
}

Poly poly_sub(const Poly& p, const Poly& q) {
  Poly r(std::max(p.size(), q.size()), Rat(0));
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[i];
  for (std::size_t i = 0; i < q.size(); ++i) r[i] -= q[i];
  return poly_trim(r);
}

Poly poly_mul(const Poly& p, const Poly& q) {
  if (poly_deg(p) < 0 || poly_deg(q) < 0) return {};
  Poly r(p.size() + q.size() - 1, Rat(0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  }
  return poly_trim(r);
}

Poly poly_scale(const Poly& p, const Rat& c) {
  if (c == 0) return {};
  Poly r = p;
  for (Rat& v : r) v *= c;
  return poly_trim(r);
}

Poly poly_monic(const Poly& p) {
  int d = poly_deg(p);
  if (d < 0) return {};
  Rat inv = 1 / p[d];
  return poly_scale(p, inv);
}

Rat poly_eval(const Poly& p, const Rat& x) {
  Rat acc = 0;
  for (std::size_t i = p.size(); i > 0; --i) {
    acc *= x;
    acc += p[i - 1];
  }
  return acc;
}

Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return {};
  Poly r(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * static_cast<long>(i);
  return poly_trim(r);
}

std::pair<Poly, Poly> poly_divmod(const Poly& p, const Poly& q) {
  Poly qq = poly_trim(q);
  int dq = poly_deg(qq);
  if (dq < 0) throw std::invalid_argument("poly_divmod: division by zero polynomial");
  Poly rem = poly_trim(p);
  int dr = poly_deg(rem);
  if (dr < dq) return {{}, rem};
  Poly quo(dr - dq + 1, Rat(0));
  Rat lead_inv = 1 / qq[dq];
  while ((dr = poly_deg(rem)) >= dq) {
    Rat f = rem[dr] * lead_inv;
    quo[dr - dq] = f;
    for (int i = 0; i <= dq; ++i) rem[dr - dq + i] -= f * qq[i];
  }
  return {poly_trim(quo), poly_trim(rem)};
}

Poly poly_gcd(Poly p, Poly q) {
  p = poly_trim(p);
  q = poly_trim(q);
  while (poly_deg(q) >= 0) {
    Poly r = poly_divmod(p, q).second;
    p = q;
    q = poly_monic(r);
  }
  return poly_monic(p);
}

std::vector<std::pair<Poly, int>> squarefree_factor(const Poly& p) {
  Poly P = poly_monic(p);
  if (poly_deg(p) < 0) throw std::invalid_argument("squarefree_factor: zero polynomial");
  std::vector<std::pair<Poly, int>> out;
  if (poly_deg(P) == 0) return out;
  Poly dP = poly_derivative(P);
  Poly g = poly_gcd(P, dP);
  Poly w = poly_divmod(P, g).first;
  Poly y = poly_divmod(dP, g).first;
  Poly z = poly_sub(y, poly_derivative(w));
  int i = 1;
  while (poly_deg(w) > 0) {
    Poly gi = poly_gcd(w, z);
    if (poly_deg(gi) > 0) out.push_back({gi, i});
    w = poly_divmod(w, gi).first;
    y = poly_divmod(z, gi).first;
    z = poly_sub(y, poly_derivative(w));
    ++i;
  }
  return out;
}

bool is_squarefree(const Poly& p) {
  if (poly_deg(p) <= 0) return true;
  return poly_deg(poly_gcd(p, poly_derivative(p))) == 0;
}

namespace {

void factor_into(mpz_class n, std::vector<std::pair<mpz_class, int>>& out) {
  if (n < 0) n = -n;
  if (n <= 1) return;
  auto take = [&](const mpz_class& f) {
    int e = 0;
    while (n % f == 0) {
      n /= f;
      ++e;
    }
    if (e) out.push_back({f, e});
  };
  take(2);
  take(3);
  mpz_class d = 5;
  const long bound = 1000000;
  while (d <= bound && d * d <= n) {
    take(d);
    take(d + 2);
    d += 6;
  }
  // Any survivor is treated as prime; see the header note on coefficient size.
  if (n > 1) out.push_back({n, 1});
}

void enumerate_divisors(const std::vector<std::pair<mpz_class, int>>& fac, std::vector<mpz_class>& out) {
  out = {mpz_class(1)};
  for (const auto& [prime, e] : fac) {
    std::size_t base = out.size();
    if (base * (e + 1) > 200000)
      throw std::runtime_error("rational_roots: divisor enumeration too large");
    mpz_class pw = 1;
    for (int k = 1; k <= e; ++k) {
      pw *= prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pw);
    }
  }
}

}  // namespace

std::vector<Rat> rational_roots(const Poly& p) {
  Poly q = poly_trim(p);
  if (q.empty()) throw std::invalid_argument("rational_roots: zero polynomial");
  std::vector<Rat> roots;
  std::size_t shift = 0;
  while (shift < q.size() && q[shift] == 0) ++shift;
  if (shift > 0) {
    roots.push_back(0);
    q.erase(q.begin(), q.begin() + shift);
  }
  if (poly_deg(q) == 0) {
    std::sort(roots.begin(), roots.end());
    return roots;
  }
  mpz_class den_lcm = 1;
  for (const Rat& c : q) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<mpz_class> ic(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    Rat scaled = q[i] * den_lcm;
    ic[i] = scaled.get_num();
  }
  std::vector<std::pair<mpz_class, int>> fa, fb;
  factor_into(ic.front(), fa);
  factor_into(ic.back(), fb);
  std::vector<mpz_class> da, db;
  enumerate_divisors(fa, da);
  enumerate_divisors(fb, db);
  for (const mpz_class& nu : da)
    for (const mpz_class& de : db) {
      Rat cand(nu, de);
      cand.canonicalize();
      for (int sign = 0; sign < 2; ++sign) {
        Rat r = sign ? Rat(-cand) : cand;
        if (poly_eval(q, r) == 0 && std::find(roots.begin(), roots.end(), r) == roots.end())
          roots.push_back(r);
      }
    }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::string poly_str(const Poly& p) {
  int d = poly_deg(p);
  if (d < 0) return "0";
  std::string s;
  for (int i = d; i >= 0; --i) {
    if (p[i] == 0) continue;
    if (!s.empty()) s += " + ";
    s += rat_str(p[i]);
    if (i == 1)
      s += "*t";
    else if (i > 1)
      s += "*t^" + std::to_string(i);
  }
  return s;
}

Poly charpoly(const Mat& A) {
  if (A.rows != A.cols) throw std::invalid_argument("charpoly: matrix not square");
  std::size_t n = A.rows;
  Poly c(n + 1, Rat(0));
  c[n] = 1;
  Mat M = Mat::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    Mat AM = A * M;
    Rat t = AM.trace();
    c[n - k] = -t / static_cast<long>(k);
    M = AM;
    for (std::size_t i = 0; i < n; ++i) M.at(i, i) += c[n - k];
  }
  return c;
}

Poly minpoly(const Mat& A) {
  if (A.rows != A.cols) throw std::invalid_argument("minpoly: matrix not square");
  std::size_t n = A.rows;
  if (n == 0) return {Rat(1)};
  Poly L = {Rat(1)};
  for (std::size_t j = 0; j < n; ++j) {
    // Krylov chain of e_j.
    Mat V(n, 0);
    Mat v(n, 1);
    v.at(j, 0) = 1;
    while (true) {
      Mat ext(n, V.cols + 1);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t cidx = 0; cidx < V.cols; ++cidx) ext.at(i, cidx) = V.at(i, cidx);
        ext.at(i, V.cols) = v.at(i, 0);
      }
      if (rank(ext) == V.cols) break;  // v dependent on previous powers
      V = ext;
      v = A * v;
    }
    Mat coeffs = solve(V, v);  // V c = A^k e_j, k = V.cols
    Poly qj(V.cols + 1, Rat(0));
    qj[V.cols] = 1;
    for (std::size_t i = 0; i < V.cols; ++i) qj[i] = -coeffs.at(i, 0);
    Poly g = poly_gcd(L, qj);
    L = poly_divmod(poly_mul(L, qj), g).first;
    if (poly_deg(L) == static_cast<int>(n)) break;
  }
  return poly_monic(L);
}

Mat poly_apply(const Poly& p, const Mat& A) {
  if (A.rows != A.cols) throw std::invalid_argument("poly_apply: matrix not square");
  Mat R(A.rows, A.cols);
  for (std::size_t i = p.size(); i > 0; --i) {
    R = R * A;
    for (std::size_t k = 0; k < A.rows; ++k) R.at(k, k) += p[i - 1];
  }
  return R;
}

namespace {

mpf_class to_mpf(const Rat& q, mp_bitcnt_t bits) {
  mpf_class num(0, bits), den(0, bits), out(0, bits);
  num = q.get_num();
  den = q.get_den();
  out = num / den;
  return out;
}

struct CtxCF {
  mp_bitcnt_t bits;

  CF make(double re = 0, double im = 0) const { return {mpf_class(re, bits), mpf_class(im, bits)}; }

  CF add(const CF& a, const CF& b) const {
    CF r = make();
    r.re = a.re + b.re;
    r.im = a.im + b.im;
    return r;
  }
  CF sub(const CF& a, const CF& b) const {
    CF r = make();
    r.re = a.re - b.re;
    r.im = a.im - b.im;
    return r;
  }
  CF mul(const CF& a, const CF& b) const {
    CF r = make();
    r.re = a.re * b.re - a.im * b.im;
    r.im = a.re * b.im + a.im * b.re;
    return r;
  }
  CF div(const CF& a, const CF& b) const {
    mpf_class n(0, bits);
    n = b.re * b.re + b.im * b.im;
    CF r = make();
    r.re = (a.re * b.re + a.im * b.im) / n;
    r.im = (a.im * b.re - a.re * b.im) / n;
    return r;
  }
  mpf_class norm2(const CF& a) const {
    mpf_class r(0, bits);
    r = a.re * a.re + a.im * a.im;
    return r;
  }
};

}  // namespace

std::vector<CF> roots_numeric(const Poly& p, int digits) {
  if (digits < 1) throw std::invalid_argument("roots_numeric: digits must be positive");
  Poly q = poly_monic(p);
  if (q.empty()) throw std::invalid_argument("roots_numeric: zero polynomial");
  // Distinct roots only: reduce to the squarefree part.
  Poly g = poly_gcd(q, poly_derivative(q));
  if (poly_deg(g) > 0) q = poly_divmod(q, g).first;
  int n = poly_deg(q);
  std::vector<CF> x;
  if (n == 0) return x;

  CtxCF cx{static_cast<mp_bitcnt_t>(digits * 4 + 64)};
  std::vector<CF> coef;
  coef.reserve(q.size());
  for (const Rat& c : q) coef.push_back({to_mpf(c, cx.bits), mpf_class(0, cx.bits)});

  auto eval = [&](const CF& z) {
    CF acc = cx.make();
    for (std::size_t i = coef.size(); i > 0; --i) acc = cx.add(cx.mul(acc, z), coef[i - 1]);
    return acc;
  };

  CF seed = cx.make(0.4, 0.9);
  CF cur = cx.make(1.0, 0.0);
  for (int k = 0; k < n; ++k) {
    x.push_back(cur);
    cur = cx.mul(cur, seed);
  }

  mpf_class tol(0, cx.bits);
  tol = 1;
  for (int k = 0; k < digits + 2; ++k) tol /= 10;
  mpf_class tol2(0, cx.bits);
  tol2 = tol * tol;

  for (int it = 0; it < 1000; ++it) {
    mpf_class worst(0, cx.bits);
    worst = 0;
    for (int k = 0; k < n; ++k) {
      CF denom = cx.make(1.0, 0.0);
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        denom = cx.mul(denom, cx.sub(x[k], x[j]));
      }
      if (denom.re == 0 && denom.im == 0) {
        // Coincident iterates: deterministic nudge.
        x[k].re += mpf_class(1.0, cx.bits) / (k + 2);
        continue;
      }
      CF delta = cx.div(eval(x[k]), denom);
      x[k] = cx.sub(x[k], delta);
      mpf_class d2 = cx.norm2(delta);
      if (d2 > worst) worst = d2;
    }
    if (worst <= tol2) break;
  }

  std::sort(x.begin(), x.end(), [](const CF& a, const CF& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  });
  return x;
}

std::string cf_str(const CF& z, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << z.re;
  if (z.im != 0) {
    mpf_class ai(0, z.im.get_prec());
    ai = abs(z.im);
    os << (z.im > 0 ? "+" : "-") << std::setprecision(digits) << ai << "i";
  }
  return os.str();
}

}  // namespace gaudin
