#include "gaudin/weight.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

namespace gaudin {

const Rat Weight::coeff(Half h) const {
  auto it = eps.find(h);
  return it == eps.end() ? Rat(0) : it->second;
}

void Weight::set(Half h, const Rat& c) {
  if (c == 0)
    eps.erase(h);
  else
    eps[h] = c;
}

void Weight::add(Half h, const Rat& c) {
  Rat s = coeff(h) + c;
  set(h, s);
}

Weight& Weight::operator+=(const Weight& o) {
  for (const auto& [h, c] : o.eps) add(h, c);
  level += o.level;
  return *this;
}

Weight& Weight::operator-=(const Weight& o) {
  for (const auto& [h, c] : o.eps) {
    Rat nc = -c;
    add(h, nc);
  }
  level -= o.level;
  return *this;
}

Weight Weight::operator+(const Weight& o) const {
  Weight w = *this;
  w += o;
  return w;
}

Weight Weight::operator-(const Weight& o) const {
  Weight w = *this;
  w -= o;
  return w;
}

Weight Weight::operator-() const {
  Weight w;
  for (const auto& [h, c] : eps) {
    Rat nc = -c;
    w.set(h, nc);
  }
  w.level = -level;
  return w;
}

Weight Weight::operator*(const Rat& c) const {
  Weight w;
  if (c == 0) return w;
  for (const auto& [h, v] : eps) {
    Rat nc = v * c;
    w.set(h, nc);
  }
  w.level = level * c;
  return w;
}

bool Weight::operator<(const Weight& o) const {
  if (eps != o.eps) return eps < o.eps;
  return level < o.level;
}

std::string Weight::str() const {
  std::string s;
  for (const auto& [h, c] : eps) {
    s += rat_str(c) + "*e(" + half_str(h) + ") + ";
  }
  s += rat_str(level) + "*L0";
  return s;
}

Weight frobenius_theta(const Partition& p) {
  Weight w;
  Partition pc = conjugate(p);
  size_t rows = std::max(p.length(), pc.length());
  for (size_t i = 1; i <= rows; ++i) {
    long th_half = pc.part(i - 1) - static_cast<long>(i) + 1;
    if (th_half > 0) w.set(2 * static_cast<Half>(i) - 1, th_half);
    long th_int = p.part(i - 1) - static_cast<long>(i);
    if (th_int > 0) w.set(2 * static_cast<Half>(i), th_int);
  }
  return w;
}

Weight weight_tilde(const Partition& p, const Rat& d) {
  Weight w = frobenius_theta(p);
  w.level = d;
  return w;
}

static void check_window_args(const char* who, int m, int n) {
  if (m < 0) throw std::invalid_argument(std::string(who) + ": m must be nonnegative");
  if (n != N_INF && n < 0) throw std::invalid_argument(std::string(who) + ": n must be nonnegative or N_INF");
}

Weight weight_m(const Partition& p, const Rat& d, int m, int n) {
  check_window_args("weight_m", m, n);
  Weight w;
  w.level = d;
  Partition pc = conjugate(p);
  for (int i = 1; i <= m; ++i) {
    long c = pc.part(i - 1);
    if (c > 0) w.set(2 * i - 1, c);
  }
  for (size_t j = 1; j <= p.length(); ++j) {
    long excess = p.part(j - 1) - m;
    if (excess <= 0) continue;
    if (n != N_INF && static_cast<long>(j) > n)
      throw std::invalid_argument("weight_m: row " + std::to_string(j) +
                                  " of the partition exceeds the (m|n) window: dropping a nonzero coefficient");
    w.set(2 * static_cast<Half>(j), excess);
  }
  return w;
}

Weight weight_bar_m(const Partition& p, const Rat& d, int m, int n) {
  check_window_args("weight_bar_m", m, n);
  Weight w;
  w.level = d;
  for (int i = 1; i <= m; ++i) {
    long c = p.part(i - 1);
    if (c > 0) w.set(2 * i, c);
  }
  Partition pc = conjugate(p);
  for (size_t j = 1; j <= pc.length(); ++j) {
    long excess = pc.part(j - 1) - m;
    if (excess <= 0) continue;
    if (n != N_INF && static_cast<long>(j) > n)
      throw std::invalid_argument("weight_bar_m: column " + std::to_string(j) +
                                  " of the partition exceeds the (m|n) window: dropping a nonzero coefficient");
    w.set(2 * static_cast<Half>(j) - 1, excess);
  }
  return w;
}

namespace {

long coeff_nonneg_long(const Weight& w, Half h) {
  Rat c = w.coeff(h);
  if (!is_integer(c) || c < 0)
    throw std::invalid_argument("invert_weight_map: coefficient at e(" + half_str(h) +
                                ") must be a nonnegative integer, got " + rat_str(c));
  return rat_to_long(c);
}

[[noreturn]] void report_mismatch(const char* side, const Weight& got, const Weight& expect) {
  // First differing eps coefficient, by doubled index ascending.
  std::vector<Half> keys;
  for (const auto& [h, c] : got.eps) keys.push_back(h);
  for (const auto& [h, c] : expect.eps) keys.push_back(h);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  for (Half h : keys) {
    Rat a = got.coeff(h), b = expect.coeff(h);
    if (a != b)
      throw std::invalid_argument(std::string("invert_weight_map: weight is not in the image of the ") + side +
                                  " map; inconsistent coefficient at e(" + half_str(h) + "): " + rat_str(a) +
                                  " vs reconstructed " + rat_str(b));
  }
  throw std::invalid_argument(std::string("invert_weight_map: weight is not in the image of the ") + side + " map");
}

Partition rows_from_excess_and_columns(const Weight& w, int m, bool bar_side_cols) {
  // Shared reconstruction for the m-side and bar-side maps. Known outer
  // entries are m + excess; the tail is recovered by counting the known
  // transposed entries.
  //   m-side: excesses at e(j) give rows, columns lam'_1..lam'_m at e(i-1/2).
  //   bar-side: excesses at e(j-1/2) give columns of lam (rows of lam'),
  //             rows lam_1..lam_m at e(i).
  std::vector<long> known(m, 0);
  for (int i = 1; i <= m; ++i)
    known[i - 1] = coeff_nonneg_long(w, bar_side_cols ? 2 * i : 2 * i - 1);
  long outer_count = 0;
  for (const auto& [h, c] : w.eps) {
    bool excess_key = bar_side_cols ? !half_is_int(h) : half_is_int(h);
    if (excess_key && h > 0) outer_count = std::max(outer_count, static_cast<long>(bar_side_cols ? (h + 1) / 2 : h / 2));
  }
  std::vector<long> parts;
  for (long j = 1; j <= outer_count; ++j) {
    long e = coeff_nonneg_long(w, bar_side_cols ? 2 * static_cast<Half>(j) - 1 : 2 * static_cast<Half>(j));
    parts.push_back(m + e);
  }
  for (long j = outer_count + 1;; ++j) {
    long cnt = 0;
    for (long v : known)
      if (v >= j) ++cnt;
    if (cnt == 0) break;
    parts.push_back(cnt);
  }
  return Partition(parts);
}

}  // namespace

std::pair<Partition, Rat> invert_weight_map(const Weight& w, WeightSide side, int m) {
  if (side != WeightSide::tilde && m < 0)
    throw std::invalid_argument("invert_weight_map: m must be nonnegative");

  Partition p;
  const char* side_name = "tilde";
  try {
    switch (side) {
      case WeightSide::tilde: {
        // theta_{i-1/2} >= 1 exactly on the diagonal prefix.
        long t = 0;
        while (w.coeff(2 * static_cast<Half>(t + 1) - 1) > 0) ++t;
        std::vector<long> rows, cols;
        for (long i = 1; i <= t; ++i) {
          rows.push_back(coeff_nonneg_long(w, 2 * static_cast<Half>(i)) + i);
          cols.push_back(coeff_nonneg_long(w, 2 * static_cast<Half>(i) - 1) - 1 + i);
        }
        std::vector<long> parts = rows;
        for (long j = t + 1;; ++j) {
          long cnt = 0;
          for (long v : cols)
            if (v >= j) ++cnt;
          if (cnt == 0) break;
          parts.push_back(cnt);
        }
        p = Partition(parts);
        break;
      }
      case WeightSide::m_side:
        side_name = "m-side";
        p = rows_from_excess_and_columns(w, m, false);
        break;
      case WeightSide::bar_side: {
        side_name = "bar-side";
        Partition pc = rows_from_excess_and_columns(w, m, true);
        p = conjugate(pc);
        break;
      }
    }
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    if (msg.rfind("invert_weight_map", 0) == 0) throw;
    throw std::invalid_argument(std::string("invert_weight_map: weight is not in the image of the ") + side_name +
                                " map (" + msg + ")");
  }

  Weight back;
  switch (side) {
    case WeightSide::tilde: back = weight_tilde(p, w.level); break;
    case WeightSide::m_side: back = weight_m(p, w.level, m, N_INF); break;
    case WeightSide::bar_side: back = weight_bar_m(p, w.level, m, N_INF); break;
  }
  if (back != w) report_mismatch(side_name, w, back);
  return {p, w.level};
}

bool in_lattice(const Weight& w, const LatticeId& L) {
  for (const auto& [h, c] : w.eps) {
    if (!is_integer(c) || c < 0) return false;
    if (h <= 0) return false;
    bool ints = half_is_int(h);
    long idx = ints ? h / 2 : (h + 1) / 2;  // i for e(i) resp. j for e(j-1/2)
    switch (L.kind) {
      case WeightSide::tilde:
        if (L.n != N_INF && h > 2 * L.n) return false;
        break;
      case WeightSide::m_side:
        if (ints) {
          if (L.n != N_INF && idx > L.n) return false;
        } else {
          if (idx > L.m) return false;
        }
        break;
      case WeightSide::bar_side:
        if (ints) {
          if (idx > L.m) return false;
        } else {
          if (L.n != N_INF && idx > L.n) return false;
        }
        break;
    }
  }
  return true;
}

int weight_parity(const Weight& w) {
  long s = 0;
  for (const auto& [h, c] : w.eps) {
    if (half_is_int(h)) continue;
    if (!is_integer(c))
      throw std::invalid_argument("weight_parity: coefficient at e(" + half_str(h) + ") is not an integer");
    s += rat_to_long(c);
  }
  return static_cast<int>(((s % 2) + 2) % 2);
}

namespace {

// Sum of e(i) over 1<=i<=m minus sum of e(j-1/2) over 1<=j<=n.
Weight signature_shift(int m, int n) {
  Weight w;
  for (int i = 1; i <= m; ++i) w.set(2 * i, 1);
  for (int j = 1; j <= n; ++j) w.set(2 * j - 1, -1);
  return w;
}

bool reapply_equal(const Partition& p, const Rat& d, int m, int n, bool bar, const Weight& w) {
  try {
    Weight back = bar ? weight_bar_m(p, d, m, n) : weight_m(p, d, m, n);
    return back == w;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

}  // namespace

std::vector<UnitaryMembership> classify_unitary_weight(const Weight& w, char x, int m, int n) {
  if (x != 'a' && x != 'c' && x != 'd')
    throw std::invalid_argument("classify_unitary_weight: type must be one of a, c, d");
  check_window_args("classify_unitary_weight", m, n);

  std::vector<UnitaryMembership> out;

  // The level-carrying sets: d is the L0 coefficient of the weight itself.
  for (bool bar : {false, true}) {
    Partition p;
    Rat d;
    try {
      std::tie(p, d) = invert_weight_map(w, bar ? WeightSide::bar_side : WeightSide::m_side, m);
    } catch (const std::invalid_argument&) {
      continue;
    }
    if (!reapply_equal(p, d, m, n, bar, w)) continue;
    bool ok = false;
    if (x == 'a') {
      ok = (d == 0);
    } else if (x == 'c') {
      ok = d >= 0 && is_integer(d) && Rat(p.part(0)) <= d;
    } else {
      Rat twod = 2 * d;
      ok = d >= 0 && is_integer(twod) && Rat(p.part(0) + p.part(1)) <= twod;
    }
    if (!ok) continue;
    UnitaryMembership rec;
    rec.set_name = std::string(bar ? "Qbar(" : "Q(") + x + ")";
    rec.lambda = p;
    rec.d = d;
    rec.module_weight = w;
    rec.type_II = false;
    out.push_back(rec);
  }

  // Finite-rank type I / type II sets: eps-only weights, finite n, x in {c,d}.
  if ((x == 'c' || x == 'd') && n != N_INF && n >= 1 && w.level == 0) {
    Weight shift = signature_shift(m, n);
    for (bool type2 : {false, true}) {
      // type I: lam-bar = w + d*shift; type II: lam-bar = w - d*shift.
      // Bounds come from the nonnegativity of lam-bar's coefficients.
      Rat lb = 0, ub;
      if (!type2) {
        ub = w.coeff(1);
        for (int j = 1; j <= n; ++j) ub = std::min(ub, w.coeff(2 * j - 1));
        for (int i = 1; i <= m; ++i) {
          Rat neg = -w.coeff(2 * i);
          lb = std::max(lb, neg);
        }
      } else {
        if (m >= 1) {
          ub = w.coeff(2);
          for (int i = 1; i <= m; ++i) ub = std::min(ub, w.coeff(2 * i));
        } else {
          // With no integral indices the family is unbounded in d: each step
          // past the largest coefficient prepends a full-width row. Report
          // the bounded prefix only.
          Rat mx = 0;
          for (int j = 1; j <= n; ++j) mx = std::max(mx, w.coeff(2 * j - 1));
          ub = mx + 1;
        }
        for (int j = 1; j <= n; ++j) {
          Rat neg = -w.coeff(2 * j - 1);
          lb = std::max(lb, neg);
        }
      }
      if (ub < lb) continue;
      bool half_grid = (x == 'c') ? type2 : !type2;
      Rat step = half_grid ? Rat(1, 2) : Rat(1);
      for (long k = 0;; ++k) {
        Rat d = step * k;
        if (d > ub) break;
        if (d < lb) continue;
        Weight cand = type2 ? w - shift * d : w + shift * d;
        Partition p;
        try {
          auto pr = invert_weight_map(cand, WeightSide::bar_side, m);
          p = pr.first;
        } catch (const std::invalid_argument&) {
          continue;
        }
        if (!reapply_equal(p, 0, m, n, true, cand)) continue;
        Partition pc = conjugate(p);
        bool ok;
        if (x == 'c')
          ok = type2 ? (Rat(pc.part(0) + pc.part(1)) <= 2 * d) : (Rat(p.part(0)) <= d);
        else
          ok = type2 ? (Rat(pc.part(0)) <= d) : (Rat(p.part(0) + p.part(1)) <= 2 * d);
        if (!ok) continue;
        UnitaryMembership rec;
        rec.set_name = std::string("Qbar(") + x + (type2 ? ",II)" : ",I)");
        rec.lambda = p;
        rec.d = d;
        rec.module_weight = w;
        // The second family twists by the automorphism that negates the
        // center, so its modules carry level -d.
        rec.module_weight.level = type2 ? -d : d;
        rec.type_II = type2;
        out.push_back(rec);
      }
    }
  }

  return out;
}

std::string weight_json(const Weight& w) {
  nlohmann::ordered_json j;
  j["eps"] = nlohmann::ordered_json::array();
  for (const auto& [h, c] : w.eps) j["eps"].push_back({h, rat_str(c)});
  j["level"] = rat_str(w.level);
  return j.dump();
}

Weight weight_from_json_text(const std::string& s) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(s);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("weight_from_json_text: ") + e.what());
  }
  if (!j.is_object() || !j.contains("eps") || !j.contains("level"))
    throw std::invalid_argument("weight_from_json_text: expected {\"eps\": [...], \"level\": \"p/q\"}");
  Weight w;
  for (const auto& term : j["eps"]) {
    if (!term.is_array() || term.size() != 2 || !term[0].is_number_integer() || !term[1].is_string())
      throw std::invalid_argument("weight_from_json_text: eps terms must be [2r, \"p/q\"] pairs");
    w.add(term[0].get<Half>(), rat_parse(term[1].get<std::string>()));
  }
  if (!j["level"].is_string())
    throw std::invalid_argument("weight_from_json_text: level must be a rational string");
  w.level = rat_parse(j["level"].get<std::string>());
  return w;
}

Weight weight_parse(const std::string& s) {
  Weight w;
  bool saw_level = false;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t next = s.find('+', pos);
    std::string term = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    pos = next == std::string::npos ? s.size() : next + 1;
    // trim
    size_t b = term.find_first_not_of(" \t");
    size_t e = term.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("weight_parse: empty term in: " + s);
    term = term.substr(b, e - b + 1);
    size_t star = term.find('*');
    if (star == std::string::npos) throw std::invalid_argument("weight_parse: term lacks '*': " + term);
    Rat c = rat_parse(term.substr(0, star));
    std::string sym = term.substr(star + 1);
    if (sym == "L0") {
      if (saw_level) throw std::invalid_argument("weight_parse: repeated L0 term");
      w.level = c;
      saw_level = true;
    } else if (sym.size() > 3 && sym.rfind("e(", 0) == 0 && sym.back() == ')') {
      std::string idx = sym.substr(2, sym.size() - 3);
      Half h;
      size_t slash = idx.find('/');
      if (slash == std::string::npos) {
        h = 2 * static_cast<Half>(std::stol(idx));
      } else {
        if (idx.substr(slash + 1) != "2") throw std::invalid_argument("weight_parse: bad index: " + sym);
        h = static_cast<Half>(std::stol(idx.substr(0, slash)));
      }
      w.add(h, c);
    } else {
      throw std::invalid_argument("weight_parse: unrecognized symbol: " + sym);
    }
  }
  if (!saw_level) throw std::invalid_argument("weight_parse: missing L0 term in: " + s);
  return w;
}

}  // namespace gaudin
