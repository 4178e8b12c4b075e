#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <stdexcept>

#include "gaudin/partition.hpp"
#include "gaudin/weight.hpp"

using namespace gaudin;

namespace {

Partition P(std::vector<long> v) { return Partition(std::move(v)); }

Weight W(std::vector<std::pair<Half, long>> terms, long level = 0) {
  Weight w;
  for (auto& [h, c] : terms) w.add(h, c);
  w.level = level;
  return w;
}

// All weights with coefficients in [0, cmax] supported on the given keys.
std::vector<Weight> weights_on(const std::vector<Half>& keys, long cmax) {
  std::vector<Weight> out{Weight{}};
  for (Half h : keys) {
    std::vector<Weight> next;
    for (const Weight& w : out)
      for (long c = 0; c <= cmax; ++c) {
        Weight v = w;
        v.set(h, c);
        next.push_back(v);
      }
    out = next;
  }
  return out;
}

}  // namespace

TEST_CASE("partition basics") {
  CHECK(P({3, 1, 1}).str() == "(3,1,1)");
  CHECK(P({}).str() == "()");
  CHECK(P({2, 2, 0, 0}) == P({2, 2}));
  CHECK(P({3, 1}).size() == 4);
  CHECK(P({3, 1}).part(0) == 3);
  CHECK(P({3, 1}).part(5) == 0);
  CHECK_THROWS_AS(P({1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(P({2, -1}), std::invalid_argument);
}

TEST_CASE("conjugate") {
  CHECK(conjugate(P({3, 1})) == P({2, 1, 1}));
  CHECK(conjugate(P({2, 2})) == P({2, 2}));
  CHECK(conjugate(P({})) == P({}));
  for (const Partition& p : partitions_up_to(12)) CHECK(conjugate(conjugate(p)) == p);
}

TEST_CASE("hook condition") {
  CHECK(is_hook(P({5, 4, 3}), 0, N_INF));
  CHECK(is_hook(P({3, 1}), 1, 1));
  CHECK_FALSE(is_hook(P({2, 2}), 1, 1));
  CHECK(is_hook(P({2, 2}), 2, 0));
  CHECK_FALSE(is_hook(P({1, 1, 1}), 2, 0));
  CHECK_THROWS_AS(is_hook(P({1}), -1, 1), std::invalid_argument);
}

TEST_CASE("partition enumeration") {
  CHECK(partitions_of(4).size() == 5);
  CHECK(partitions_of(0).size() == 1);
  CHECK(partitions_up_to(4).size() == 12);
  // lexicographically decreasing first part
  CHECK(partitions_of(3).front() == P({3}));
  CHECK(partitions_of(3).back() == P({1, 1, 1}));
}

TEST_CASE("frobenius theta") {
  CHECK(frobenius_theta(P({3})) == W({{1, 1}, {2, 2}}));
  CHECK(frobenius_theta(P({3, 1, 1, 1})) == W({{1, 4}, {2, 2}}));
  CHECK(frobenius_theta(P({})) == W({}));
  // injectivity on |p| <= 12
  std::set<Weight> seen;
  for (const Partition& p : partitions_up_to(12)) {
    Weight th = frobenius_theta(p);
    CHECK(seen.count(th) == 0);
    seen.insert(th);
  }
}

TEST_CASE("weight maps frozen values") {
  CHECK(weight_tilde(P({1}), 1) == W({{1, 1}}, 1));
  CHECK(weight_m(P({3, 1, 1, 1}), 0, 0, N_INF) == W({{2, 3}, {4, 1}, {6, 1}, {8, 1}}));
  CHECK(weight_m(P({2, 2}), 1, 1, N_INF) == W({{1, 2}, {2, 1}, {4, 1}}, 1));
  CHECK(weight_bar_m(P({3, 1, 1, 1}), 0, 1, N_INF) == W({{2, 3}, {1, 3}}));
  CHECK(weight_bar_m(P({1}), 1, 1, 1) == W({{2, 1}}, 1));
  CHECK(weight_m(P({}), 0, 2, 3).is_zero());
}

TEST_CASE("weight map hook guard") {
  // dropping a nonzero coefficient is an error, never silent
  CHECK_THROWS_AS(weight_m(P({1, 1, 1}), 0, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(weight_bar_m(P({3}), 0, 0, 2), std::invalid_argument);
  CHECK_NOTHROW(weight_m(P({1, 1, 1}), 0, 1, 2));
  CHECK_NOTHROW(weight_bar_m(P({3}), 1, 2, 2));
}

TEST_CASE("weight arithmetic and order") {
  Weight a = W({{1, 1}}, 2), b = W({{1, 2}, {4, 1}});
  CHECK((a + b) == W({{1, 3}, {4, 1}}, 2));
  CHECK((a - a).is_zero());
  CHECK((a + b - b) == a);
  CHECK((-a) == W({{1, -1}}, -2));
  CHECK((b * Rat(2)) == W({{1, 4}, {4, 2}}));
  CHECK((b * Rat(0)).is_zero());
  CHECK(a.coeff(1) == 1);
  CHECK(a.coeff(99) == 0);
  CHECK(a != b);
  CHECK((a < b || b < a));
}

TEST_CASE("invert weight maps: round trips") {
  for (const Partition& p : partitions_up_to(8)) {
    for (long dl = 0; dl <= 2; ++dl) {
      Rat d(dl);
      auto [pt, dt] = invert_weight_map(weight_tilde(p, d), WeightSide::tilde, 0);
      CHECK(pt == p);
      CHECK(dt == d);
      for (int m = 0; m <= 2; ++m) {
        auto [pm, dm] = invert_weight_map(weight_m(p, d, m, N_INF), WeightSide::m_side, m);
        CHECK(pm == p);
        CHECK(dm == d);
        auto [pb, db] = invert_weight_map(weight_bar_m(p, d, m, N_INF), WeightSide::bar_side, m);
        CHECK(pb == p);
        CHECK(db == d);
      }
    }
  }
}

TEST_CASE("invert weight maps: rejects non-images") {
  CHECK_THROWS_AS(invert_weight_map(W({{1, 1}}), WeightSide::bar_side, 1), std::invalid_argument);
  CHECK_THROWS_AS(invert_weight_map(W({{4, 1}}), WeightSide::tilde, 0), std::invalid_argument);
  CHECK_THROWS_AS(invert_weight_map(W({{2, -1}}), WeightSide::m_side, 0), std::invalid_argument);
  Weight frac;
  frac.set(1, Rat(1, 2));
  CHECK_THROWS_AS(invert_weight_map(frac, WeightSide::tilde, 0), std::invalid_argument);
  // gap in the diagonal prefix
  CHECK_THROWS_AS(invert_weight_map(W({{1, 1}, {5, 2}}), WeightSide::tilde, 0), std::invalid_argument);
}

TEST_CASE("in_lattice") {
  LatticeId tilde2{WeightSide::tilde, 0, 2};
  CHECK(in_lattice(W({{1, 1}, {4, 2}}), tilde2));
  CHECK_FALSE(in_lattice(W({{5, 1}}), tilde2));
  CHECK_FALSE(in_lattice(W({{1, -1}}), tilde2));
  Weight frac;
  frac.set(1, Rat(1, 2));
  CHECK_FALSE(in_lattice(frac, tilde2));

  LatticeId mside{WeightSide::m_side, 1, N_INF};
  CHECK(in_lattice(W({{1, 2}, {2, 1}, {8, 1}}), mside));
  CHECK_FALSE(in_lattice(W({{3, 1}}), mside));  // e(3/2) needs m >= 2

  LatticeId barside{WeightSide::bar_side, 1, 2};
  CHECK(in_lattice(W({{2, 3}, {1, 1}, {3, 1}}), barside));
  CHECK_FALSE(in_lattice(W({{4, 1}}), barside));  // e(2) needs m >= 2
  CHECK_FALSE(in_lattice(W({{5, 1}}), barside));  // e(5/2) needs n >= 3
  // level is unconstrained
  CHECK(in_lattice(W({{2, 1}}, 7), barside));
}

TEST_CASE("lattice additivity over a window") {
  LatticeId tilde2{WeightSide::tilde, 0, 2};
  LatticeId mside{WeightSide::m_side, 1, 2};
  LatticeId barside{WeightSide::bar_side, 1, 2};
  std::vector<Weight> all = weights_on({1, 2, 3, 4}, 2);
  for (const Weight& mu : all) {
    REQUIRE(in_lattice(mu, tilde2));
    for (const Weight& ga : all) {
      Weight s = mu + ga;
      for (const LatticeId& L : {mside, barside}) {
        bool lhs = in_lattice(s, L);
        bool rhs = in_lattice(mu, L) && in_lattice(ga, L);
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("weight parity") {
  CHECK(weight_parity(W({})) == 0);
  CHECK(weight_parity(W({{2, 3}, {1, 3}})) == 1);
  CHECK(weight_parity(W({{1, 1}, {3, 1}})) == 0);
  Weight frac;
  frac.set(1, Rat(1, 2));
  CHECK_THROWS_AS(weight_parity(frac), std::invalid_argument);
  // integer-index coefficients never contribute
  Weight fi;
  fi.set(2, Rat(1, 2));
  CHECK(weight_parity(fi) == 0);
  // additivity
  std::vector<Weight> all = weights_on({1, 2, 3}, 2);
  for (const Weight& mu : all)
    for (const Weight& ga : all) CHECK(weight_parity(mu + ga) == (weight_parity(mu) + weight_parity(ga)) % 2);
}

TEST_CASE("classify: frozen memberships") {
  // e(1/2) over (c, 1, 1): member of the shifted type-I set via ((1), 1)
  auto ms = classify_unitary_weight(W({{1, 1}}), 'c', 1, 1);
  REQUIRE(ms.size() == 1);
  CHECK(ms[0].set_name == "Qbar(c,I)");
  CHECK(ms[0].lambda == P({1}));
  CHECK(ms[0].d == 1);
  CHECK(ms[0].type_II == false);
  CHECK(ms[0].module_weight == W({{1, 1}}, 1));

  // zero weight: member of every set via (empty, 0)
  for (char x : {'a', 'c', 'd'}) {
    auto zs = classify_unitary_weight(Weight{}, x, 1, 2);
    std::set<std::string> names;
    for (const auto& r : zs)
      if (r.lambda.empty() && r.d == 0) names.insert(r.set_name);
    CHECK(names.count(std::string("Q(") + x + ")") == 1);
    CHECK(names.count(std::string("Qbar(") + x + ")") == 1);
    if (x != 'a') {
      CHECK(names.count(std::string("Qbar(") + x + ",I)") == 1);
      CHECK(names.count(std::string("Qbar(") + x + ",II)") == 1);
    }
  }
}

TEST_CASE("classify: 2e(1) over (c,1,1) is not in the shifted type-I set") {
  Weight w = W({{2, 2}});
  auto ms = classify_unitary_weight(w, 'c', 1, 1);
  for (const auto& r : ms) CHECK(r.set_name != "Qbar(c,I)");
  // independent bounded-search oracle over (lambda, d) with |lambda| <= 4, d <= 4
  Weight shift = W({{2, 1}, {1, -1}});
  bool found = false;
  for (const Partition& lam : partitions_up_to(4)) {
    if (!is_hook(lam, 1, 1)) continue;
    for (long d = 0; d <= 4; ++d) {
      if (lam.part(0) > d) continue;
      Weight cand;
      try {
        cand = weight_bar_m(lam, 0, 1, 1);
      } catch (const std::invalid_argument&) {
        continue;
      }
      if (cand - shift * Rat(d) == w) found = true;
    }
  }
  CHECK_FALSE(found);
}

TEST_CASE("classify: multiple decompositions coexist") {
  auto ms = classify_unitary_weight(W({{1, 2}}), 'c', 1, 1);
  REQUIRE(ms.size() == 2);
  CHECK(ms[0].set_name == "Qbar(c,I)");
  CHECK(ms[0].lambda == P({1, 1}));
  CHECK(ms[0].d == 1);
  CHECK(ms[1].set_name == "Qbar(c,I)");
  CHECK(ms[1].lambda == P({2}));
  CHECK(ms[1].d == 2);
}

TEST_CASE("classify: half-integral levels") {
  // (1/2)e(1) + (1/2)e(1/2) over (d, 1, 1): type-I member via ((1), 1/2)
  Weight w;
  w.set(2, Rat(1, 2));
  w.set(1, Rat(1, 2));
  auto ms = classify_unitary_weight(w, 'd', 1, 1);
  REQUIRE(ms.size() == 1);
  CHECK(ms[0].set_name == "Qbar(d,I)");
  CHECK(ms[0].lambda == P({1}));
  CHECK(ms[0].d == Rat(1, 2));

  // (3/2)e(1) - (1/2)e(1/2) over (c, 1, 1): type-II member via ((1), 1/2)
  Weight v;
  v.set(2, Rat(3, 2));
  v.set(1, Rat(-1, 2));
  auto mv = classify_unitary_weight(v, 'c', 1, 1);
  REQUIRE(mv.size() == 1);
  CHECK(mv[0].set_name == "Qbar(c,II)");
  CHECK(mv[0].lambda == P({1}));
  CHECK(mv[0].d == Rat(1, 2));
  CHECK(mv[0].type_II);
  Weight built = v;
  built.level = Rat(-1, 2);
  CHECK(mv[0].module_weight == built);
}

TEST_CASE("classify: level-carrying sets") {
  // unbar side with level d: (1) with d=1 over (c, 0, 2) gives e(1) + L0
  Weight w = W({{2, 1}}, 1);
  auto ms = classify_unitary_weight(w, 'c', 0, 2);
  REQUIRE(ms.size() == 1);
  CHECK(ms[0].set_name == "Q(c)");
  CHECK(ms[0].lambda == P({1}));
  CHECK(ms[0].d == 1);

  // type a requires d = 0
  CHECK(classify_unitary_weight(W({{2, 1}}, 1), 'a', 0, 2).empty());
  // 3e(1) + 3e(1/2) lies in both images for m = 1: as a bar-side weight of
  // (3,1,1,1) and as an unbar-side weight of its (1|inf) companion (4,1,1)
  auto ma = classify_unitary_weight(W({{2, 3}, {1, 3}}), 'a', 1, N_INF);
  REQUIRE(ma.size() == 2);
  CHECK(ma[0].set_name == "Q(a)");
  CHECK(ma[0].lambda == P({4, 1, 1}));
  CHECK(ma[1].set_name == "Qbar(a)");
  CHECK(ma[1].lambda == P({3, 1, 1, 1}));
}

TEST_CASE("bijection coherence across the three maps") {
  for (const Partition& p : partitions_up_to(6))
    for (long dl = 0; dl <= 1; ++dl) {
      Rat d(dl);
      auto t = invert_weight_map(weight_tilde(p, d), WeightSide::tilde, 0);
      auto mm = invert_weight_map(weight_m(p, d, 2, N_INF), WeightSide::m_side, 2);
      auto bb = invert_weight_map(weight_bar_m(p, d, 2, N_INF), WeightSide::bar_side, 2);
      CHECK(t == mm);
      CHECK(mm == bb);
    }
}

TEST_CASE("weight serialization") {
  Weight w = W({{1, 3}, {2, 3}});
  CHECK(w.str() == "3*e(1/2) + 3*e(1) + 0*L0");
  CHECK(weight_parse(w.str()) == w);
  Weight lv = W({{2, 1}}, 2);
  CHECK(lv.str() == "1*e(1) + 2*L0");
  CHECK(weight_parse(lv.str()) == lv);
  Weight neg;
  neg.set(-1, Rat(-1, 2));
  neg.level = Rat(1, 3);
  CHECK(weight_parse(neg.str()) == neg);
  CHECK(weight_parse("0*L0").is_zero());
  CHECK_THROWS_AS(weight_parse("1*e(1)"), std::invalid_argument);

  CHECK(weight_json(w) == "{\"eps\":[[1,\"3\"],[2,\"3\"]],\"level\":\"0\"}");
  CHECK(weight_from_json_text(weight_json(neg)) == neg);
  CHECK_THROWS_AS(weight_from_json_text("{\"eps\":[]}"), std::invalid_argument);
  CHECK_THROWS_AS(weight_from_json_text("not json"), std::invalid_argument);
}
