// Command-line front end: build and check algebra tables, construct modules,
// compute Gaudin spectra, run the spectrum correspondence harness and the
// corner bridge example. All reports are exact-rational JSON; output is
// byte-identical for identical configuration and seed.
//
// Exit codes: 0 success, 1 invariant or comparison failure, 2 usage or
// schema error.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gaudin/algebra.hpp"
#include "gaudin/duality.hpp"
#include "gaudin/poly.hpp"
#include "gaudin/report.hpp"
#include "gaudin/repmodule.hpp"
#include "gaudin/tensor.hpp"
#include "gaudin/weight.hpp"

namespace {

using namespace gaudin;

// Splits on the separator, keeping empty fields; the empty string has no
// fields at all, so "" is an empty list while ";" is two empty entries.
std::vector<std::string> split(const std::string& s, char sep) {
  if (s.empty()) return {};
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

Partition parse_partition(const std::string& s) {
  std::vector<long> parts;
  for (const std::string& tok : split(s, ',')) {
    std::size_t used = 0;
    long v = std::stol(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("bad partition part: " + tok);
    parts.push_back(v);
  }
  return Partition(parts);
}

std::vector<Rat> parse_rat_list(const std::string& s, char sep) {
  std::vector<Rat> out;
  for (const std::string& tok : split(s, sep)) out.push_back(rat_parse(tok));
  return out;
}

Fam parse_family(const std::string& s) {
  if (s == "unbar") return Fam::unbar;
  if (s == "bar") return Fam::bar;
  if (s == "tilde") return Fam::tilde;
  throw std::invalid_argument("unknown family: " + s);
}

Weight map_partition_weight(Fam fam, const Partition& p, const Rat& d, int m, int n) {
  switch (fam) {
    case Fam::unbar:
      return weight_m(p, d, m, n);
    case Fam::bar:
      return weight_bar_m(p, d, m, n);
    case Fam::tilde:
      return weight_tilde(p, d);
  }
  throw std::invalid_argument("unknown family");
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    write_atomic(out_path, content);
}

struct GlobalOpts {
  unsigned long long seed = 12345;
  int depth = 8;
  int precision = 50;
  std::string out_path;
  std::string z_str;
};

struct AlgebraOpts {
  std::string type = "a";
  std::string family = "unbar";
  int m = 0;
  int n = 1;
  bool extended = false;
  bool allow_large = false;
};

AlgebraSpec make_spec(const AlgebraOpts& a) {
  AlgebraSpec s;
  s.type = a.type.at(0);
  s.fam = parse_family(a.family);
  s.m = a.m;
  s.n = a.n;
  s.extended = a.extended;
  return s;
}

int run_algebra(const GlobalOpts& g, const AlgebraOpts& a) {
  auto t = StructureTable::build(make_spec(a), a.allow_large);
  t->check_antisymmetry();
  t->check_jacobi();
  t->check_form();
  t->check_roots();
  t->check_star_structures();
  t->check_cocycle();
  t->check_parities();
  std::ostringstream os;
  os << "algebra " << t->spec.str() << "\n";
  os << "dimension " << t->dim() << "\n";
  os << "positive_roots " << t->positive_roots.size() << "\n";
  os << "checks passed\n\n";
  os << t->dump();
  emit(g.out_path, os.str());
  return 0;
}

struct ModuleOpts {
  AlgebraOpts alg;
  std::string weight_str;
  std::string partition_str;
  std::string d_str = "0";
  std::string star = "omega";
  bool use_weight = false;
  bool with_actions = false;
  bool with_gram = false;
};

int run_module(const GlobalOpts& g, const ModuleOpts& mo) {
  auto t = StructureTable::build(make_spec(mo.alg), mo.alg.allow_large);
  Weight xi;
  if (mo.use_weight) {
    xi = weight_parse(mo.weight_str);
  } else {
    Partition p = parse_partition(mo.partition_str);
    xi = map_partition_weight(t->spec.fam, p, rat_parse(mo.d_str), t->spec.m, t->spec.n);
  }
  StarKind star = StarKind::omega;
  if (mo.star == "omega-prime")
    star = StarKind::omega_prime;
  else if (mo.star != "omega")
    throw std::invalid_argument("star must be omega or omega-prime");
  RepModule m = RepModule::irreducible(t, xi, g.depth, star);
  Json j = module_to_json(m, mo.with_actions, mo.with_gram);
  long total = 0;
  for (const ModuleBlock& b : m.blocks()) total += b.dim;
  j["dim_total"] = total;
  j["unitarity"] = unitarity_to_json(m.check_unitarizable());
  emit(g.out_path, j.dump(2) + "\n");
  return 0;
}

struct SpectrumOpts {
  AlgebraOpts alg;
  std::string partitions_str;
  std::string levels_str;
  std::string mu_str;
  std::string mu_weight_str;
  std::string variant = "ring";
  bool use_mu_weight = false;
};

int run_spectrum(const GlobalOpts& g, const SpectrumOpts& so) {
  auto t = StructureTable::build(make_spec(so.alg), so.alg.allow_large);
  std::vector<std::string> pstrs = split(so.partitions_str, ';');
  if (pstrs.empty()) throw std::invalid_argument("need at least one factor partition");
  std::vector<Partition> parts;
  for (const std::string& s : pstrs) parts.push_back(parse_partition(s));
  std::vector<Rat> levels(parts.size(), Rat(0));
  if (!so.levels_str.empty()) {
    levels = parse_rat_list(so.levels_str, ';');
    if (levels.size() != parts.size())
      throw std::invalid_argument("levels must match partitions in length");
  }
  std::vector<Rat> z;
  if (!g.z_str.empty())
    z = parse_rat_list(g.z_str, ',');
  else
    z = default_points(static_cast<int>(parts.size()));
  if (z.size() != parts.size()) throw std::invalid_argument("z must list one point per factor");
  if (std::set<Rat>(z.begin(), z.end()).size() != z.size())
    throw std::invalid_argument("marked points must be distinct");

  std::vector<RepModule> factors;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    Weight xi = map_partition_weight(t->spec.fam, parts[i], levels[i], t->spec.m, t->spec.n);
    factors.push_back(RepModule::irreducible(t, xi, g.depth));
  }
  CasimirVariant variant = CasimirVariant::ring;
  if (so.variant == "central")
    variant = CasimirVariant::central;
  else if (so.variant != "ring")
    throw std::invalid_argument("variant must be ring or central");
  TensorSystem sys(factors, z, variant);

  Weight mu;
  if (so.use_mu_weight) {
    mu = weight_parse(so.mu_weight_str);
  } else {
    Rat total_d = std::accumulate(levels.begin(), levels.end(), Rat(0));
    mu = map_partition_weight(t->spec.fam, parse_partition(so.mu_str), total_d, t->spec.m,
                              t->spec.n);
  }
  Json j = spectrum_reports(sys, mu, g.precision);
  emit(g.out_path, j.dump(2) + "\n");
  return 0;
}

int run_duality(const GlobalOpts& g, const std::string& case_path, bool depth_set, bool seed_set) {
  std::ifstream in(case_path);
  if (!in) throw std::invalid_argument("cannot open case file: " + case_path);
  Json doc = Json::parse(in);
  CorrespondenceCase c = case_from_json(doc);
  if (depth_set) {
    c.super_depth = g.depth;
    c.lie_depth = g.depth;
  }
  if (seed_set) c.seed = g.seed;
  ComparisonReport r = compare_spectra(c);
  Json j;
  j["case"] = case_to_json(c);
  Json rep = comparison_to_json(r);
  for (auto& [k, v] : rep.items()) j[k] = v;
  emit(g.out_path, j.dump(2) + "\n");
  return r.ok ? 0 : 1;
}

int run_example(const GlobalOpts& g) {
  BridgeReport r = bridge_example();
  emit(g.out_path, bridge_to_json(r).dump(2) + "\n");
  return r.ok ? 0 : 1;
}

int run_selftest() {
  int failures = 0;
  auto group = [&](const char* name, auto&& fn) {
    try {
      fn();
      std::cout << "ok " << name << "\n";
    } catch (const std::exception& e) {
      ++failures;
      std::cout << "FAIL " << name << ": " << e.what() << "\n";
    }
  };

  group("combinatorics", [] {
    for (const Partition& p : partitions_up_to(6)) {
      if (conjugate(conjugate(p)) != p) throw std::runtime_error("conjugate involution");
      for (long d = 0; d <= 1; ++d)
        for (int m = 0; m <= 1; ++m) {
          auto [q, dd] = invert_weight_map(weight_m(p, d, m, N_INF), WeightSide::m_side, m);
          if (q != p || dd != d) throw std::runtime_error("weight map round-trip");
        }
    }
  });

  group("structure tables", [] {
    for (const char* name : {"a", "c", "d"}) {
      AlgebraSpec s;
      s.type = name[0];
      s.fam = Fam::bar;
      s.m = 1;
      s.n = 1;
      s.extended = true;
      auto t = StructureTable::build(s);
      t->check_antisymmetry();
      t->check_jacobi();
      t->check_form();
      t->check_roots();
      t->check_star_structures();
      t->check_cocycle();
      t->check_parities();
    }
  });

  group("rank one spin chain", [] {
    AlgebraSpec s;
    s.type = 'a';
    s.fam = Fam::unbar;
    s.m = 0;
    s.n = 2;
    auto t = StructureTable::build(s);
    RepModule nat = RepModule::natural(t);
    TensorSystem sys({nat, nat}, {Rat(0), Rat(1)}, CasimirVariant::ring);
    Mat sym = restrict_to(sys.hamiltonian(0, weight_m(Partition({2}), 0, 0, 2)),
                          sys.singular_block(weight_m(Partition({2}), 0, 0, 2)));
    Mat alt = restrict_to(sys.hamiltonian(0, weight_m(Partition({1, 1}), 0, 0, 2)),
                          sys.singular_block(weight_m(Partition({1, 1}), 0, 0, 2)));
    if (sym.rows != 1 || sym.at(0, 0) != -1) throw std::runtime_error("symmetric block");
    if (alt.rows != 1 || alt.at(0, 0) != 1) throw std::runtime_error("alternating block");
  });

  group("defining correspondence", [] {
    CorrespondenceCase c;
    c.type = 'a';
    c.m = 1;
    c.n = 1;
    c.k = 2;
    c.partitions = {Partition({1}), Partition({1})};
    c.levels = {Rat(0), Rat(0)};
    c.mu = Partition({2});
    c.z = {Rat(0), Rat(1)};
    ComparisonReport r = compare_spectra(c);
    if (!r.ok) throw std::runtime_error("spectrum comparison failed");
  });

  if (failures) {
    std::cout << "selftest: FAIL\n";
    return 1;
  }
  std::cout << "selftest: PASS\n";
  return 0;
}

void add_algebra_opts(CLI::App* sub, AlgebraOpts& a) {
  sub->add_option("--type", a.type, "algebra type")
      ->check(CLI::IsMember({"a", "c", "d"}))
      ->capture_default_str();
  sub->add_option("--family", a.family, "index family")
      ->check(CLI::IsMember({"unbar", "bar", "tilde"}))
      ->capture_default_str();
  sub->add_option("--m", a.m, "left window size")->check(CLI::NonNegativeNumber)->capture_default_str();
  sub->add_option("--n", a.n, "right window size")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_flag("--extended", a.extended, "append the central element");
  sub->add_flag("--allow-large", a.allow_large, "lift the desk-scale size guard");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Gaudin spectra on modules over classical Lie (super)algebras"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "resampling seed")->capture_default_str();
  auto* depth_opt = app.add_option("--depth", g.depth, "module construction depth")
                        ->check(CLI::PositiveNumber)
                        ->capture_default_str();
  app.add_option("--precision", g.precision, "digits for approximate eigenvalues")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  auto* seed_opt = app.get_option("--seed");
  app.add_option("--out", g.out_path, "write the report here instead of stdout");
  app.add_option("--z", g.z_str, "comma-separated marked points");

  AlgebraOpts alg_a;
  auto* sub_algebra = app.add_subcommand("algebra", "build a structure table and run its self-checks");
  sub_algebra->fallthrough();
  add_algebra_opts(sub_algebra, alg_a);

  ModuleOpts mo;
  auto* sub_module = app.add_subcommand("module", "build a highest-weight module");
  sub_module->fallthrough();
  add_algebra_opts(sub_module, mo.alg);
  sub_module->add_option("--weight", mo.weight_str, "highest weight in text form");
  sub_module->add_option("--partition", mo.partition_str, "partition for the family weight map");
  sub_module->add_option("--d", mo.d_str, "level for the weight map")->capture_default_str();
  sub_module->add_option("--star", mo.star, "contravariant form flavor")
      ->check(CLI::IsMember({"omega", "omega-prime"}))
      ->capture_default_str();
  sub_module->add_flag("--actions", mo.with_actions, "include action triplets");
  sub_module->add_flag("--gram", mo.with_gram, "include Gram triplets");

  SpectrumOpts so;
  auto* sub_spectrum = app.add_subcommand("spectrum", "Hamiltonian spectra on one weight block");
  sub_spectrum->fallthrough();
  add_algebra_opts(sub_spectrum, so.alg);
  sub_spectrum->add_option("--partitions", so.partitions_str, "factor partitions, ';' separated")
      ->required();
  sub_spectrum->add_option("--levels", so.levels_str, "factor levels, ';' separated");
  sub_spectrum->add_option("--mu", so.mu_str, "block partition");
  sub_spectrum->add_option("--mu-weight", so.mu_weight_str, "block weight in text form");
  sub_spectrum->add_option("--variant", so.variant, "casimir variant")
      ->check(CLI::IsMember({"ring", "central"}))
      ->capture_default_str();

  std::string case_path;
  auto* sub_duality = app.add_subcommand("duality", "compare spectra across the correspondence");
  sub_duality->fallthrough();
  sub_duality->add_option("--case", case_path, "case description file")->required();

  auto* sub_example = app.add_subcommand("example", "run the corner bridge example");
  sub_example->fallthrough();

  auto* sub_selftest = app.add_subcommand("selftest", "quick end-to-end checks");
  sub_selftest->fallthrough();

  int rc = 0;
  auto guard = [&](std::function<int()> fn) {
    try {
      rc = fn();
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      rc = 2;
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << "\n";
      rc = 2;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      rc = 1;
    }
  };

  sub_algebra->callback([&] { guard([&] { return run_algebra(g, alg_a); }); });
  sub_module->callback([&] {
    guard([&] {
      bool have_w = sub_module->count("--weight") > 0;
      bool have_p = sub_module->count("--partition") > 0;
      if (have_w == have_p)
        throw std::invalid_argument("give exactly one of --weight and --partition");
      mo.use_weight = have_w;
      return run_module(g, mo);
    });
  });
  sub_spectrum->callback([&] {
    guard([&] {
      bool have_mu = sub_spectrum->count("--mu") > 0;
      bool have_w = sub_spectrum->count("--mu-weight") > 0;
      if (have_mu == have_w)
        throw std::invalid_argument("give exactly one of --mu and --mu-weight");
      so.use_mu_weight = have_w;
      return run_spectrum(g, so);
    });
  });
  sub_duality->callback([&] {
    guard([&] {
      return run_duality(g, case_path, depth_opt->count() > 0, seed_opt->count() > 0);
    });
  });
  sub_example->callback([&] { guard([&] { return run_example(g); }); });
  sub_selftest->callback([&] { guard([&] { return run_selftest(); }); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return rc;
}
