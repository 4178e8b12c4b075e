#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "gaudin/report.hpp"
#include "gaudin/repmodule.hpp"
#include "gaudin/tensor.hpp"

using namespace gaudin;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing file: ", path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string golden(const std::string& name) {
  return read_file(std::string(GAUDIN_SOURCE_DIR) + "/tests/golden/" + name);
}

std::shared_ptr<const StructureTable> T(char type, Fam fam, int m, int n, bool ext = false) {
  AlgebraSpec s;
  s.type = type;
  s.fam = fam;
  s.m = m;
  s.n = n;
  s.extended = ext;
  return StructureTable::build(s);
}

}  // namespace

TEST_CASE("weight json form round-trips") {
  Weight w;
  w.set(2, Rat(3));
  w.set(1, Rat(-1) / 2);
  w.set(-4, Rat(7) / 3);
  w.level = Rat(5) / 2;
  Json j = weight_to_json(w);
  CHECK(j["level"] == "5/2");
  CHECK(j["eps"].size() == 3);
  CHECK(j["eps"][0][0] == -4);
  CHECK(weight_from_json(j) == w);

  Weight zero;
  CHECK(weight_from_json(weight_to_json(zero)) == zero);

  CHECK_THROWS_AS(weight_from_json(Json::array()), std::invalid_argument);
  Json bad;
  bad["eps"] = Json::array({Json::array({1})});
  bad["level"] = "0";
  CHECK_THROWS_AS(weight_from_json(bad), std::invalid_argument);
}

TEST_CASE("case files parse strictly") {
  Json j;
  j["type"] = "a";
  j["m"] = 1;
  j["n"] = 2;
  j["k"] = 3;
  j["partitions"] = Json::parse("[[1],[1],[1]]");
  j["levels"] = Json::parse("[\"0\",\"0\",\"0\"]");
  j["mu"] = Json::parse("[2,1]");
  j["z"] = Json::parse("[\"0\",\"1\",\"3\"]");
  CorrespondenceCase c = case_from_json(j);
  CHECK(c.type == 'a');
  CHECK(c.partitions.size() == 3);
  CHECK(c.mu == Partition({2, 1}));
  CHECK(c.z == std::vector<Rat>{Rat(0), Rat(1), Rat(3)});
  CHECK(case_to_json(c) == j);

  Json no_z = j;
  no_z.erase("z");
  CHECK(case_from_json(no_z).z == default_points(3));

  Json bad = j;
  bad["type"] = "b";
  CHECK_THROWS_AS(case_from_json(bad), std::invalid_argument);
  bad = j;
  bad.erase("mu");
  CHECK_THROWS_AS(case_from_json(bad), std::invalid_argument);
  bad = j;
  bad["partitions"] = Json::parse("[[1,2]]");
  CHECK_THROWS_AS(case_from_json(bad), std::invalid_argument);
  bad = j;
  bad["levels"] = Json::parse("[\"0\"]");
  CHECK_THROWS_AS(case_from_json(bad), std::invalid_argument);
  bad = j;
  bad["levels"] = Json::parse("[\"0\",\"1/0\",\"0\"]");
  CHECK_THROWS_AS(case_from_json(bad), std::invalid_argument);
}

TEST_CASE("module dumps are deterministic and carry the action triplets") {
  auto t = T('a', Fam::bar, 1, 1);
  RepModule nat = RepModule::natural(t);
  Json j = module_to_json(nat, true, true);
  CHECK(j["format"] == 1);
  CHECK(j["status"] == "complete");
  CHECK(j["blocks"].size() == 2);
  CHECK(!j["actions"].empty());
  CHECK(j["gram"].size() == 2);
  CHECK(j.dump(2) == module_to_json(nat, true, true).dump(2));

  Json u = unitarity_to_json(nat.check_unitarizable());
  CHECK(u["unitarizable"] == true);
  CHECK(u["blocks"].size() == 2);
}

TEST_CASE("spectrum reports regenerate the shipped goldens byte for byte") {
  auto t = T('a', Fam::unbar, 0, 2);
  RepModule nat = RepModule::natural(t);
  TensorSystem sys({nat, nat}, {Rat(0), Rat(1)}, CasimirVariant::ring);
  Json sym = spectrum_reports(sys, weight_m(Partition({2}), 0, 0, 2), 50);
  Json alt = spectrum_reports(sys, weight_m(Partition({1, 1}), 0, 0, 2), 50);
  CHECK(sym.dump(2) + "\n" == golden("gl2-sym.json"));
  CHECK(alt.dump(2) + "\n" == golden("gl2-alt.json"));
}

TEST_CASE("the correspondence report regenerates its golden byte for byte") {
  Json doc = Json::parse(read_file(std::string(GAUDIN_SOURCE_DIR) + "/cases/a-naturals-l3.json"));
  CorrespondenceCase c = case_from_json(doc);
  ComparisonReport r = compare_spectra(c);
  CHECK(r.ok);
  Json j;
  j["case"] = case_to_json(c);
  Json rep = comparison_to_json(r);
  for (auto& [k, v] : rep.items()) j[k] = v;
  CHECK(j.dump(2) + "\n" == golden("a-naturals-l3-report.json"));
}

TEST_CASE("algebra summaries regenerate their goldens byte for byte") {
  auto render = [](const StructureTable& t) {
    std::ostringstream os;
    os << "algebra " << t.spec.str() << "\n";
    os << "dimension " << t.dim() << "\n";
    os << "positive_roots " << t.positive_roots.size() << "\n";
    os << "checks passed\n\n";
    os << t.dump();
    return os.str();
  };
  CHECK(render(*T('a', Fam::bar, 1, 1, true)) == golden("algebra-a-bar-1-1.txt"));
  CHECK(render(*T('c', Fam::bar, 1, 1)) == golden("algebra-c-bar-1-1.txt"));
}

TEST_CASE("atomic writes land complete and overwrite cleanly") {
  std::string path = "report_test_scratch.json";
  write_atomic(path, "first\n");
  CHECK(read_file(path) == "first\n");
  write_atomic(path, "second, longer than before\n");
  CHECK(read_file(path) == "second, longer than before\n");
  std::remove(path.c_str());
  std::remove((path + ".tmp").c_str());
}
