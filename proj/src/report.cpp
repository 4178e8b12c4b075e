#include "gaudin/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "gaudin/poly.hpp"

namespace gaudin {

namespace {

Json poly_coeffs(const Poly& p) {
  Json a = Json::array();
  for (const Rat& c : p) a.push_back(rat_str(c));
  return a;
}

Json rat_list(const std::vector<Rat>& v) {
  Json a = Json::array();
  for (const Rat& c : v) a.push_back(rat_str(c));
  return a;
}

Json mat_triplets(const Mat& m) {
  Json a = Json::array();
  for (std::size_t r = 0; r < m.rows; ++r)
    for (std::size_t c = 0; c < m.cols; ++c)
      if (m.at(r, c) != 0) {
        Json t = Json::array();
        t.push_back(r);
        t.push_back(c);
        t.push_back(rat_str(m.at(r, c)));
        a.push_back(std::move(t));
      }
  return a;
}

// Accepts "p/q" strings and plain JSON integers; anything else is a schema
// error with the offending path in the message.
Rat rat_of(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return rat_parse(j.get<std::string>());
    } catch (const std::exception& e) {
      throw std::invalid_argument(where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rat(j.get<long>());
  throw std::invalid_argument(where + ": expected a \"p/q\" string or integer");
}

long int_of(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw std::invalid_argument(where + ": expected an integer");
  return j.get<long>();
}

const Json& field(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw std::invalid_argument(std::string("missing field \"") + name + "\"");
  return *it;
}

Partition partition_of(const Json& j, const std::string& where) {
  if (!j.is_array()) throw std::invalid_argument(where + ": expected an array of parts");
  std::vector<long> parts;
  for (const Json& e : j) parts.push_back(int_of(e, where));
  try {
    return Partition(parts);
  } catch (const std::exception& e) {
    throw std::invalid_argument(where + ": " + e.what());
  }
}

}  // namespace

Json weight_to_json(const Weight& w) {
  Json eps = Json::array();
  for (const auto& [h, c] : w.eps)
    if (c != 0) eps.push_back(Json::array({h, rat_str(c)}));
  Json j;
  j["eps"] = std::move(eps);
  j["level"] = rat_str(w.level);
  return j;
}

Weight weight_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("weight: expected an object");
  Weight w;
  const Json& eps = field(j, "eps");
  if (!eps.is_array()) throw std::invalid_argument("weight.eps: expected an array");
  for (const Json& term : eps) {
    if (!term.is_array() || term.size() != 2)
      throw std::invalid_argument("weight.eps: each term is [2r, \"p/q\"]");
    Half h = static_cast<Half>(int_of(term[0], "weight.eps index"));
    w.set(h, rat_of(term[1], "weight.eps coefficient"));
  }
  w.level = rat_of(field(j, "level"), "weight.level");
  return w;
}

Json module_to_json(const RepModule& m, bool with_actions, bool with_gram) {
  const StructureTable& t = *m.table();
  Json j;
  j["format"] = 1;
  j["algebra"] = t.spec.str();
  j["highest_weight"] = weight_to_json(m.highest_weight());
  j["status"] = m.complete() ? "complete" : "windowed";
  if (!m.complete()) j["depth"] = m.depth();

  Json blocks = Json::array();
  for (const ModuleBlock& b : m.blocks()) {
    Json e;
    e["weight"] = weight_to_json(b.mu);
    e["dim"] = b.dim;
    e["parity"] = b.parity;
    blocks.push_back(std::move(e));
  }
  j["blocks"] = std::move(blocks);

  if (with_actions) {
    Json actions = Json::array();
    for (int id = 0; id < t.dim(); ++id) {
      Json per = Json::array();
      for (const ModuleBlock& b : m.blocks()) {
        try {
          Mat a = m.action_block(id, b.mu);
          if (a.rows == 0) continue;
          Json tr = mat_triplets(a);
          if (tr.empty()) continue;
          Json e;
          e["from"] = weight_to_json(b.mu);
          e["entries"] = std::move(tr);
          per.push_back(std::move(e));
        } catch (const MarginError&) {
          Json e;
          e["from"] = weight_to_json(b.mu);
          e["unresolved"] = true;
          per.push_back(std::move(e));
        }
      }
      if (per.empty()) continue;
      Json e;
      e["element"] = t.elem(id).tag.str();
      e["blocks"] = std::move(per);
      actions.push_back(std::move(e));
    }
    j["actions"] = std::move(actions);
  }

  if (with_gram) {
    Json gram = Json::array();
    for (const ModuleBlock& b : m.blocks()) {
      GramBlock g = m.gram_block(b.mu);
      Json e;
      e["weight"] = weight_to_json(b.mu);
      e["radical_dim"] = g.radical_dim;
      e["entries"] = mat_triplets(g.matrix);
      gram.push_back(std::move(e));
    }
    j["gram"] = std::move(gram);
  }
  return j;
}

Json unitarity_to_json(const UnitarityReport& r) {
  Json j;
  j["unitarizable"] = r.unitarizable;
  Json blocks = Json::array();
  for (const auto& [w, verdict] : r.blocks) {
    Json e;
    e["weight"] = weight_to_json(w);
    e["verdict"] = verdict;
    blocks.push_back(std::move(e));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

Json spectrum_reports(const TensorSystem& sys, const Weight& mu, int digits) {
  const TensorBlockBasis& basis = sys.block_basis(mu);
  Mat sing = sys.singular_block(mu);
  Json out = Json::array();
  for (int i = 0; i < sys.size(); ++i) {
    BlockOperator h = sys.hamiltonian(i, mu);
    Mat r = restrict_to(h, sing);
    Json rep;
    rep["weight"] = weight_to_json(mu);
    rep["block_dim"] = basis.dim;
    rep["sing_dim"] = sing.cols;
    rep["hamiltonian"] = i;
    rep["charpoly"] = poly_coeffs(charpoly(r));
    if (r.rows == 0) {
      rep["diagonalizable"] = true;
      rep["eigenvalues_approx"] = Json::array();
    } else {
      rep["diagonalizable"] = diagonalizable(r).diagonalizable;
      Json ev = Json::array();
      for (const CF& v : spectrum_numeric(r, digits)) ev.push_back(cf_str(v, digits));
      rep["eigenvalues_approx"] = std::move(ev);
    }
    rep["z"] = rat_list(sys.points());
    out.push_back(std::move(rep));
  }
  return out;
}

CorrespondenceCase case_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("case file: expected a JSON object");
  CorrespondenceCase c;
  std::string ty = field(j, "type").is_string() ? field(j, "type").get<std::string>() : "";
  if (ty.size() != 1 || (ty[0] != 'a' && ty[0] != 'c' && ty[0] != 'd'))
    throw std::invalid_argument("case file: type must be \"a\", \"c\", or \"d\"");
  c.type = ty[0];
  c.m = static_cast<int>(int_of(field(j, "m"), "case m"));
  c.n = static_cast<int>(int_of(field(j, "n"), "case n"));
  c.k = static_cast<int>(int_of(field(j, "k"), "case k"));
  if (c.m < 0 || c.n < 1 || c.k < 1)
    throw std::invalid_argument("case file: need m >= 0, n >= 1, k >= 1");

  const Json& ps = field(j, "partitions");
  if (!ps.is_array() || ps.empty())
    throw std::invalid_argument("case file: partitions must be a non-empty array");
  for (std::size_t i = 0; i < ps.size(); ++i)
    c.partitions.push_back(partition_of(ps[i], "case partitions[" + std::to_string(i) + "]"));

  const Json& ls = field(j, "levels");
  if (!ls.is_array() || ls.size() != ps.size())
    throw std::invalid_argument("case file: levels must match partitions in length");
  for (std::size_t i = 0; i < ls.size(); ++i)
    c.levels.push_back(rat_of(ls[i], "case levels[" + std::to_string(i) + "]"));

  c.mu = partition_of(field(j, "mu"), "case mu");

  if (auto it = j.find("z"); it != j.end()) {
    if (!it->is_array()) throw std::invalid_argument("case z: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i)
      c.z.push_back(rat_of((*it)[i], "case z[" + std::to_string(i) + "]"));
  } else {
    c.z = default_points(static_cast<int>(ps.size()));
  }

  if (auto it = j.find("super_depth"); it != j.end())
    c.super_depth = static_cast<int>(int_of(*it, "case super_depth"));
  if (auto it = j.find("lie_depth"); it != j.end())
    c.lie_depth = static_cast<int>(int_of(*it, "case lie_depth"));
  if (auto it = j.find("seed"); it != j.end())
    c.seed = static_cast<unsigned long long>(int_of(*it, "case seed"));
  if (auto it = j.find("max_attempts"); it != j.end())
    c.max_attempts = static_cast<int>(int_of(*it, "case max_attempts"));
  return c;
}

Json case_to_json(const CorrespondenceCase& c) {
  Json j;
  j["type"] = std::string(1, c.type);
  j["m"] = c.m;
  j["n"] = c.n;
  j["k"] = c.k;
  Json ps = Json::array();
  for (const Partition& p : c.partitions) {
    Json parts = Json::array();
    for (long q : p.parts) parts.push_back(q);
    ps.push_back(std::move(parts));
  }
  j["partitions"] = std::move(ps);
  j["levels"] = rat_list(c.levels);
  Json mu = Json::array();
  for (long q : c.mu.parts) mu.push_back(q);
  j["mu"] = std::move(mu);
  j["z"] = rat_list(c.z);
  return j;
}

Json comparison_to_json(const ComparisonReport& r) {
  Json j;
  j["ok"] = r.ok;
  j["super_block_dim"] = r.super_block_dim;
  j["lie_block_dim"] = r.lie_block_dim;
  j["super_sing_dim"] = r.super_sing_dim;
  j["lie_sing_dim"] = r.lie_sing_dim;
  j["z"] = rat_list(r.z_used);
  j["attempts"] = r.attempts;
  Json hams = Json::array();
  for (std::size_t i = 0; i < r.hams.size(); ++i) {
    const HamiltonianComparison& h = r.hams[i];
    Json e;
    e["hamiltonian"] = i;
    e["super_charpoly"] = poly_coeffs(h.super_poly);
    e["lie_charpoly"] = poly_coeffs(h.lie_poly);
    e["equal"] = h.equal;
    e["both_diagonalizable"] = h.both_diagonalizable;
    hams.push_back(std::move(e));
  }
  j["hamiltonians"] = std::move(hams);
  j["notes"] = r.notes;
  return j;
}

Json bridge_to_json(const BridgeReport& r) {
  Json j;
  j["ok"] = r.ok;
  j["block_dim"] = r.block_dim;
  j["image_dim"] = r.image_dim;
  j["sing_dim"] = r.sing_dim;
  j["charpoly_source"] = poly_coeffs(r.charpoly_src);
  j["charpoly_image"] = poly_coeffs(r.charpoly_tgt);
  j["eigenvalues"] = rat_list(r.eigenvalues);
  j["failures"] = r.failures;
  return j;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out.flush()) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace gaudin
