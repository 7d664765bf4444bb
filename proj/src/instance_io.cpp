#include "ocs/instance_io.hpp"

#include <set>

#include "json.hpp"

namespace ocs {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

Count as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + " must be an integer");
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
    throw ParseError(where + " is out of range");
  }
  return v.get<Count>();
}

const json& as_array(const json& v, std::size_t len, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + " must be an array");
  if (v.size() != len) {
    throw ParseError(where + " has length " + std::to_string(v.size()) + ", expected " +
                     std::to_string(len));
  }
  return v;
}

IntMatrix read_matrix(const json& v, std::size_t rows, std::size_t cols, const std::string& name) {
  IntMatrix out(rows, cols);
  as_array(v, rows, name);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string row_name = name + "[" + std::to_string(r) + "]";
    as_array(v[r], cols, row_name);
    for (std::size_t c = 0; c < cols; ++c) {
      out(r, c) = as_int(v[r][c], row_name + "[" + std::to_string(c) + "]");
    }
  }
  return out;
}

ordered_json write_matrix(const IntMatrix& mat) {
  ordered_json out = ordered_json::array();
  for (std::size_t r = 0; r < mat.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (std::size_t c = 0; c < mat.cols(); ++c) row.push_back(mat(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

ordered_json write_matching(const Matching& x) {
  ordered_json out = ordered_json::array();
  for (const auto& xk : x.ocs) out.push_back(write_matrix(xk));
  return out;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance must be a JSON object");
  static const std::set<std::string> kKeys{"m", "n", "a", "b", "u", "c_new"};
  for (const auto& [key, _] : doc.items()) {
    if (!kKeys.contains(key)) throw ParseError("unknown field '" + key + "'");
  }
  for (const auto& key : kKeys) {
    if (!doc.contains(key)) throw ParseError("missing field '" + key + "'");
  }
  const Count m = as_int(doc["m"], "m");
  const Count n = as_int(doc["n"], "n");
  if (m < 1 || n < 1) throw ParseError("m and n must be at least 1");
  const auto mu = static_cast<std::size_t>(m);
  const auto nu = static_cast<std::size_t>(n);

  Instance inst;
  inst.phys.a = read_matrix(doc["a"], mu, nu, "a");
  inst.phys.b = read_matrix(doc["b"], mu, nu, "b");
  as_array(doc["u"], nu, "u");
  inst.old_matching.ocs.reserve(nu);
  for (std::size_t k = 0; k < nu; ++k) {
    inst.old_matching.ocs.push_back(read_matrix(doc["u"][k], mu, mu, "u[" + std::to_string(k) + "]"));
  }
  inst.target.c = read_matrix(doc["c_new"], mu, mu, "c_new");
  return inst;
}

std::string dump_instance(const Instance& inst) {
  ordered_json doc;
  doc["m"] = inst.phys.m();
  doc["n"] = inst.phys.n();
  doc["a"] = write_matrix(inst.phys.a);
  doc["b"] = write_matrix(inst.phys.b);
  doc["u"] = write_matching(inst.old_matching);
  doc["c_new"] = write_matrix(inst.target.c);
  return doc.dump();
}

std::string dump_result(const SolveResult& result, bool feasible) {
  ordered_json doc;
  doc["algo"] = result.algo;
  doc["rewires"] = result.rewires;
  doc["solve_ms"] = result.solver_millis;
  doc["x"] = write_matching(result.matching);
  doc["feasible"] = feasible;
  return doc.dump();
}

std::string dump_metadata(const GeneratedInstance& gen) {
  ordered_json doc;
  doc["seed"] = gen.cfg.seed;
  doc["churn"] = gen.cfg.churn.to_double();
  doc["r"] = gen.r;
  doc["a_prime"] = gen.a_prime;
  doc["b_prime"] = gen.b_prime;
  doc["witness_rewires"] = gen.witness_rewires();
  doc["rng"] = kRngAlgorithm;
  return doc.dump();
}

}  // namespace ocs
