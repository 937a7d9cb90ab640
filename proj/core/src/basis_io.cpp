#include "chebzero/basis_io.hpp"

#include <fstream>

#include "chebzero/error.hpp"

namespace chebzero {

using nlohmann::json;

namespace {

json factor_to_json(const SetFactor& f) {
  switch (f.kind) {
    case FactorKind::kInterval: return {{"kind", "interval"}, {"a", f.a}, {"b", f.b}};
    case FactorKind::kCircle: return {{"kind", "circle"}, {"radius", f.radius}};
    case FactorKind::kDisk: return {{"kind", "disk"}, {"radius", f.radius}};
  }
  return {};
}

double number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  require(j.at(key).is_number(), std::string("set field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

SetFactor factor_from_json(const json& j) {
  require(j.is_object() && j.contains("kind"), "set config needs a 'kind'");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "interval") return SetFactor::interval(number(j, "a", -1.0), number(j, "b", 1.0));
  if (kind == "circle") return SetFactor::circle(number(j, "radius", 1.0));
  if (kind == "disk") return SetFactor::disk(number(j, "radius", 1.0));
  fail(ErrorKind::kUnsupported, "unsupported set kind '" + kind + "'");
}

}  // namespace

json set_to_json(const ModelSet& set) {
  if (set.dimension() == 1) return factor_to_json(set.factor(0));
  return {{"kind", "product"},
          {"factors", json::array({factor_to_json(set.factor(0)), factor_to_json(set.factor(1))})}};
}

ModelSet set_from_json(const json& config) {
  require(config.is_object() && config.contains("kind"), "set config needs a 'kind'");
  if (config.at("kind") == "product") {
    const auto& f = config.at("factors");
    require(f.is_array() && f.size() == 2, "product sets need exactly two factors");
    return ModelSet(factor_from_json(f[0]), factor_from_json(f[1]));
  }
  return ModelSet(factor_from_json(config));
}

json basis_to_json(const Basis& basis) {
  json elements = json::array();
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const auto& e = basis.element(j);
    json coef = json::array();
    for (cplx c : e.coefficients) coef.push_back({c.real(), c.imag()});
    elements.push_back({
        {"j", j + 1},
        {"k", e.leading.entries()},
        {"representation",
         e.representation == MonicPolynomial::Representation::kProduct ? "product" : "frame"},
        {"log_scale", e.log_scale},
        {"coefficients", std::move(coef)},
        {"sup_norm", basis.sup_norm(j)},
    });
  }
  return {{"format", "chebzero-basis"},
          {"version", 1},
          {"family", to_string(basis.family())},
          {"set", set_to_json(basis.set())},
          {"max_degree", basis.max_degree()},
          {"elements", std::move(elements)}};
}

Basis basis_from_json(const json& doc) {
  try {
    require(doc.value("format", "") == "chebzero-basis", "not a chebzero basis file");
    const ModelSet set = set_from_json(doc.at("set"));
    const int n = doc.at("max_degree").get<int>();
    std::vector<MonicPolynomial> elements;
    std::vector<double> norms;
    for (const auto& e : doc.at("elements")) {
      MonicPolynomial p;
      p.leading = MultiIndex(e.at("k").get<std::vector<int>>());
      p.representation = e.at("representation") == "product"
                             ? MonicPolynomial::Representation::kProduct
                             : MonicPolynomial::Representation::kFrame;
      p.log_scale = e.at("log_scale").get<double>();
      for (const auto& c : e.at("coefficients")) {
        p.coefficients.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
      }
      norms.push_back(e.at("sup_norm").get<double>());
      elements.push_back(std::move(p));
    }
    return Basis(set, basis_family_from_string(doc.at("family").get<std::string>()), n,
                 std::move(elements), std::move(norms));
  } catch (const json::exception& ex) {
    fail(ErrorKind::kInvalidArgument, std::string("malformed basis file: ") + ex.what());
  }
}

void write_basis(const Basis& basis, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::kInvalidArgument, "cannot write " + path.string());
  out << basis_to_json(basis).dump(1) << '\n';
}

Basis read_basis(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kMissingArtifact, "basis file not found: " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& ex) {
    fail(ErrorKind::kInvalidArgument, "cannot parse " + path.string() + ": " + ex.what());
  }
  return basis_from_json(doc);
}

}  // namespace chebzero
