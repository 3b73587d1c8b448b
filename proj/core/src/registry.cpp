#include "fracspec/registry.hpp"

#include "builtin_registry.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fracspec {

namespace {

using nlohmann::json;

Rational rational_from(const json& j, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(mpz_class(std::to_string(j.get<long long>())));
  throw ValidationError(where + ": expected a rational string such as \"3/2\"");
}

Polynomial polynomial_from(const json& j, const std::string& where) {
  if (!j.is_array()) throw ValidationError(where + ": expected an array of coefficients");
  std::vector<Rational> c;
  for (const auto& e : j) c.push_back(rational_from(e, where));
  return Polynomial(std::move(c));
}

ExactReal exact_from(const json& j, const std::string& where) {
  if (j.is_object()) {
    if (!j.contains("poly") || !j.contains("interval") || !j["interval"].is_array() || j["interval"].size() != 2) {
      throw ValidationError(where + ": algebraic values need \"poly\" and a two-element \"interval\"");
    }
    return ExactReal::root_of(polynomial_from(j["poly"], where), rational_from(j["interval"][0], where),
                              rational_from(j["interval"][1], where));
  }
  return ExactReal(rational_from(j, where));
}

std::vector<ExactReal> exact_list(const json& j, const std::string& where) {
  std::vector<ExactReal> out;
  if (j.is_null()) return out;
  if (!j.is_array()) throw ValidationError(where + ": expected an array");
  for (const auto& e : j) out.push_back(exact_from(e, where));
  return out;
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ValidationError(where + ": missing field \"" + key + "\"");
  return j[key];
}

DecimationConfig config_from(const json& j) {
  DecimationConfig c;
  if (!j.contains("name") || !j["name"].is_string()) throw ValidationError("registry entry without a name");
  c.name = j["name"].get<std::string>();
  const std::string where = "registry entry '" + c.name + "'";
  c.fractal = j.value("fractal", c.name);
  c.convention = parse_convention(field(j, "convention", where).get<std::string>());
  c.r = RationalFunction(polynomial_from(field(j, "numerator", where), where),
                         polynomial_from(field(j, "denominator", where), where));
  c.x_r = rational_from(field(j, "x_r", where), where);
  c.exceptional = exact_list(j.value("exceptional", json::array()), where);
  const json& level0 = field(j, "level0", where);
  c.level0_neumann = exact_list(level0.value("neumann", json::array()), where);
  c.level0_dirichlet = exact_list(level0.value("dirichlet", json::array()), where);
  for (const auto& o : j.value("offspring", json::array())) {
    OffspringRule r;
    r.value = exact_from(field(o, "value", where), where);
    r.bc = parse_boundary(field(o, "bc", where).get<std::string>());
    r.first_level = o.value("from", 1);
    r.last_level = o.contains("to") && !o["to"].is_null() ? o["to"].get<int>() : -1;
    c.offspring.push_back(std::move(r));
  }
  const json& phi0 = field(j, "phi0", where);
  c.phi0_y0 = rational_from(field(phi0, "y0", where), where);
  c.phi0_eps = rational_from(field(phi0, "eps", where), where);
  return c;
}

json exact_json(const ExactReal& x) {
  if (x.is_rational()) return format_rational(x.rational());
  json poly = json::array();
  const Polynomial p = x.polynomial();
  for (const auto& q : p.coeffs()) poly.push_back(format_rational(q));
  auto iv = x.enclosure();
  return json{{"poly", poly}, {"interval", {format_rational(iv.lo), format_rational(iv.hi)}}};
}

}  // namespace

Registry Registry::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("registry is not valid JSON: ") + e.what());
  }
  if (!j.contains("fractals") || !j["fractals"].is_array()) throw ValidationError("registry needs a \"fractals\" array");
  Registry reg;
  try {
    for (const auto& e : j["fractals"]) {
      auto sys = std::make_shared<const DecimationSystem>(config_from(e));
      if (reg.contains(sys->name())) throw ValidationError("duplicate registry entry '" + sys->name() + "'");
      reg.systems_.push_back(std::move(sys));
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed registry entry: ") + e.what());
  }
  return reg;
}

Registry Registry::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read registry file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

const Registry& Registry::builtin() {
  static const Registry reg = from_json(builtin_registry_json());
  return reg;
}

Registry Registry::load_default() {
  if (const char* path = std::getenv(kRegistryEnv); path != nullptr && *path != '\0') return from_file(path);
  return builtin();
}

bool Registry::contains(const std::string& name) const {
  for (const auto& s : systems_) {
    if (s->name() == name) return true;
  }
  return false;
}

const DecimationSystem& Registry::get(const std::string& name) const {
  for (const auto& s : systems_) {
    if (s->name() == name) return *s;
  }
  std::string known;
  for (const auto& n : names()) known += (known.empty() ? "" : ", ") + n;
  throw ValidationError("unknown fractal '" + name + "' (registry has " + known + ")");
}

std::vector<std::string> Registry::names() const {
  std::vector<std::string> out;
  for (const auto& s : systems_) out.push_back(s->name());
  return out;
}

const std::string& builtin_registry_json() {
  static const std::string text = detail::kBuiltinRegistry;
  return text;
}

std::string exact_to_json(const ExactReal& x) { return exact_json(x).dump(); }

ExactReal exact_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception&) {
    return ExactReal(parse_rational(text));
  }
  return exact_from(j, "value");
}

}  // namespace fracspec
