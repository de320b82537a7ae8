#include <json.hpp>

#include "rmcalc/bipoly.hpp"
#include "rmcalc/errors.hpp"

namespace rmcalc {

std::string to_json(const BiPoly& L, std::string_view kind) {
  nlohmann::json j;
  j["u"] = L.u_label();
  j["v"] = L.v_label();
  if (!kind.empty()) j["kind"] = std::string(kind);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : L.coeff_matrix()) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& c : row) r.push_back({c.get_num().get_str(), c.get_den().get_str()});
    rows.push_back(std::move(r));
  }
  j["coeffs"] = std::move(rows);
  return j.dump();
}

BiPoly bipoly_from_json(std::string_view text, std::string* kind) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("polynomial JSON: ") + e.what());
  }
  try {
    std::string u = j.at("u").get<std::string>(), v = j.at("v").get<std::string>();
    if (kind) *kind = j.contains("kind") ? j["kind"].get<std::string>() : std::string();
    std::vector<std::vector<Rational>> rows;
    for (const auto& r : j.at("coeffs")) {
      std::vector<Rational> row;
      for (const auto& c : r) {
        Rational q;
        if (c.is_array()) {
          if (c.size() != 2) throw InvalidArgument("polynomial JSON: coefficient must be [num, den]");
          auto as_int = [](const nlohmann::json& x) {
            return x.is_string() ? Integer(x.get<std::string>()) : Integer(x.get<long>());
          };
          Integer den = as_int(c[1]);
          if (den == 0) throw InvalidArgument("polynomial JSON: zero denominator");
          q = Rational(as_int(c[0]), den);
          q.canonicalize();
        } else if (c.is_string()) {
          q = parse_rational(c.get<std::string>());
        } else if (c.is_number_integer()) {
          q = Rational(Integer(c.get<long>()));
        } else {
          throw InvalidArgument("polynomial JSON: unsupported coefficient entry");
        }
        row.push_back(q);
      }
      rows.push_back(std::move(row));
    }
    return BiPoly::from_coeffs(u, v, rows);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("polynomial JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InvalidArgument(std::string("polynomial JSON: bad integer: ") + e.what());
  }
}

}  // namespace rmcalc
