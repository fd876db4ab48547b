#include "kd/report.hpp"

#include <limits>
#include <sstream>

namespace kd {

Json big_to_json(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

Json poly_to_json(const LaurentPoly& p, char var) {
  Json terms = Json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) terms.push_back(Json::array({it->first, big_to_json(it->second)}));
  return Json{{"text", p.to_string(var)}, {"terms", terms}};
}

Json counts_to_json(const Counts& c) {
  return Json{{"v", c.v}, {"e", c.e}, {"f", c.f}, {"k", c.k}, {"g", c.g}, {"n", c.n}};
}

Json quasi_trees_to_json(const QuasiTreeCounts& q) { return Json(q.s); }

Json determinant_to_json(const DeterminantReport& r) {
  Json methods = Json::object();
  auto put = [&](const char* name, const std::optional<BigInt>& v) {
    if (v) methods[name] = big_to_json(*v);
  };
  put("quasitree", r.quasitree);
  put("jones", r.jones_eval);
  put("charpoly", r.charpoly);
  put("treediff", r.tree_difference);
  return Json{{"value", big_to_json(r.value)}, {"methods", methods}, {"agree", true}};
}

Json coefficients_to_json(const CoefficientTable& t) {
  Json a = Json::array();
  Json local = Json::array();
  for (const auto& x : t.a) a.push_back(big_to_json(x));
  for (const auto& x : t.local) local.push_back(big_to_json(x));
  return Json{{"M", t.M},
              {"m", t.m},
              {"a", a},
              {"local", local},
              {"locality", t.locality_holds()},
              {"a0_closed_form", big_to_json(t.a0_closed_form)},
              {"a0_agrees", !t.a.empty() && t.a.front() == t.a0_closed_form},
              {"loopless", t.loopless}};
}

namespace {

bool is_poly(const Json& j) { return j.is_object() && j.size() == 2 && j.contains("text") && j.contains("terms"); }

std::string scalar(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void render(const Json& j, const std::string& indent, std::ostringstream& out) {
  for (const auto& [key, value] : j.items()) {
    if (key == "schema") continue;
    out << indent << key << ':';
    if (is_poly(value)) {
      out << ' ' << value["text"].get<std::string>() << '\n';
    } else if (value.is_object()) {
      out << '\n';
      render(value, indent + "  ", out);
    } else if (value.is_array() && std::all_of(value.begin(), value.end(), [](const Json& x) { return x.is_primitive(); })) {
      for (const auto& x : value) out << ' ' << scalar(x);
      out << '\n';
    } else if (value.is_array()) {
      out << '\n';
      for (const auto& x : value) {
        if (x.is_object()) {
          out << indent << "  -\n";
          render(x, indent + "    ", out);
        } else {
          out << indent << "  - " << x.dump() << '\n';
        }
      }
    } else {
      out << ' ' << scalar(value) << '\n';
    }
  }
}

}  // namespace

std::string render_plain(const Json& doc) {
  std::ostringstream out;
  render(doc, "", out);
  return out.str();
}

}  // namespace kd
