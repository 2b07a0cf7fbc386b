#include "polyadic/io.hpp"

#include <fstream>
#include <sstream>

namespace polyadic {

namespace {

Idx require_idx(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    throw InvalidParams(std::string("missing or non-integer field \"") + key + "\"");
  return j.at(key).get<Idx>();
}

std::vector<Idx> require_idx_array(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array())
    throw InvalidParams(std::string("missing or non-array field \"") + key + "\"");
  std::vector<Idx> out;
  out.reserve(j.at(key).size());
  for (const auto& v : j.at(key)) {
    if (!v.is_number_integer())
      throw InvalidParams(std::string("non-integer entry in \"") + key + "\"");
    out.push_back(v.get<Idx>());
  }
  return out;
}

/// Parses "k1=v1,k2=v2" into ordered pairs; duplicate keys rejected.
std::vector<std::pair<std::string, std::string>> parse_kv(const std::string& s) {
  std::vector<std::pair<std::string, std::string>> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw InvalidParams("bad parameter \"" + item + "\" (expected key=value)");
    std::string key = item.substr(0, eq);
    for (const auto& kv : out)
      if (kv.first == key) throw InvalidParams("duplicate parameter \"" + key + "\"");
    out.emplace_back(key, item.substr(eq + 1));
  }
  return out;
}

Idx to_idx(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  Idx v = 0;
  try {
    v = std::stoll(text, &pos);
  } catch (const std::exception&) {
    throw InvalidParams(what + ": \"" + text + "\" is not an integer");
  }
  if (pos != text.size())
    throw InvalidParams(what + ": \"" + text + "\" is not an integer");
  return v;
}

double to_double(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw InvalidParams(what + ": \"" + text + "\" is not a number");
  }
  if (pos != text.size())
    throw InvalidParams(what + ": \"" + text + "\" is not a number");
  return v;
}

bool to_bool(const std::string& text, const std::string& what) {
  if (text == "1" || text == "true" || text == "yes") return true;
  if (text == "0" || text == "false" || text == "no") return false;
  throw InvalidParams(what + ": \"" + text + "\" is not a boolean");
}

template <class T>
using KvHandler = void (*)(T&, const std::string&);

/// Builds a family spec from inline key=value parameters.
PolyadicSystem inline_family(const std::string& head, const std::string& params) {
  auto kvs = parse_kv(params);
  auto reject = [&](const std::string& key) {
    throw InvalidParams("unknown parameter \"" + key + "\" for " + head);
  };
  if (head == "derived" || head == "derived_modular") {
    DerivedModularSpec spec{0, 0, 0};
    bool have_m = false, have_n = false;
    for (const auto& [k, v] : kvs) {
      if (k == "m") {
        spec.m = to_idx(v, "m");
        have_m = true;
      } else if (k == "n") {
        spec.n = to_idx(v, "n");
        have_n = true;
      } else if (k == "c") {
        spec.c = to_idx(v, "c");
      } else {
        reject(k);
      }
    }
    if (!have_m || !have_n) throw InvalidParams(head + " needs m= and n=");
    return instantiate(spec);
  }
  if (head == "qadd") {
    QAddSpec spec;
    for (const auto& [k, v] : kvs) {
      if (k == "n")
        spec.n = to_idx(v, "n");
      else if (k == "hbar")
        spec.hbar = to_double(v, "hbar");
      else if (k == "complex")
        spec.allow_complex = to_bool(v, "complex");
      else if (k == "tol")
        spec.tol = to_double(v, "tol");
      else
        reject(k);
    }
    return instantiate(spec);
  }
  if (head == "qprod") {
    QProdSpec spec;
    for (const auto& [k, v] : kvs) {
      if (k == "hbar")
        spec.hbar = to_double(v, "hbar");
      else if (k == "tol")
        spec.tol = to_double(v, "tol");
      else
        reject(k);
    }
    return instantiate(spec);
  }
  if (head == "copula") {
    CopulaSpec spec;
    for (const auto& [k, v] : kvs) {
      if (k == "tol")
        spec.tol = to_double(v, "tol");
      else
        reject(k);
    }
    return instantiate(spec);
  }
  throw InvalidParams("unknown system family \"" + head + "\"");
}

}  // namespace

Json element_to_json(const Element& g) {
  if (g.is_index()) return Json(g.idx());
  Scalar z = g.scalar();
  if (z.imag() == 0.0) return Json(z.real());
  return Json::array({z.real(), z.imag()});
}

Element element_from_json(const Json& j, bool finite_carrier) {
  if (finite_carrier) {
    if (!j.is_number_integer())
      throw InvalidParams("finite-carrier element must be an integer index");
    return Element::index(j.get<Idx>());
  }
  if (j.is_number()) return Element::real(j.get<double>());
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Element::complex(j[0].get<double>(), j[1].get<double>());
  throw InvalidParams("element must be a number or a [re, im] pair");
}

Element parse_element_arg(const std::string& text, const PolyadicSystem& sys) {
  if (sys.is_finite()) {
    Element g = Element::index(to_idx(text, "element"));
    sys.require_in_domain(g);
    return g;
  }
  Element g = Element::real(to_double(text, "element"));
  sys.require_in_domain(g);
  return g;
}

Json system_to_json(const PolyadicSystem& sys) {
  if (const auto* d = sys.derived())
    return Json{{"kind", "derived_modular"}, {"m", d->m}, {"n", d->n}, {"c", d->c}};
  if (const auto* bc = sys.binary_center()) {
    return Json{{"kind", "closed_form"},
                {"family", "binary_center"},
                {"params", Json{{"m", bc->m},
                                {"n", sys.arity()},
                                {"binary", bc->binary},
                                {"c", bc->c}}}};
  }
  if (const auto* t = sys.table())
    return Json{{"kind", "cayley"}, {"n", t->n}, {"m", t->m}, {"table", t->entries}};
  const ClosedForm* f = sys.closed_form();
  if (!f) throw InternalError("system_to_json: unhandled representation");
  switch (f->family) {
    case Family::qadd:
      return Json{{"kind", "closed_form"},
                  {"family", "qadd"},
                  {"params", Json{{"n", f->n},
                                  {"hbar", f->hbar},
                                  {"complex", f->allow_complex},
                                  {"tol", f->tol}}}};
    case Family::copula:
      return Json{{"kind", "closed_form"},
                  {"family", "copula"},
                  {"params", Json{{"tol", f->tol}}}};
    case Family::qprod:
      return Json{{"kind", "closed_form"},
                  {"family", "qprod"},
                  {"params", Json{{"hbar", f->hbar}, {"tol", f->tol}}}};
  }
  throw InternalError("system_to_json: unhandled family");
}

PolyadicSystem system_from_json(const Json& j) {
  try {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
      throw InvalidParams("system JSON must be an object with a \"kind\" string");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "derived_modular")
      return PolyadicSystem(DerivedModular{require_idx(j, "m"), require_idx(j, "n"),
                                           j.contains("c") ? require_idx(j, "c") : 0});
    if (kind == "cayley") {
      CayleyTable t;
      t.n = require_idx(j, "n");
      t.m = require_idx(j, "m");
      t.entries = require_idx_array(j, "table");
      return PolyadicSystem(std::move(t));
    }
    if (kind == "closed_form") {
      if (!j.contains("family") || !j.at("family").is_string())
        throw InvalidParams("closed_form needs a \"family\" string");
      std::string family = j.at("family").get<std::string>();
      Json params = j.contains("params") ? j.at("params") : Json::object();
      if (!params.is_object()) throw InvalidParams("\"params\" must be an object");
      if (family == "qadd") {
        QAddSpec spec;
        spec.n = params.value("n", spec.n);
        spec.hbar = params.value("hbar", spec.hbar);
        spec.allow_complex = params.value("complex", spec.allow_complex);
        spec.tol = params.value("tol", spec.tol);
        return instantiate(spec);
      }
      if (family == "copula") {
        CopulaSpec spec;
        spec.tol = params.value("tol", spec.tol);
        return instantiate(spec);
      }
      if (family == "qprod") {
        QProdSpec spec;
        spec.hbar = params.value("hbar", spec.hbar);
        spec.tol = params.value("tol", spec.tol);
        return instantiate(spec);
      }
      if (family == "binary_center") {
        BinaryCenterSpec spec;
        spec.m = require_idx(params, "m");
        spec.n = params.value("n", spec.n);
        spec.binary = require_idx_array(params, "binary");
        spec.c = require_idx(params, "c");
        return instantiate(spec);
      }
      throw InvalidParams("unknown closed_form family \"" + family + "\"");
    }
    throw InvalidParams("unknown system kind \"" + kind + "\"");
  } catch (const Json::exception& ex) {
    throw InvalidParams(std::string("bad system JSON: ") + ex.what());
  }
}

PolyadicSystem load_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParams("cannot open system file \"" + path + "\"");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& ex) {
    throw InvalidParams("cannot parse \"" + path + "\": " + ex.what());
  }
  return system_from_json(j);
}

PolyadicSystem parse_system_arg(const std::string& arg) {
  auto colon = arg.find(':');
  std::string head = arg.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : arg.substr(colon + 1);
  if (head == "gallery") {
    if (rest.empty()) throw InvalidParams("gallery: needs a family name");
    return parse_system_arg(rest);
  }
  if (head == "derived" || head == "derived_modular" || head == "qadd" ||
      head == "qprod" || head == "copula")
    return inline_family(head, rest);
  return load_system_file(arg);
}

CarrierMap map_from_json(const Json& j) {
  try {
    if (j.is_array()) {
      std::vector<Idx> image;
      image.reserve(j.size());
      for (const auto& v : j) {
        if (!v.is_number_integer())
          throw InvalidParams("map array entries must be integer indices");
        image.push_back(v.get<Idx>());
      }
      return CarrierMap::table(std::move(image));
    }
    if (j.is_object() && j.contains("kind") && j.at("kind").is_string()) {
      std::string kind = j.at("kind").get<std::string>();
      if (kind == "identity") return CarrierMap::identity();
      if (kind == "scale") {
        const Json& l = j.at("lambda");
        if (l.is_number()) return CarrierMap::scale(Scalar(l.get<double>(), 0.0));
        if (l.is_array() && l.size() == 2)
          return CarrierMap::scale(Scalar(l[0].get<double>(), l[1].get<double>()));
        throw InvalidParams("scale map needs a numeric \"lambda\"");
      }
      if (kind == "power") return CarrierMap::power(j.at("s").get<double>());
      if (kind == "table") {
        std::vector<Idx> image;
        for (const auto& v : j.at("image")) image.push_back(v.get<Idx>());
        return CarrierMap::table(std::move(image));
      }
      throw InvalidParams("unknown map kind \"" + kind + "\"");
    }
    throw InvalidParams("map JSON must be an index array or a {\"kind\":...} object");
  } catch (const Json::exception& ex) {
    throw InvalidParams(std::string("bad map JSON: ") + ex.what());
  }
}

CarrierMap load_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParams("cannot open map file \"" + path + "\"");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& ex) {
    throw InvalidParams("cannot parse \"" + path + "\": " + ex.what());
  }
  return map_from_json(j);
}

CarrierMap parse_map_arg(const std::string& arg) {
  if (arg == "identity") return CarrierMap::identity();
  auto colon = arg.find(':');
  if (colon != std::string::npos) {
    std::string head = arg.substr(0, colon);
    std::string rest = arg.substr(colon + 1);
    if (head == "scale") return CarrierMap::scale(Scalar(to_double(rest, "lambda"), 0.0));
    if (head == "power") return CarrierMap::power(to_double(rest, "s"));
  }
  return load_map_file(arg);
}

Json witness_to_json(const Witness& w) {
  Json tuple = Json::array();
  for (const auto& g : w.tuple) tuple.push_back(element_to_json(g));
  return Json{{"tuple", tuple}, {"note", w.note}};
}

Json check_result_to_json(const CheckResult& r) {
  Json j{{"pass", r.pass},
         {"evidence", evidence_name(r.evidence)},
         {"checked", r.checked},
         {"skipped", r.skipped}};
  if (r.witness) j["witness"] = witness_to_json(*r.witness);
  return j;
}

Json classification_to_json(const ClassificationReport& rep) {
  Json solvable = Json::array();
  for (const auto& r : rep.solvable) solvable.push_back(check_result_to_json(r));
  Json cancellative = Json::array();
  for (const auto& r : rep.cancellative) cancellative.push_back(check_result_to_json(r));
  Json idempotents = Json::array();
  for (const auto& g : rep.idempotents) idempotents.push_back(element_to_json(g));
  Json j{{"arity", rep.arity},
         {"associative", check_result_to_json(rep.associative)},
         {"solvable", solvable},
         {"quasigroup", check_result_to_json(rep.quasigroup)},
         {"group", check_result_to_json(rep.group)},
         {"medial", check_result_to_json(rep.medial)},
         {"commutative", check_result_to_json(rep.commutative)},
         {"semicommutative", check_result_to_json(rep.semicommutative)},
         {"cancellative", cancellative},
         {"idempotency", check_result_to_json(rep.idempotency)},
         {"idempotents", idempotents}};
  j["order"] = rep.order ? Json(*rep.order) : Json(nullptr);
  return j;
}

Json qvalue_to_json(const QValue& q) {
  Json j{{"q", q.q},
         {"admissible", q.admissible},
         {"ell_e_integral", q.ell_e_integral}};
  j["ell_phi"] = q.admissible ? Json(q.ell_phi) : Json(nullptr);
  j["ell_e"] = q.ell_e_integral ? Json(q.ell_e) : Json(nullptr);
  return j;
}

Json chain_check_to_json(const ChainCheck& entry) {
  Json j{{"q", entry.q.q},
         {"ell_phi", entry.q.admissible ? Json(entry.q.ell_phi) : Json(nullptr)},
         {"ell_e", entry.q.ell_e_integral ? Json(entry.q.ell_e) : Json(nullptr)},
         {"pass", entry.result.pass},
         {"result", check_result_to_json(entry.result)}};
  j["b_q"] = entry.b ? element_to_json(*entry.b) : Json(nullptr);
  if (entry.result.witness) j["witness"] = witness_to_json(*entry.result.witness);
  if (entry.skipped_entry()) j["skip_reason"] = entry.skip_reason;
  return j;
}

Json invariance_to_json(const InvarianceReport& rep) {
  Json entries = Json::array();
  for (const auto& entry : rep.entries) entries.push_back(chain_check_to_json(entry));
  return Json{{"e", element_to_json(rep.e)},
              {"all_pass", rep.all_pass()},
              {"total_checked", rep.total_checked()},
              {"entries", entries}};
}

Json decomposition_to_json(const ChainDecomposition& d) {
  return Json{{"q", d.q()},
              {"ell_phi", d.ell_phi()},
              {"ell_e", d.ell_e()},
              {"e", element_to_json(d.retract().identity())},
              {"b_q", element_to_json(d.b())},
              {"a", element_to_json(d.a())}};
}

Json reference_report_to_json(const ReferenceReport& rep) {
  return Json{{"kind", reference_kind_name(rep.kind)},
              {"pass", rep.pass()},
              {"compared", rep.compared},
              {"mismatched", rep.mismatched},
              {"skipped", rep.skipped},
              {"notes", rep.notes}};
}

Json gallery_report_to_json(const GalleryReport& rep) {
  Json checks = Json::array();
  for (const auto& c : rep.checks) checks.push_back(reference_report_to_json(c));
  return Json{{"system", rep.system}, {"pass", rep.pass()}, {"checks", checks}};
}

Json compatibility_to_json(const DeformedCompatibility& rep) {
  return Json{{"binary", check_result_to_json(rep.binary)},
              {"ff1", check_result_to_json(rep.ff1)},
              {"ff2", check_result_to_json(rep.ff2)},
              {"ff3", check_result_to_json(rep.ff3)},
              {"premises_hold", rep.premises_hold()},
              {"consistent_with_theorem", rep.consistent_with_theorem()},
              {"pass", rep.binary.pass && rep.ff1.pass && rep.ff2.pass && rep.ff3.pass}};
}

}  // namespace polyadic
