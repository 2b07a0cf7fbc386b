// Command-line front end for the n-ary group engine.
//
// Verbs: classify, quer, power, decompose, verify-chain, reverse, hom-check,
// gallery-check, enumerate-q.  Reports go to stdout as JSON
// ({verb, system, params, results[], witnesses[], evidence}) or as plain text.
// Exit codes: 0 all checks pass, 1 check failure, 2 usage error, 3 sweep
// budget exceeded.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "polyadic/io.hpp"

using namespace polyadic;

namespace {

struct CommonOpts {
  std::string system;
  std::uint64_t budget = SweepOptions::default_budget();
  int jobs = 1;
  std::string strategy = "auto";
  std::string output = "text";

  SweepOptions sweep() const { return SweepOptions{budget, jobs}; }
  Strategy strat() const {
    if (strategy == "exhaustive") return Strategy::exhaustive;
    if (strategy == "sampled") return Strategy::sampled;
    return Strategy::auto_;
  }
  bool json() const { return output == "json"; }
};

void add_common(CLI::App* sub, CommonOpts& c, bool with_system = true) {
  if (with_system)
    sub->add_option("--system", c.system, "system: inline spec or JSON file")
        ->required();
  sub->add_option("--budget", c.budget, "max tuples per exhaustive sweep");
  sub->add_option("--jobs", c.jobs, "worker threads for sweeps")
      ->check(CLI::PositiveNumber);
  sub->add_option("--strategy", c.strategy, "sweep strategy")
      ->check(CLI::IsMember({"exhaustive", "sampled", "auto"}));
  sub->add_option("--output", c.output, "report format")
      ->check(CLI::IsMember({"json", "text"}));
}

int evidence_rank(const std::string& name) {
  if (name == "exhaustive") return 0;
  if (name == "sampled") return 1;
  return 2;  // asserted
}

/// Accumulates the cross-verb report schema.
struct Report {
  Json j;
  bool pass = true;
  std::string evidence = "exhaustive";

  explicit Report(const std::string& verb) {
    j["verb"] = verb;
    j["system"] = nullptr;
    j["params"] = Json::object();
    j["results"] = Json::array();
    j["witnesses"] = Json::array();
  }

  void system(const PolyadicSystem& sys) { j["system"] = system_to_json(sys); }

  template <class T>
  void param(const std::string& key, const T& value) {
    j["params"][key] = value;
  }

  void weaken(const std::string& ev) {
    if (evidence_rank(ev) > evidence_rank(evidence)) evidence = ev;
  }

  void add(const std::string& name, const CheckResult& r, bool affects_pass = true) {
    Json entry = check_result_to_json(r);
    entry["name"] = name;
    j["results"].push_back(entry);
    weaken(evidence_name(r.evidence));
    if (r.witness) {
      Json w = witness_to_json(*r.witness);
      w["context"] = name;
      j["witnesses"].push_back(w);
    }
    if (affects_pass) pass = pass && r.pass;
  }

  void add_raw(const std::string& name, Json entry) {
    entry["name"] = name;
    j["results"].push_back(std::move(entry));
  }

  int emit(const CommonOpts& c, const std::string& text) {
    j["pass"] = pass;
    j["evidence"] = evidence;
    if (c.json())
      std::cout << j.dump(2) << "\n";
    else
      std::cout << text;
    return pass ? 0 : 1;
  }
};

std::string polyad_str(const Polyad& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ", ";
    s += p[i].str();
  }
  return s + ")";
}

std::string cr_line(const CheckResult& r) {
  std::string s = r.pass ? "pass" : "FAIL";
  s += " (";
  s += evidence_name(r.evidence);
  s += ", " + std::to_string(r.checked) + " checked";
  if (r.skipped) s += ", " + std::to_string(r.skipped) + " skipped";
  s += ")";
  if (r.witness)
    s += "\n    witness " + polyad_str(r.witness->tuple) + ": " + r.witness->note;
  return s;
}

std::string arity_word(Idx n) {
  if (n == 2) return "binary";
  if (n == 3) return "ternary";
  return std::to_string(n) + "-ary";
}

// ---------------------------------------------------------------- classify --

int run_classify(const CommonOpts& c) {
  PolyadicSystem sys = parse_system_arg(c.system);
  ClassificationReport rep = classify(sys, c.sweep(), c.strat());

  Report out("classify");
  out.system(sys);
  out.param("system_arg", c.system);
  out.add_raw("classification", classification_to_json(rep));
  // Classification reports findings; a non-group input is a result, not a
  // failed check, so the verb itself always passes.
  for (const auto& r : {rep.associative, rep.quasigroup, rep.medial})
    out.weaken(evidence_name(r.evidence));

  std::string kind = rep.group.pass          ? "group"
                     : rep.quasigroup.pass   ? "quasigroup"
                     : rep.associative.pass  ? "semigroup"
                                             : "magma";
  std::string text = "system: " + sys.describe() + "\n";
  text += "summary: " + arity_word(rep.arity) + " " + kind;
  if (rep.idempotency.pass) text += ", idempotent";
  text += "\n";
  text += "associative:     " + cr_line(rep.associative) + "\n";
  for (std::size_t i = 0; i < rep.solvable.size(); ++i)
    text += "solvable[" + std::to_string(i) + "]:     " + cr_line(rep.solvable[i]) + "\n";
  text += "quasigroup:      " + cr_line(rep.quasigroup) + "\n";
  text += "group:           " + cr_line(rep.group) + "\n";
  text += "medial:          " + cr_line(rep.medial) + "\n";
  text += "commutative:     " + cr_line(rep.commutative) + "\n";
  text += "semicommutative: " + cr_line(rep.semicommutative) + "\n";
  for (std::size_t i = 0; i < rep.cancellative.size(); ++i)
    text +=
        "cancellative[" + std::to_string(i) + "]: " + cr_line(rep.cancellative[i]) + "\n";
  text += "idempotency:     " + cr_line(rep.idempotency) + "\n";
  if (rep.order) {
    text += "idempotents:     ";
    if (rep.idempotents.empty()) {
      text += "none";
    } else {
      for (std::size_t i = 0; i < rep.idempotents.size(); ++i) {
        if (i) text += ", ";
        text += rep.idempotents[i].str();
      }
    }
    text += "\n";
  }
  return out.emit(c, text);
}

// -------------------------------------------------------------------- quer --

int run_quer(const CommonOpts& c, const std::string& g_arg, Idx k_max) {
  PolyadicSystem sys = parse_system_arg(c.system);
  Element g = parse_element_arg(g_arg, sys);

  Report out("quer");
  out.system(sys);
  out.param("system_arg", c.system);
  out.param("g", element_to_json(g));
  out.param("kmax", k_max);

  Element quer = querelement(sys, g);
  Json powers = Json::array();
  std::string text = "system: " + sys.describe() + "\n";
  text += "g:    " + g.str() + "\n";
  text += "quer: " + quer.str() + "\n";
  for (Idx k = 0; k <= k_max; ++k) {
    Element qk = querpower(sys, g, k);
    powers.push_back(element_to_json(qk));
    text += "quer^" + std::to_string(k) + "(g) = " + qk.str() + "\n";
  }
  out.add_raw("querelement",
              Json{{"quer", element_to_json(quer)}, {"querpowers", powers}});

  CheckResult ident = verify_querpower_identity(sys, g, k_max);
  out.add("querpower_negative_power_identity", ident);
  text += "querpower/negative-power identity: " + cr_line(ident) + "\n";
  return out.emit(c, text);
}

// ------------------------------------------------------------------- power --

int run_power(const CommonOpts& c, const std::string& g_arg, Idx ell) {
  PolyadicSystem sys = parse_system_arg(c.system);
  Element g = parse_element_arg(g_arg, sys);
  Element value = power_signed(sys, g, ell);

  Report out("power");
  out.system(sys);
  out.param("system_arg", c.system);
  out.param("g", element_to_json(g));
  out.param("ell", ell);
  out.add_raw("power", Json{{"value", element_to_json(value)}});

  std::string text = "system: " + sys.describe() + "\n";
  text += "g^<" + std::to_string(ell) + "> = " + value.str() + "\n";
  return out.emit(c, text);
}

// --------------------------------------------------------------- decompose --

int run_decompose(const CommonOpts& c, const std::string& e_arg, Idx q) {
  PolyadicSystem sys = parse_system_arg(c.system);
  Element e = parse_element_arg(e_arg, sys);

  Report out("decompose");
  out.system(sys);
  out.param("system_arg", c.system);
  out.param("e", element_to_json(e));
  out.param("q", q);

  BinaryRetract r = build_retract(sys, e, c.sweep());
  ChainDecomposition d = build_chain(r, q);
  out.add_raw("decomposition", decomposition_to_json(d));

  ExtendedHomotopyMaps psi(d);
  CheckResult chain = psi.verify(c.sweep(), c.strat());
  out.add("chain_matches_mu", chain);
  CheckResult endo = check_quasi_endomorphism(d, c.sweep(), c.strat());
  out.add("quasi_endomorphism", endo);
  CheckResult fixed = check_quasi_fixed_point(d);
  out.add("quasi_fixed_point", fixed);
  CheckResult conj = check_quasi_conjugation(d, c.sweep(), c.strat());
  out.add("quasi_conjugation", conj);

  std::string text = "system: " + sys.describe() + "\n";
  text += "e = " + e.str() + ", q = " + std::to_string(q) + "\n";
  text += "ell_phi = " + std::to_string(d.ell_phi()) +
          ", ell_e = " + std::to_string(d.ell_e()) + "\n";
  text += "b_q = " + d.b().str() + ", a = phi_q(e) = " + d.a().str() + "\n";
  text += "chain matches mu:    " + cr_line(chain) + "\n";
  text += "quasi-endomorphism:  " + cr_line(endo) + "\n";
  text += "quasi-fixed point:   " + cr_line(fixed) + "\n";
  text += "quasi-conjugation:   " + cr_line(conj) + "\n";
  return out.emit(c, text);
}

// ------------------------------------------------------------ verify-chain --

int run_verify_chain(const CommonOpts& c, const std::string& e_arg, Idx q_max) {
  PolyadicSystem sys = parse_system_arg(c.system);

  std::vector<Element> identities;
  if (!e_arg.empty()) {
    identities.push_back(parse_element_arg(e_arg, sys));
  } else if (sys.is_finite()) {
    for (Idx g = 0; g < sys.order(); ++g) identities.push_back(Element::index(g));
  } else {
    identities = sys.carrier_sample();
  }

  Report out("verify-chain");
  out.system(sys);
  out.param("system_arg", c.system);
  out.param("qmax", q_max);

  std::string text = "system: " + sys.describe() + "\n";
  Json entries = Json::array();
  for (const Element& e : identities) {
    InvarianceReport rep = verify_invariance(sys, e, q_max, c.sweep(), c.strat());
    entries.push_back(invariance_to_json(rep));
    for (const auto& entry : rep.entries) {
      std::string name = "e=" + e.str() + ",q=" + std::to_string(entry.q.q);
      if (entry.skipped_entry()) {
        out.add_raw(name, Json{{"skipped", true}, {"skip_reason", entry.skip_reason}});
        text += name + ": skipped (" + entry.skip_reason + ")\n";
        continue;
      }
      out.add(name, entry.result);
      text += name + ": b_q = " + entry.b->str() + ", " + cr_line(entry.result) + "\n";
    }
  }
  out.j["params"]["per_identity"] = entries;
  text += std::string("overall: ") + (out.pass ? "pass" : "FAIL") + "\n";
  return out.emit(c, text);
}

// ----------------------------------------------------------------- reverse --

int run_reverse(const CommonOpts& c, const std::string& binary_path,
                const std::string& phi_path, Idx b, Idx n,
                const std::string& out_path) {
  PolyadicSystem binary_sys = load_system_file(binary_path);
  const CayleyTable* bt = binary_sys.table();
  if (!bt || binary_sys.arity() != 2)
    throw InvalidParams("--binary must be a cayley system of arity 2");

  std::ifstream in(phi_path);
  if (!in) throw InvalidParams("cannot open phi file \"" + phi_path + "\"");
  Json pj;
  try {
    in >> pj;
  } catch (const Json::exception& ex) {
    throw InvalidParams("cannot parse \"" + phi_path + "\": " + ex.what());
  }
  if (!pj.is_array()) throw InvalidParams("phi file must be a JSON index array");
  std::vector<Idx> phi;
  for (const auto& v : pj) phi.push_back(v.get<Idx>());

  PolyadicSystem built = reverse_construct(*bt, phi, b, n, c.sweep());

  Report out("reverse");
  out.system(built);
  out.param("binary", binary_path);
  out.param("phi", phi);
  out.param("b", b);
  out.param("n", n);
  out.add_raw("constructed",
              Json{{"arity", built.arity()}, {"order", built.order()}});

  if (!out_path.empty()) {
    std::ofstream os(out_path);
    if (!os) throw InvalidParams("cannot write \"" + out_path + "\"");
    os << system_to_json(built).dump(2) << "\n";
    out.param("out", out_path);
  }

  std::string text = "constructed: " + built.describe() + "\n";
  text += "b = " + std::to_string(b) + " equals the first polyadic power of e there\n";
  if (!out_path.empty()) text += "written to " + out_path + "\n";
  return out.emit(c, text);
}

// --------------------------------------------------------------- hom-check --

int run_hom_check(const CommonOpts& c, const std::string& source_arg,
                  const std::string& target_arg, const std::string& map_arg,
                  std::optional<Idx> q, const std::string& e_arg,
                  const std::string& e_target_arg) {
  PolyadicSystem src = parse_system_arg(source_arg);
  PolyadicSystem tgt = parse_system_arg(target_arg);
  CarrierMap f = parse_map_arg(map_arg);

  Report out("hom-check");
  out.system(src);
  out.param("source", source_arg);
  out.param("target", target_arg);
  out.param("map", f.describe());

  std::string text = "source: " + src.describe() + "\n";
  text += "target: " + tgt.describe() + "\n";
  text += "map:    " + f.describe() + "\n";

  if (!q) {
    CheckResult hom = check_homomorphism(f, src, tgt, c.sweep(), c.strat());
    out.add("homomorphism", hom);
    text += "homomorphism: " + cr_line(hom) + "\n";
    return out.emit(c, text);
  }

  if (e_arg.empty()) throw InvalidParams("--q needs --e (retract identity)");
  Element e = parse_element_arg(e_arg, src);
  Element et = e_target_arg.empty() ? f(e) : parse_element_arg(e_target_arg, tgt);
  out.param("q", *q);
  out.param("e", element_to_json(e));
  out.param("e_target", element_to_json(et));

  BinaryRetract rs = build_retract(src, e, c.sweep());
  BinaryRetract rt = build_retract(tgt, et, c.sweep());
  ChainDecomposition ds = build_chain(rs, *q);
  ChainDecomposition dt = build_chain(rt, *q);
  DeformedCompatibility comp =
      check_deformed_compatibility(f, ds, dt, c.sweep(), c.strat());

  out.add_raw("compatibility", compatibility_to_json(comp));
  out.add("binary", comp.binary);
  out.add("ff1_phi_intertwine", comp.ff1);
  out.add("ff2_b_preserved", comp.ff2);
  out.add("ff3_nary_hom", comp.ff3);

  text += "q = " + std::to_string(*q) + ", e = " + e.str() + " -> " + et.str() + "\n";
  text += "binary hom:        " + cr_line(comp.binary) + "\n";
  text += "ff1 (phi compat):  " + cr_line(comp.ff1) + "\n";
  text += "ff2 (b preserved): " + cr_line(comp.ff2) + "\n";
  text += "ff3 (n-ary hom):   " + cr_line(comp.ff3) + "\n";
  text += std::string("consistent with the implication (binary & ff1 & ff2 => ff3): ") +
          (comp.consistent_with_theorem() ? "yes" : "NO") + "\n";
  return out.emit(c, text);
}

// ----------------------------------------------------------- gallery-check --

int run_gallery_check(const CommonOpts& c, Idx k_max) {
  PolyadicSystem sys = parse_system_arg(c.system);
  GalleryReport rep = gallery_check(sys, k_max);

  Report out("gallery-check");
  out.system(sys);
  out.param("system_arg", c.system);
  out.param("kmax", k_max);
  std::string text = "system: " + sys.describe() + "\n";
  for (const auto& check : rep.checks) {
    Json cj = reference_report_to_json(check);
    out.add_raw(reference_kind_name(check.kind), cj);
    out.pass = out.pass && check.pass();
    out.weaken("sampled");
    text += std::string(reference_kind_name(check.kind)) + ": " +
            (check.pass() ? "pass" : "FAIL") + " (" + std::to_string(check.compared) +
            " compared, " + std::to_string(check.skipped) + " skipped)\n";
    for (const auto& note : check.notes) text += "    " + note + "\n";
  }
  return out.emit(c, text);
}

// ----------------------------------------------------------- enumerate-q ---

int run_enumerate_q(const CommonOpts& c, Idx n, Idx q_max) {
  std::vector<QValue> qs = enumerate_q(n, q_max);

  Report out("enumerate-q");
  out.param("n", n);
  out.param("qmax", q_max);
  Json list = Json::array();
  std::string text = "n = " + std::to_string(n) + ", q up to " + std::to_string(q_max) + "\n";
  for (const auto& qv : qs) {
    list.push_back(qvalue_to_json(qv));
    if (!qv.admissible) continue;
    text += "q = " + std::to_string(qv.q) + ": ell_phi = " + std::to_string(qv.ell_phi);
    if (qv.ell_e_integral) text += ", ell_e = " + std::to_string(qv.ell_e);
    text += "\n";
  }
  out.add_raw("q_values", Json{{"values", list}});
  return out.emit(c, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"n-ary group engine: classification, chain decomposition, homomorphisms"};
  app.require_subcommand(1);

  CommonOpts classify_o;
  auto* classify_cmd = app.add_subcommand("classify", "run the predicate battery");
  add_common(classify_cmd, classify_o);

  CommonOpts quer_o;
  std::string quer_g;
  Idx quer_kmax = 4;
  auto* quer_cmd = app.add_subcommand("quer", "querelement and querpowers");
  add_common(quer_cmd, quer_o);
  quer_cmd->add_option("--g", quer_g, "element")->required();
  quer_cmd->add_option("--kmax", quer_kmax, "max querpower iterations");

  CommonOpts power_o;
  std::string power_g;
  Idx power_ell = 1;
  auto* power_cmd = app.add_subcommand("power", "polyadic power g^<ell>");
  add_common(power_cmd, power_o);
  power_cmd->add_option("--g", power_g, "element")->required();
  power_cmd->add_option("--ell", power_ell, "exponent (may be negative)")->required();

  CommonOpts dec_o;
  std::string dec_e;
  Idx dec_q = 1;
  auto* dec_cmd = app.add_subcommand("decompose", "build the chain decomposition at q");
  add_common(dec_cmd, dec_o);
  dec_cmd->add_option("--e", dec_e, "retract identity")->required();
  dec_cmd->add_option("--q", dec_q, "deformation parameter");

  CommonOpts vc_o;
  std::string vc_e;
  Idx vc_qmax = 9;
  auto* vc_cmd =
      app.add_subcommand("verify-chain", "check the chain formula for admissible q");
  add_common(vc_cmd, vc_o);
  vc_cmd->add_option("--e", vc_e, "retract identity (default: all / sampled)");
  vc_cmd->add_option("--qmax", vc_qmax, "check admissible q up to this bound");

  CommonOpts rev_o;
  std::string rev_binary, rev_phi, rev_out;
  Idx rev_b = 0, rev_n = 3;
  auto* rev_cmd =
      app.add_subcommand("reverse", "build an n-ary group from (binary group, phi, b)");
  add_common(rev_cmd, rev_o, false);
  rev_cmd->add_option("--binary", rev_binary, "binary group file (cayley, n=2)")
      ->required();
  rev_cmd->add_option("--phi", rev_phi, "automorphism file (JSON index array)")
      ->required();
  rev_cmd->add_option("--b", rev_b, "distinguished element")->required();
  rev_cmd->add_option("--n", rev_n, "target arity")->required();
  rev_cmd->add_option("--out", rev_out, "write the constructed system here");

  CommonOpts hom_o;
  std::string hom_src, hom_tgt, hom_map, hom_e, hom_et;
  std::optional<Idx> hom_q;
  Idx hom_q_val = 1;
  auto* hom_cmd = app.add_subcommand("hom-check", "homomorphism / compatibility checks");
  add_common(hom_cmd, hom_o, false);
  hom_cmd->add_option("--source", hom_src, "source system")->required();
  hom_cmd->add_option("--target", hom_tgt, "target system")->required();
  hom_cmd->add_option("--map", hom_map, "map: identity, scale:x, power:s, or file")
      ->required();
  auto* hom_q_opt =
      hom_cmd->add_option("--q", hom_q_val, "also check deformed compatibility at q");
  hom_cmd->add_option("--e", hom_e, "source retract identity (with --q)");
  hom_cmd->add_option("--e-target", hom_et, "target identity (default: map of --e)");

  CommonOpts gal_o;
  Idx gal_kmax = 4;
  auto* gal_cmd =
      app.add_subcommand("gallery-check", "compare engine against closed-form references");
  add_common(gal_cmd, gal_o);
  gal_cmd->add_option("--kmax", gal_kmax, "power / querpower depth");

  CommonOpts enq_o;
  Idx enq_n = 3, enq_qmax = 9;
  auto* enq_cmd = app.add_subcommand("enumerate-q", "admissible deformation parameters");
  add_common(enq_cmd, enq_o, false);
  enq_cmd->add_option("--n", enq_n, "arity")->required();
  enq_cmd->add_option("--qmax", enq_qmax, "upper bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (classify_cmd->parsed()) return run_classify(classify_o);
    if (quer_cmd->parsed()) return run_quer(quer_o, quer_g, quer_kmax);
    if (power_cmd->parsed()) return run_power(power_o, power_g, power_ell);
    if (dec_cmd->parsed()) return run_decompose(dec_o, dec_e, dec_q);
    if (vc_cmd->parsed()) return run_verify_chain(vc_o, vc_e, vc_qmax);
    if (rev_cmd->parsed())
      return run_reverse(rev_o, rev_binary, rev_phi, rev_b, rev_n, rev_out);
    if (hom_cmd->parsed()) {
      if (hom_q_opt->count() > 0) hom_q = hom_q_val;
      return run_hom_check(hom_o, hom_src, hom_tgt, hom_map, hom_q, hom_e, hom_et);
    }
    if (gal_cmd->parsed()) return run_gallery_check(gal_o, gal_kmax);
    if (enq_cmd->parsed()) return run_enumerate_q(enq_o, enq_n, enq_qmax);
  } catch (const SweepBudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const InvalidParams& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
