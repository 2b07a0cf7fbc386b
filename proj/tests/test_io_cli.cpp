#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "polyadic/heine.hpp"
#include "polyadic/io.hpp"

using namespace polyadic;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env + "\"" POLYADIC_CLI_PATH "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult res;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

/// Writes JSON to a unique file under the system temp dir; removed on scope exit.
struct TempJson {
  std::filesystem::path path;
  explicit TempJson(const std::string& stem, const Json& j) {
    path = std::filesystem::temp_directory_path() /
           (stem + "_" + std::to_string(::getpid()) + ".json");
    std::ofstream(path) << j.dump(2) << "\n";
  }
  ~TempJson() {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
  std::string str() const { return path.string(); }
};

Json cyclic_json(Idx m) {
  Json table = Json::array();
  for (Idx a = 0; a < m; ++a)
    for (Idx b = 0; b < m; ++b) table.push_back(mod(a + b, m));
  return Json{{"kind", "cayley"}, {"n", 2}, {"m", m}, {"table", table}};
}

}  // namespace

TEST_CASE("element serialization round-trips") {
  CHECK(element_to_json(Element::index(3)) == Json(3));
  CHECK(element_to_json(Element::real(0.25)) == Json(0.25));
  Json z = element_to_json(Element::complex(1.5, -2.0));
  REQUIRE(z.is_array());
  CHECK(z[0] == Json(1.5));
  CHECK(z[1] == Json(-2.0));

  CHECK(element_from_json(Json(3), true).idx() == 3);
  CHECK(element_from_json(Json(0.25), false).real_value() == 0.25);
  Element back = element_from_json(z, false);
  CHECK(back.scalar() == Scalar(1.5, -2.0));

  CHECK_THROWS_AS(element_from_json(Json("x"), false), InvalidParams);
  CHECK_THROWS_AS(element_from_json(Json(2.5), true), InvalidParams);
  CHECK_THROWS_AS(element_from_json(Json::array({1}), false), InvalidParams);
}

TEST_CASE("system serialization round-trips") {
  SUBCASE("derived modular") {
    PolyadicSystem sys(DerivedModular{5, 3, 2});
    Json j = system_to_json(sys);
    CHECK(j["kind"] == "derived_modular");
    PolyadicSystem back = system_from_json(j);
    CHECK(back.arity() == 3);
    CHECK(back.evaluate({Element::index(1), Element::index(2), Element::index(3)})
              .idx() == 3);
  }
  SUBCASE("cayley") {
    PolyadicSystem back = system_from_json(cyclic_json(4));
    CHECK(back.order() == 4);
    CHECK(system_to_json(back)["table"].size() == 16);
  }
  SUBCASE("closed form") {
    PolyadicSystem sys(ClosedForm{Family::qadd, 4, 0.25, true, 1e-8});
    Json j = system_to_json(sys);
    CHECK(j["family"] == "qadd");
    CHECK(j["params"]["n"] == 4);
    PolyadicSystem back = system_from_json(j);
    const ClosedForm* f = back.closed_form();
    REQUIRE(f != nullptr);
    CHECK(f->hbar == 0.25);
    CHECK(f->allow_complex);
    CHECK(f->tol == 1e-8);
  }
  SUBCASE("center-shifted closed form") {
    Json bin = cyclic_json(6);
    Json j{{"kind", "closed_form"},
           {"family", "binary_center"},
           {"params",
            Json{{"m", 6}, {"n", 4}, {"binary", bin["table"]}, {"c", 2}}}};
    PolyadicSystem sys = system_from_json(j);
    CHECK(sys.arity() == 4);
    Json round = system_to_json(sys);
    CHECK(round["family"] == "binary_center");
    CHECK(round["params"]["c"] == 2);
    PolyadicSystem again = system_from_json(round);
    Polyad args = {Element::index(1), Element::index(2), Element::index(3),
                   Element::index(4)};
    CHECK(again.evaluate(args) == sys.evaluate(args));
  }
  SUBCASE("malformed input") {
    CHECK_THROWS_AS(system_from_json(Json{{"kind", "nope"}}), InvalidParams);
    CHECK_THROWS_AS(system_from_json(Json{{"kind", "cayley"}, {"n", 2}, {"m", 2},
                                          {"table", Json::array({0, 1, 1})}}),
                    InvalidParams);
  }
}

TEST_CASE("inline system grammar") {
  PolyadicSystem dm = parse_system_arg("derived:m=5,n=3,c=2");
  CHECK(dm.order() == 5);
  CHECK(dm.arity() == 3);

  PolyadicSystem qa = parse_system_arg("qadd:n=4,hbar=0.25");
  CHECK(qa.arity() == 4);
  CHECK(qa.closed_form()->hbar == 0.25);

  CHECK(parse_system_arg("copula").arity() == 3);
  CHECK(parse_system_arg("gallery:qprod:hbar=0.5").closed_form()->family ==
        Family::qprod);

  // c defaults to zero
  CHECK(parse_system_arg("derived:m=7,n=4").evaluate(Polyad(4, Element::index(1)))
            .idx() == 4);

  CHECK_THROWS_AS(parse_system_arg("derived:m=5,n=3,m=6"), InvalidParams);
  CHECK_THROWS_AS(parse_system_arg("derived:m=5,n=3,x=1"), InvalidParams);
  CHECK_THROWS_AS(parse_system_arg("derived:m=5,n=3,c=9"), InvalidParams);
  CHECK_THROWS_AS(parse_system_arg("frobnicate:m=5"), InvalidParams);
  CHECK_THROWS_AS(parse_system_arg("derived:m=abc,n=3"), InvalidParams);
  CHECK_THROWS_AS(parse_system_arg("/no/such/file.json"), InvalidParams);
}

TEST_CASE("map parsing") {
  CarrierMap id = parse_map_arg("identity");
  CHECK(id(Element::index(7)).idx() == 7);
  CarrierMap sc = parse_map_arg("scale:2.5");
  CHECK(sc(Element::real(2.0)).real_value() == 5.0);
  CarrierMap pw = parse_map_arg("power:2");
  CHECK(pw(Element::real(3.0)).real_value() == doctest::Approx(9.0));

  CarrierMap tab = map_from_json(Json::array({1, 0, 2}));
  REQUIRE(tab.image_table() != nullptr);
  CHECK(tab(Element::index(0)).idx() == 1);

  CHECK(map_from_json(Json{{"kind", "scale"}, {"lambda", -1.0}})(Element::real(3.0))
            .real_value() == -3.0);
  CHECK_THROWS_AS(map_from_json(Json{{"kind", "nope"}}), InvalidParams);
  CHECK_THROWS_AS(parse_map_arg("scale:abc"), InvalidParams);

  TempJson file("map", Json::array({2, 1, 0}));
  CarrierMap loaded = parse_map_arg(file.str());
  CHECK(loaded(Element::index(0)).idx() == 2);
}

TEST_CASE("report serializers expose the verdict structure") {
  PolyadicSystem sys(DerivedModular{5, 3, 2});
  CheckResult assoc = check_associativity(sys);
  Json cr = check_result_to_json(assoc);
  CHECK(cr["pass"] == true);
  CHECK(cr["evidence"] == "exhaustive");
  CHECK(cr["checked"] == 3125);
  CHECK(cr["skipped"] == 0);
  CHECK_FALSE(cr.contains("witness"));

  Json cls = classification_to_json(classify(sys));
  CHECK(cls["arity"] == 3);
  CHECK(cls["order"] == 5);
  CHECK(cls["group"]["pass"] == true);
  CHECK(cls["idempotents"] == Json::array({4}));

  InvarianceReport inv = verify_invariance(sys, Element::index(0), 3);
  Json ij = invariance_to_json(inv);
  CHECK(ij["all_pass"] == true);
  REQUIRE(ij["entries"].size() == 2);
  CHECK(ij["entries"][0]["q"] == 1);
  CHECK(ij["entries"][1]["q"] == 3);
  CHECK(ij["entries"][1]["ell_phi"] == 2);
  CHECK(ij["entries"][1]["ell_e"] == 6);
  CHECK(ij["entries"][1]["b_q"] == 2);
  CHECK(ij["entries"][1]["pass"] == true);

  ChainDecomposition d = build_chain(build_retract(sys, Element::index(0)), 3);
  Json dj = decomposition_to_json(d);
  CHECK(dj["q"] == 3);
  CHECK(dj["ell_phi"] == 2);
  CHECK(dj["ell_e"] == 6);
  CHECK(dj["b_q"] == 2);
  CHECK(dj["a"] == 3);

  Json gj = gallery_report_to_json(gallery_check(sys, 3));
  CHECK(gj["pass"] == true);
  CHECK(gj["checks"].size() == 4);
}

TEST_CASE("cli: classify") {
  CliResult r = run_cli("classify --system derived:m=5,n=3,c=2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("ternary group") != std::string::npos);

  CliResult j = run_cli("classify --system derived:m=5,n=3,c=2 --output json");
  CHECK(j.exit_code == 0);
  Json rep = Json::parse(j.out);
  CHECK(rep["verb"] == "classify");
  CHECK(rep["pass"] == true);
  CHECK(rep["system"]["kind"] == "derived_modular");

  // classification is descriptive: a non-group still exits 0
  TempJson sub("sub", [] {
    Json t = Json::array();
    for (Idx a = 0; a < 3; ++a)
      for (Idx b = 0; b < 3; ++b) t.push_back(mod(a - b, 3));
    return Json{{"kind", "cayley"}, {"n", 2}, {"m", 3}, {"table", t}};
  }());
  CliResult s = run_cli("classify --system " + sub.str());
  CHECK(s.exit_code == 0);
  CHECK(s.out.find("binary quasigroup") != std::string::npos);
  CHECK(s.out.find("associative:     FAIL") != std::string::npos);
}

TEST_CASE("cli: error exit codes") {
  CHECK(run_cli("classify --system derived:m=0,n=3").exit_code == 2);
  CHECK(run_cli("classify --system no_such_file.json").exit_code == 2);
  CHECK(run_cli("classify").exit_code == 2);           // missing required option
  CHECK(run_cli("frobnicate").exit_code == 2);         // unknown verb
  CliResult budget = run_cli(
      "classify --system derived:m=7,n=5,c=1 --strategy exhaustive",
      "POLYADIC_BUDGET=100 ");
  CHECK(budget.exit_code == 3);
  CHECK(budget.out.find("budget") != std::string::npos);
  // q-addition has no retract: verify-chain fails honestly with exit 1
  CHECK(run_cli("verify-chain --system qadd:n=3,hbar=1 --e 1.0").exit_code == 1);
}

TEST_CASE("cli: quer and power") {
  CliResult r = run_cli("quer --system derived:m=5,n=3,c=2 --g 1 --output json");
  CHECK(r.exit_code == 0);
  Json rep = Json::parse(r.out);
  CHECK(rep["results"][0]["quer"] == 2);
  CHECK(rep["results"][0]["querpowers"] == Json::array({1, 2, 1, 2, 1}));

  CliResult p = run_cli("power --system qprod:hbar=0.5 --g 2.0 --ell -2 --output json");
  CHECK(p.exit_code == 0);
  Json prep = Json::parse(p.out);
  // ((-3) sqrt 2 + 6)^2
  double expect = std::pow(6.0 - 3.0 * std::sqrt(2.0), 2.0);
  CHECK(prep["results"][0]["value"].get<double>() == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("cli: decompose and verify-chain") {
  CliResult d = run_cli(
      "decompose --system derived:m=5,n=3,c=2 --e 0 --q 3 --output json");
  CHECK(d.exit_code == 0);
  Json rep = Json::parse(d.out);
  CHECK(rep["pass"] == true);
  bool saw_decomposition = false;
  for (const auto& entry : rep["results"])
    if (entry["name"] == "decomposition") {
      saw_decomposition = true;
      CHECK(entry["b_q"] == 2);
      CHECK(entry["ell_e"] == 6);
    }
  CHECK(saw_decomposition);

  CliResult v = run_cli("verify-chain --system derived:m=5,n=3,c=2 --qmax 9 --output json");
  CHECK(v.exit_code == 0);
  Json vrep = Json::parse(v.out);
  CHECK(vrep["pass"] == true);

  CliResult t = run_cli("verify-chain --system derived:m=5,n=3,c=2 --e 0 --qmax 9");
  CHECK(t.exit_code == 0);
  CHECK(t.out.find("e=0,q=9: b_q = 0") != std::string::npos);
  CHECK(t.out.find("overall: pass") != std::string::npos);
}

TEST_CASE("cli: reverse construction writes a loadable system") {
  TempJson z5("z5", cyclic_json(5));
  TempJson phi("phi", Json::array({0, 1, 2, 3, 4}));
  auto out_path = std::filesystem::temp_directory_path() /
                  ("rev_" + std::to_string(::getpid()) + ".json");
  CliResult r = run_cli("reverse --binary " + z5.str() + " --phi " + phi.str() +
                        " --b 2 --n 3 --out " + out_path.string());
  CHECK(r.exit_code == 0);
  PolyadicSystem built = load_system_file(out_path.string());
  PolyadicSystem expect(DerivedModular{5, 3, 2});
  Polyad args = {Element::index(4), Element::index(1), Element::index(3)};
  CHECK(built.evaluate(args) == expect.evaluate(args));
  std::filesystem::remove(out_path);

  // hypothesis failure surfaces as an engine error (exit 1)
  TempJson neg("neg", Json::array({0, 4, 3, 2, 1}));
  CliResult bad = run_cli("reverse --binary " + z5.str() + " --phi " + neg.str() +
                          " --b 1 --n 3");
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("phi(b)") != std::string::npos);
}

TEST_CASE("cli: hom-check with and without deformation") {
  CliResult plain = run_cli(
      "hom-check --source derived:m=4,n=3,c=2 --target derived:m=4,n=3,c=2 "
      "--map identity");
  CHECK(plain.exit_code == 0);

  TempJson triple("triple", Json::array({0, 3, 2, 1}));
  CliResult deformed = run_cli(
      "hom-check --source derived:m=4,n=3,c=2 --target derived:m=4,n=3,c=2 "
      "--map " + triple.str() + " --q 3 --e 0 --output json");
  CHECK(deformed.exit_code == 0);
  Json rep = Json::parse(deformed.out);
  CHECK(rep["pass"] == true);

  // --q without --e is rejected as a usage error
  CliResult no_e = run_cli(
      "hom-check --source derived:m=4,n=3,c=2 --target derived:m=4,n=3,c=2 "
      "--map identity --q 3");
  CHECK(no_e.exit_code == 2);
}

TEST_CASE("cli: gallery-check and enumerate-q") {
  CliResult g = run_cli("gallery-check --system gallery:qprod --output json");
  CHECK(g.exit_code == 0);
  Json grep_ = Json::parse(g.out);
  CHECK(grep_["pass"] == true);

  CliResult e = run_cli("enumerate-q --n 4 --qmax 9 --output json");
  CHECK(e.exit_code == 0);
  Json erep = Json::parse(e.out);
  std::vector<Idx> admissible;
  for (const auto& v : erep["results"][0]["values"])
    if (v["admissible"] == true) admissible.push_back(v["q"].get<Idx>());
  CHECK(admissible == std::vector<Idx>{1, 4, 7});

  CliResult text = run_cli("enumerate-q --n 3 --qmax 5");
  CHECK(text.exit_code == 0);
  CHECK(text.out.find("q = 5") != std::string::npos);
}
