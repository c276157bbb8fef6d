#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "prymkit/binary_form.hpp"
#include "prymkit/cli.hpp"
#include "prymkit/json_io.hpp"
#include "support.hpp"

using namespace prymkit;
using testsupport::R;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = PRYMKIT_FIXTURES;

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "prymkit_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string write(const std::string& name, const Json& j) {
  const auto path = (scratch() / name).string();
  std::ofstream(path) << j.dump(2) << "\n";
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::vector<std::string> kE1Pair{"--curve", fixture("e1_curve.json"), "--p-point", "1,1/12",
                                       "--q-point", "0,5/8"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

}  // namespace

TEST_CASE("usage errors and help") {
  CHECK(run({"--help"}).code == kExitOk);
  CHECK(run({}).code == kExitPrecondition);
  CHECK(run({"frobnicate"}).code == kExitPrecondition);
  CHECK(run({"covers"}).code == kExitPrecondition);
  CHECK(run(with({"covers"}, {"--curve", fixture("missing.json"), "--p-point", "1,1/12",
                              "--q-point", "0,5/8"}))
            .code == kExitPrecondition);
  CHECK(run(with({"covers"}, {"--curve", fixture("e1_curve.json"), "--p-point", "1",
                              "--q-point", "0,5/8"}))
            .code == kExitPrecondition);
}

TEST_CASE("covers") {
  const auto r = run(with({"covers"}, kE1Pair));
  REQUIRE(r.code == kExitOk);
  const auto j = Json::parse(r.out);
  CHECK(j["genus"] == 1);
  CHECK(j["count"] == 4);
  REQUIRE(j["certificates"].size() == 4);
  const auto c = curve_from_json(j["curve"]);
  for (const auto& cj : j["certificates"]) {
    const auto cert = certificate_from_json(c, cj);
    CHECK(verify_certificate(cert).all());
    auto stripped = cj;
    stripped.erase("index");  // added by the command, not part of the certificate
    CHECK(to_json(cert, verify_certificate(cert)) == stripped);
  }

  const auto w = run(with({"covers"}, {"--curve", fixture("e1_curve.json"), "--p-point",
                                       "-1/3,0", "--q-point", "0,5/8"}));
  CHECK(w.code == kExitPrecondition);
  CHECK(w.err.find("Weierstrass point not allowed") != std::string::npos);
  const auto off = run(with({"covers"}, {"--curve", fixture("e1_curve.json"), "--p-point", "1,1",
                                         "--q-point", "0,5/8"}));
  CHECK(off.code == kExitPrecondition);
}

TEST_CASE("prym-check") {
  const auto r = run(with({"prym-check"}, with(kE1Pair, {"--primes", "13,3", "--tuple", "0"})));
  REQUIRE(r.code == kExitOk);
  const auto j = Json::parse(r.out);
  REQUIRE(j["cells"].size() == 2);
  CHECK(j["cells"][0]["status"] == "matched");
  CHECK(j["cells"][0]["report"]["nonresidue"] == 2);
  CHECK(j["cells"][1]["status"].get<std::string>().rfind("skipped", 0) == 0);
  CHECK(run(with({"prym-check"}, with(kE1Pair, {"--primes", "4"}))).code == kExitPrecondition);
  CHECK(run(with({"prym-check"}, with(kE1Pair, {"--primes", "13", "--tuple", "9"}))).code ==
        kExitPrecondition);
}

TEST_CASE("certify, check-bprime and classify-reduction") {
  const auto r = run(with({"certify"}, kE1Pair));
  REQUIRE(r.code == kExitOk);
  const auto j = Json::parse(r.out);
  const auto path = write("e1_cert.json", j);
  const auto form = form_from_json(j["form"]);
  const auto s = places_from_json(j["S"]);
  CHECK(check_B_prime(form, s).accepted);
  CHECK(to_json(form_from_json(to_json(form))) == to_json(form));
  const auto cert = bprime_certificate_from_json(j["certificate"]);
  CHECK(to_json(cert) == j["certificate"]);

  const auto b = run({"check-bprime", "--form", path});
  REQUIRE(b.code == kExitOk);
  CHECK(Json::parse(b.out)["accepted"] == true);
  // A bare form without S is judged against S = {inf}.
  const auto bare = write("e1_form.json", j["form"]);
  const auto b2 = run({"check-bprime", "--form", bare});
  CHECK(b2.code == kExitOk);
  CHECK(Json::parse(b2.out)["accepted"] == false);

  const auto irr = run(with({"certify"}, {"--curve", fixture("e1_curve.json"), "--p-point",
                                          "7/24,5/8", "--q-point", "0,5/8"}));
  CHECK(irr.code == kExitPrecondition);
  CHECK(irr.err.find("requires rational beta-tuple") != std::string::npos);

  // The known p = 7 case.
  const auto inst =
      backsolve_instance({R("11/3"), Rat(-6), R("-10/3"), Rat(8), R("4/3")}, Rat(0), Rat(1));
  const auto curve = write("known_curve.json", to_json(inst.curve));
  const auto k = run({"certify", "--curve", curve, "--p-point", "-455," + inst.p.y.to_rat().str(),
                      "--q-point", "0," + inst.q.y.to_rat().str(), "--tuple",
                      std::to_string(inst.tuple_index)});
  REQUIRE(k.code == kExitOk);
  const auto kj = Json::parse(k.out);
  CHECK(kj["cases"].size() == 1);
  const auto kpath = write("known_cert.json", kj);
  const auto red = run({"classify-reduction", "--form", kpath, "--prime", "7"});
  REQUIRE(red.code == kExitOk);
  const auto rj = Json::parse(red.out);
  CHECK(rj.dump().find("split") != std::string::npos);
  CHECK(run({"classify-reduction", "--form", kpath, "--prime", "2"}).code == kExitPrecondition);
}

TEST_CASE("points, recover and compute-t") {
  const auto p = run({"points", "--curve", fixture("g2_curve.json"), "--f", "1/x"});
  REQUIRE(p.code == kExitOk);
  CHECK(Json::parse(p.out)["points"].size() == 3);

  const auto e = run({"recover", "--curve", fixture("g2_curve.json"), "--f", "1/x",
                      "--candidates", fixture("empty_candidates.json")});
  REQUIRE(e.code == kExitOk);
  const auto ej = Json::parse(e.out);
  CHECK(ej["Q"] == to_json(CurvePoint::affine(Rat(0), R("-35/48"))));
  for (const auto& pv : ej["provenance"]) CHECK(pv["via"] == "exceptional set");

  const auto g = run({"recover", "--curve", fixture("g2_curve.json"), "--f", "1/x",
                      "--candidates", fixture("g2_candidates.json")});
  REQUIRE(g.code == kExitOk);
  const auto pts = Json::parse(g.out)["points"];
  CHECK(std::find(pts.begin(), pts.end(), to_json(CurvePoint::affine(Rat(1), R("1/144")))) !=
        pts.end());

  const auto bad = run({"recover", "--curve", fixture("five_root_curve.json"), "--f", "x",
                        "--candidates", fixture("empty_candidates.json")});
  CHECK(bad.code == kExitPrecondition);
  CHECK(bad.err.find("enlarge base field required") != std::string::npos);

  const auto t = run({"compute-t", "--curve", fixture("e1_curve.json"), "--f", "x", "--s-primes",
                      "2,3"});
  REQUIRE(t.code == kExitOk);
  CHECK(Json::parse(t.out)["T"] == Json::parse("[2,3,5,7,11]"));
  CHECK(run({"compute-t", "--curve", fixture("e1_curve.json"), "--f", "7"}).code ==
        kExitPrecondition);
}

TEST_CASE("output is deterministic and --out matches stdout") {
  const std::vector<std::vector<std::string>> cmds{
      with({"covers"}, kE1Pair),
      with({"prym-check"}, with(kE1Pair, {"--primes", "13,17,19"})),
      with({"certify"}, kE1Pair),
      {"points", "--curve", fixture("g2_curve.json"), "--f", "1/x", "--height-bound", "30"},
      {"compute-t", "--curve", fixture("g2_curve.json"), "--f", "1/x"},
  };
  for (const auto& cmd : cmds) {
    const auto a = run(cmd);
    const auto b = run(cmd);
    REQUIRE(a.code == kExitOk);
    CHECK(a.out == b.out);
    const auto path = (scratch() / "out.json").string();
    const auto c = run(with(cmd, {"--out", path}));
    CHECK(c.code == kExitOk);
    CHECK(c.out.empty());
    CHECK(slurp(path) == a.out);
  }
}

TEST_CASE("candidate sets round-trip") {
  const auto j = Json::parse(slurp(fixture("g2_candidates.json")));
  const auto cs = candidates_from_json(j);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].genus() == 2);
  CHECK(candidates_from_json(candidates_to_json(2, cs))[0].rat_roots() == cs[0].rat_roots());
  CHECK(candidates_from_json(Json::parse(slurp(fixture("empty_candidates.json")))).empty());
}
