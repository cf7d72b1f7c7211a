// Copyright 2026 The icdkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <sstream>

#include "icdkit/cli.hpp"
#include "icdkit/io.hpp"
#include "support.hpp"

using namespace icd;

namespace {

const std::string kData = ICDKIT_TEST_DATA_DIR;

struct Outcome {
  int code;
  Json report;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  Json j;
  if (code == 0 && !out.str().empty() && out.str()[0] == '{') j = Json::parse(out.str());
  return {code, j, err.str()};
}

Json strip_time(Json j) {
  j.erase("wall_time");
  return j;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("algebra and element round trips") {
  Rng rng(1);
  for (const BlockAlgebra& a : testing::small_algebras()) {
    CHECK(algebra_from_json(to_json(a)) == a);
    const Element x = random_element(a, rng);
    CHECK(max_abs_diff(element_from_json(to_json(x)), x) == 0.0);
  }
  CHECK(complex_from_json(Json::parse("[1.5, -2]")) == Complex(1.5, -2));
  CHECK(complex_from_json(Json::parse("3")) == Complex(3, 0));
  CHECK_THROWS_AS(algebra_from_json(Json::parse(R"({"blocks": [0]})")), Error);
  CHECK_THROWS_AS(algebra_from_json(Json::parse(R"({"sizes": [2]})")), InputError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1, 2], [3]]")), InputError);
  CHECK_THROWS_AS(element_from_json(Json::parse(R"({"algebra": {"blocks": [2]}, "mats": [[[1]]]})")), Error);
}

TEST_CASE("morphism, state and family round trips") {
  Rng rng(2);
  const UMap f = random_cpu_map(make_algebra({1, 2}), matrix_algebra(2), rng);
  CHECK(max_abs_diff(morphism_from_json(to_json(f)), f) == 0.0);
  const Json kraus = Json::parse(R"({"dom": {"blocks": [2]}, "cod": {"blocks": [2]},
                                     "kraus": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]})");
  const UMap k = morphism_from_json(kraus);
  CHECK(is_cpu(k));
  CHECK(is_deterministic(k) == false);

  const StateOnAlgebra s = random_state(make_algebra({2, 1}), rng);
  CHECK(max_abs_diff(state_from_json(to_json(s)), s) == 0.0);

  const ExchangeableFamily fam =
      mixture_family({0.5, 0.5}, {random_state(diagonal_algebra(2), rng), random_state(diagonal_algebra(2), rng)},
                     {random_state(matrix_algebra(2), rng), random_state(matrix_algebra(2), rng)}, 3);
  const ExchangeableFamily back = family_from_json(to_json(fam));
  CHECK(back.base == fam.base);
  CHECK(back.side == fam.side);
  CHECK(back.max_degree == 3);
  for (int n = 0; n <= 3; ++n) CHECK(max_abs_diff(back.at(n), fam.at(n)) <= 1e-15);

  MixingMeasure mu;
  mu.atoms.push_back({1.0, random_state(diagonal_algebra(2), rng), random_state(matrix_algebra(2), rng)});
  const MixingMeasure mb = measure_from_json(to_json(mu), diagonal_algebra(2), matrix_algebra(2));
  REQUIRE(mb.atoms.size() == 1);
  CHECK(max_abs_diff(mb.atoms[0].psi, mu.atoms[0].psi) <= 1e-15);
  CHECK(max_abs_diff(mb.atoms[0].omega, mu.atoms[0].omega) <= 1e-15);
}

TEST_CASE("signatures from JSON") {
  const Json j = Json::parse(R"({
    "objects": {"A": {"blocks": [2]}, "B": {"blocks": [1, 1]}},
    "generators": {"m": {"dom": "A", "cod": "B",
                         "op_matrix": [[1, 0], [0, 0], [0, 0], [0, 1]]}}})");
  const Signature sig = signature_from_json(j);
  CHECK(sig.has_object("A"));
  CHECK(sig.generator("m").map.is_unital());
  CHECK(sig.generator("m").cod == Wires{"B"});
  const Json bad = Json::parse(R"({"objects": {"A": {"blocks": [2]}},
    "generators": {"m": {"dom": "A", "cod": "A", "op_matrix": [[1]]}}})");
  CHECK_THROWS_AS(signature_from_json(bad), Error);
}

TEST_CASE("load_json_arg reads inline text and files") {
  CHECK(load_json_arg(R"({"blocks": [3]})")["blocks"][0] == 3);
  CHECK(load_json_arg(kData + "/m4_omega.json").contains("op_matrix"));
  CHECK_THROWS_AS(load_json_arg(kData + "/missing.json"), InputError);
  CHECK_THROWS_AS(load_json_arg("{not json"), InputError);
}

}

TEST_SUITE("cli") {

TEST_CASE("digest") {
  CHECK(cli::fnv1a_hex("") == "cbf29ce484222325");
  CHECK(cli::fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("axioms") {
  const Outcome o = run_cli({"axioms", "--algebra", R"({"blocks":[2]})"});
  REQUIRE(o.code == 0);
  CHECK(o.report["command"] == "axioms");
  CHECK(o.report["verdicts"]["classical"] == false);
  CHECK(o.report["verdicts"]["laws_hold"] == true);
  for (const auto& [name, v] : o.report["residuals"].items())
    if (name != "classicality") CHECK(v.get<double>() <= 1e-12);
  CHECK(o.report["residuals"]["classicality"].get<double>() >= 1.0);
  const Outcome c = run_cli({"axioms", "--algebra", R"({"blocks":[1,1,1]})", "--with", R"({"blocks":[2]})"});
  CHECK(c.report["verdicts"]["classical"] == true);
}

TEST_CASE("classify") {
  // Transpose on M₂.
  const std::string t = R"({"dom":{"blocks":[2]},"cod":{"blocks":[2]},
    "op_matrix":[[1,0,0,0],[0,0,1,0],[0,1,0,0],[0,0,0,1]]})";
  const Outcome o = run_cli({"classify", "--morphism", t, "--seed", "7"});
  REQUIRE(o.code == 0);
  const Json& v = o.report["verdicts"];
  CHECK(v["selfadjoint"] == true);
  CHECK(v["unital"] == true);
  CHECK(v["cp"] == false);
  CHECK(v["positive"] == true);
  CHECK(v["deterministic"] == false);
  CHECK(v.contains("autocompatible"));
  CHECK(v["noninvasive"] == false);
  CHECK(o.report["residuals"]["choi_min_eigenvalue"].get<double>() == doctest::Approx(-1.0));
  CHECK(o.report["seed"] == 7);
}

TEST_CASE("as-equal on the M4 example") {
  const std::vector<std::string> base{"as-equal", "--omega", kData + "/m4_omega.json", "--phi", kData + "/m4_phi.json",
                                      "--psi", kData + "/m4_psi.json"};
  auto args = base;
  args.insert(args.end(), {"--mode", "symmetric"});
  const Outcome s = run_cli(args);
  REQUIRE(s.code == 0);
  CHECK(s.report["verdicts"]["symmetric"] == false);
  CHECK(s.report["verdicts"].size() == 1);

  const Outcome all = run_cli(base);
  REQUIRE(all.code == 0);
  CHECK(all.report["verdicts"]["left"] == true);
  CHECK(all.report["verdicts"]["right"] == true);
  CHECK(all.report["verdicts"]["both"] == true);
  CHECK(all.report["verdicts"]["symmetric"] == false);
  CHECK(all.report["residuals"]["right"].get<double>() <= 1e-12);

  auto with_tol = base;
  with_tol.insert(with_tol.end(), {"--tol", "1e-9", "--mode", "both"});
  CHECK(run_cli(with_tol).report["tol"] == 1e-9);
}

TEST_CASE("nullspace") {
  const Outcome o = run_cli({"nullspace", "--omega", kData + "/m4_omega.json", "--kind", "right"});
  REQUIRE(o.code == 0);
  CHECK(o.report["result"]["dimension"] == 8);
  CHECK(o.report["result"]["basis"].size() == 8);
  CHECK(o.report["verdicts"]["trivial"] == false);
  const Outcome s = run_cli({"nullspace", "--omega", kData + "/m4_omega.json", "--kind", "symmetric"});
  CHECK(s.report["result"]["dimension"] == 0);
}

TEST_CASE("diagram commands") {
  const std::string sig = R"({"objects": {"A": {"blocks": [2]}}, "generators": {}})";
  const Outcome e = run_cli({"diagram", "eval", "--sig", sig, "--term", "copy[A] ; (del[A] (x) id[A])"});
  REQUIRE(e.code == 0);
  CHECK(e.report["result"]["term"] == "copy[A] ; del[A] ⊗ id[A]");
  CHECK(e.report["result"]["cod"] == Json::array({"A"}));
  const Outcome q = run_cli({"diagram", "equal", "--sig", sig, "--term-a", "inv(copy[A])", "--term-b",
                             "copy[A] ; swap[A,A]"});
  REQUIRE(q.code == 0);
  CHECK(q.report["verdicts"]["equal"] == true);
  CHECK(q.report["verdicts"]["syntactically_equal"] == false);
  const Outcome n = run_cli({"diagram", "equal", "--signature", sig, "--lhs", "copy[A]", "--rhs", "copy[A] ; swap[A,A]"});
  CHECK(n.report["verdicts"]["equal"] == false);
  const Outcome bad = run_cli({"diagram", "eval", "--sig", sig, "--term", "copy[A] ; q"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("unknown identifier 'q' at 1:11") != std::string::npos);
}

TEST_CASE("definetti verify") {
  const Outcome o = run_cli({"definetti", "verify", "--family", kData + "/coin_family.json", "--degree", "2"});
  REQUIRE(o.code == 0);
  const Json& v = o.report["verdicts"];
  CHECK(v["exchangeable"] == true);
  CHECK(v["consistent"] == true);
  CHECK(v["moment_psd"] == true);
  CHECK(v["reconstructed"] == true);
  CHECK(o.report["residuals"]["extremality_residual"].get<double>() >= 0.01);
  const Json atoms = o.report["result"]["reconstruction"]["atoms"];
  REQUIRE(atoms.size() == 2);
  CHECK(o.report["result"]["reconstruction"]["rank_deficient"] == true);

  const std::string mu = R"({"atoms": [{"weight": 0.3, "psi": [[[0.2]], [[0.8]]]},
                                        {"weight": 0.7, "psi": [[[0.9]], [[0.1]]]}]})";
  const Outcome m = run_cli({"definetti", "verify", "--family", kData + "/coin_family.json", "--measure", mu});
  REQUIRE(m.code == 0);
  CHECK(m.report["verdicts"]["measure_reproduces"] == true);
  CHECK(run_cli({"definetti", "verify", "--family", kData + "/coin_family.json", "--degree", "3"}).code == 2);
}

TEST_CASE("power") {
  const Outcome f = run_cli({"power", "--family", kData + "/coin_family.json"});
  REQUIRE(f.code == 0);
  CHECK(f.report["verdicts"]["exchangeable"] == true);
  CHECK(f.report["verdicts"]["consistent"] == true);
  const std::string state = R"({"dom":{"blocks":[1]},"cod":{"blocks":[1,1]},"op_matrix":[[0.25,0.75]]})";
  const Outcome p = run_cli({"power", "--morphism", state, "--degree", "3"});
  REQUIRE(p.code == 0);
  CHECK(p.report["verdicts"]["exchangeable"] == true);
  CHECK(p.report["verdicts"]["cpu"] == true);
  CHECK(p.report["result"]["morphism"]["op_matrix"][0].size() == 8);
  CHECK(run_cli({"power"}).code == 2);
}

TEST_CASE("input errors exit with 2") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"bogus"}).code == 2);
  CHECK(run_cli({"axioms"}).code == 2);
  CHECK(run_cli({"axioms", "--algebra", "{\"blocks\": [2"}).code == 2);
  CHECK(run_cli({"axioms", "--algebra", R"({"blocks":[2]})", "--frobnicate"}).code == 2);
  CHECK(run_cli({"classify", "--morphism", R"({"dom":{"blocks":[2]},"cod":{"blocks":[2]},"op_matrix":[[1]]})"}).code == 2);
  CHECK(run_cli({"nullspace", "--omega", kData + "/m4_omega.json", "--kind", "sideways"}).code == 2);
  CHECK(run_cli({"as-equal", "--omega", kData + "/m4_omega.json", "--phi", kData + "/m4_omega.json", "--psi",
                 kData + "/m4_psi.json"}).code == 2);
  const Outcome help = run_cli({"--help"});
  CHECK(help.code == 0);
}

TEST_CASE("reports are deterministic apart from the wall time") {
  const std::vector<std::string> args{"classify", "--morphism", kData + "/m4_phi.json", "--seed", "3"};
  const Outcome a = run_cli(args), b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(strip_time(a.report) == strip_time(b.report));
  CHECK(a.report.contains("wall_time"));
  CHECK(a.report["inputs_digest"].get<std::string>().size() == 16);
  const Outcome c = run_cli({"classify", "--morphism", kData + "/m4_psi.json", "--seed", "3"});
  CHECK(c.report["inputs_digest"] != a.report["inputs_digest"]);
}

TEST_CASE("reports can go to a file") {
  const std::string path = "cli_report_test.json";
  std::ostringstream out, err;
  REQUIRE(cli::run({"--out", path, "axioms", "--algebra", R"({"blocks":[1,1]})"}, out, err) == 0);
  CHECK(out.str().empty());
  std::ifstream f(path);
  const Json j = Json::parse(f);
  CHECK(j["verdicts"]["classical"] == true);
  std::remove(path.c_str());
}

}
