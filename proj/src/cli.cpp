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

#include "icdkit/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>

#include <CLI11.hpp>

#include "icdkit/definetti.hpp"
#include "icdkit/diagram.hpp"
#include "icdkit/io.hpp"
#include "icdkit/layout.hpp"
#include "icdkit/morphism.hpp"
#include "icdkit/nullspace.hpp"
#include "icdkit/power.hpp"

namespace icd::cli {

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

struct Report {
  std::string command;
  std::string digest_input;
  Json verdicts = Json::object();
  Json residuals = Json::object();
  Json result = Json::object();

  Json input(const std::string& name, const std::string& arg) {
    Json j = load_json_arg(arg);
    digest_input += name + "=" + j.dump() + "\n";
    return j;
  }
  void text(const std::string& name, const std::string& value) { digest_input += name + "=" + value + "\n"; }
};

struct Globals {
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::string out_path;
};

void cmd_axioms(Report& r, const Globals& g, const std::string& a_arg, const std::string& b_arg) {
  const BlockAlgebra a = algebra_from_json(r.input("algebra", a_arg));
  const BlockAlgebra b = b_arg.empty() ? a : algebra_from_json(r.input("with", b_arg));
  const AxiomReport ax = check_axioms(a, b, g.tol);
  r.residuals = {{"coassociativity", ax.coassociativity},   {"left_counit", ax.left_counit},
                 {"right_counit", ax.right_counit},         {"involution_copy", ax.involution_copy},
                 {"involution_discard", ax.involution_discard}, {"monoidal_copy", ax.monoidal_copy},
                 {"monoidal_discard", ax.monoidal_discard}, {"monoidal_unit", ax.monoidal_unit},
                 {"classicality", ax.classicality}};
  r.verdicts = {{"laws_hold", ax.max_law_residual() <= g.tol}, {"classical", ax.classical},
                {"commutative", is_commutative(a)}};
}

void cmd_classify(Report& r, const Globals& g, const std::string& f_arg) {
  const UMap f = morphism_from_json(r.input("morphism", f_arg));
  PositivityConfig pc;
  pc.seed = g.seed;
  pc.tol = g.tol;
  const PositivityResult pos = is_positive(f, pc);
  r.verdicts = {{"selfadjoint", is_selfadjoint(f, g.tol)},
                {"unital", f.is_unital(g.tol)},
                {"cp", is_completely_positive(f, g.tol)},
                {"positive", pos.verdict == PositivityVerdict::Positive},
                {"positive_certified", pos.certified},
                {"deterministic", is_deterministic(f, g.tol)},
                {"autocompatible", is_autocompatible(f, g.tol)},
                {"noninvasive", is_noninvasive(f, g.tol)}};
  r.residuals = {{"choi_min_eigenvalue", choi_min_eigenvalue(f)},
                 {"choi_hermiticity", choi_hermiticity_residual(f)},
                 {"positivity_min_value", pos.min_value}};
}

void cmd_as_equal(Report& r, const Globals& g, const std::string& o, const std::string& p, const std::string& q,
                  const std::string& mode_arg) {
  const UMap omega = morphism_from_json(r.input("omega", o));
  const UMap phi = morphism_from_json(r.input("phi", p));
  const UMap psi = morphism_from_json(r.input("psi", q));
  r.text("mode", mode_arg);
  std::vector<AsMode> modes;
  if (mode_arg == "all") {
    modes = {AsMode::Left, AsMode::Right, AsMode::Both, AsMode::Symmetric};
  } else {
    modes = {parse_as_mode(mode_arg)};
  }
  for (AsMode m : modes) {
    r.verdicts[to_string(m)] = as_equal(phi, psi, omega, m, g.tol);
    if (m == AsMode::Both) {
      r.residuals["both"] = std::max(as_residual(phi, psi, left_nullspace(omega)),
                                     as_residual(phi, psi, right_nullspace(omega)));
    } else {
      const NullspaceKind k = m == AsMode::Left    ? NullspaceKind::Left
                              : m == AsMode::Right ? NullspaceKind::Right
                                                   : NullspaceKind::Symmetric;
      r.residuals[to_string(m)] = as_residual(phi, psi, nullspace(omega, k));
    }
  }
}

void cmd_nullspace(Report& r, const std::string& o, const std::string& kind) {
  const UMap omega = morphism_from_json(r.input("omega", o));
  r.text("kind", kind);
  const NullspaceBasis n = nullspace(omega, parse_nullspace_kind(kind));
  r.result = to_json(n);
  r.verdicts = {{"trivial", n.dim() == 0}};
  r.residuals = {{"ideal", n.ideal_residual}};
}

Json wires_json(const Wires& w) { return Json(w); }

void cmd_diagram_eval(Report& r, const std::string& s, const std::string& term) {
  const Signature sig = signature_from_json(r.input("signature", s));
  r.text("term", term);
  const TermPtr t = parse(term, sig);
  const WireType ty = type_of(*t, sig);
  const UMap f = evaluate(*t, sig);
  r.result = {{"term", print(*t)}, {"dom", wires_json(ty.dom)}, {"cod", wires_json(ty.cod)}, {"morphism", to_json(f)}};
  r.verdicts = {{"cpu", is_cpu(f)}};
}

void cmd_diagram_equal(Report& r, const Globals& g, const std::string& s, const std::string& lhs,
                       const std::string& rhs) {
  const Signature sig = signature_from_json(r.input("signature", s));
  r.text("lhs", lhs);
  r.text("rhs", rhs);
  const TermPtr a = parse(lhs, sig);
  const TermPtr b = parse(rhs, sig);
  const WireType ta = type_of(*a, sig);
  const WireType tb = type_of(*b, sig);
  if (ta.dom != tb.dom || ta.cod != tb.cod) {
    r.verdicts = {{"equal", false}, {"same_type", false}};
    return;
  }
  const double d = max_abs_diff(evaluate(*a, sig), evaluate(*b, sig));
  r.verdicts = {{"equal", d <= g.tol}, {"same_type", true}, {"syntactically_equal", equal(*a, *b)}};
  r.residuals = {{"max_abs_diff", d}};
}

void cmd_definetti(Report& r, const Globals& g, const std::string& f, int degree, const std::string& m) {
  const ExchangeableFamily fam = family_from_json(r.input("family", f));
  r.text("degree", std::to_string(degree));
  const FamilyReport fr = family_check(fam, g.tol);
  r.verdicts["exchangeable"] = fr.exchangeable;
  r.verdicts["consistent"] = fr.consistent;
  r.residuals["permutation"] = fr.permutation_residual;
  r.residuals["consistency"] = fr.consistency_residual;
  const MomentMatrix mm = moment_matrix(fam, degree);
  r.verdicts["moment_psd"] = moment_psd_check(mm, g.tol);
  r.residuals["moment_min_eigenvalue"] = mm.min_eigenvalue();
  if (fam.max_degree >= 1) r.residuals["extremality_residual"] = extremality_identity_residual(fam, fam.max_degree - 1);
  if (!m.empty()) {
    const MixingMeasure mu = measure_from_json(r.input("measure", m), fam.base, fam.side);
    const double res = verify_measure(fam, mu);
    r.verdicts["measure_reproduces"] = res <= g.tol;
    r.residuals["measure"] = res;
  }
  if (is_commutative(fam.base) && fam.max_degree >= 1) {
    const int atoms = (fam.max_degree + 1) / 2;
    try {
      const Reconstruction rec = reconstruct(fam, atoms);
      r.result["reconstruction"] = to_json(rec.measure);
      r.result["reconstruction"]["rank_deficient"] = rec.rank_deficient;
      r.residuals["reconstruction"] = rec.moment_residual;
      r.verdicts["reconstructed"] = true;
    } catch (const Error& e) {
      r.verdicts["reconstructed"] = false;
      r.result["reconstruction_error"] = e.what();
    }
  }
}

void cmd_power(Report& r, const Globals& g, const std::string& f, const std::string& fam_arg, int degree) {
  if (!fam_arg.empty()) {
    const ExchangeableFamily fam = family_from_json(r.input("family", fam_arg));
    const FamilyReport fr = family_check(fam, g.tol);
    r.verdicts = {{"exchangeable", fr.exchangeable}, {"consistent", fr.consistent}};
    r.residuals = {{"permutation", fr.permutation_residual}, {"consistency", fr.consistency_residual}};
    return;
  }
  if (f.empty()) throw InputError("power needs --morphism or --family");
  const UMap phi = morphism_from_json(r.input("morphism", f));
  r.text("degree", std::to_string(degree));
  const UMap p = power(phi, degree);
  const double ex = degree >= 2 ? exchangeability_residual(p, phi.cod(), degree) : 0.0;
  r.result = {{"morphism", to_json(p)}};
  r.verdicts = {{"exchangeable", ex <= g.tol}, {"cpu", is_cpu(p, g.tol)}};
  r.residuals = {{"permutation", ex}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  CLI::App app{"icdkit: involutive Markov categories of finite-dimensional C*-algebras", "icdkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--tol", g.tol, "Numerical tolerance")->capture_default_str();
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--out", g.out_path, "Write the report to this file");

  std::string a_arg, b_arg, f_arg, o_arg, p_arg, q_arg, mode = "all", kind = "right", s_arg, term, lhs, rhs,
      fam_arg, m_arg;
  int degree = 1;

  auto* axioms = app.add_subcommand("axioms", "Check the copy/discard laws on an algebra");
  axioms->add_option("--algebra", a_arg, "Algebra JSON or file")->required();
  axioms->add_option("--with", b_arg, "Second algebra for the monoidal laws");

  auto* classify = app.add_subcommand("classify", "Classify a morphism");
  classify->add_option("--morphism", f_arg, "Morphism JSON or file")->required();

  auto* ase = app.add_subcommand("as-equal", "Almost-sure equality of two morphisms");
  ase->add_option("--omega", o_arg)->required();
  ase->add_option("--phi", p_arg)->required();
  ase->add_option("--psi", q_arg)->required();
  ase->add_option("--mode", mode, "left, right, both, symmetric or all")
      ->check(CLI::IsMember({"left", "right", "both", "symmetric", "all"}))
      ->capture_default_str();

  auto* ns = app.add_subcommand("nullspace", "Nullspace of a CPU map");
  ns->add_option("--omega", o_arg)->required();
  ns->add_option("--kind", kind)->check(CLI::IsMember({"left", "right", "symmetric"}))->capture_default_str();

  auto* diagram = app.add_subcommand("diagram", "String-diagram terms");
  diagram->require_subcommand(1);
  auto* deval = diagram->add_subcommand("eval", "Evaluate a term");
  deval->add_option("--signature,--sig", s_arg)->required();
  deval->add_option("--term", term)->required();
  auto* dequal = diagram->add_subcommand("equal", "Compare two terms semantically");
  dequal->add_option("--signature,--sig", s_arg)->required();
  dequal->add_option("--lhs,--term-a", lhs)->required();
  dequal->add_option("--rhs,--term-b", rhs)->required();

  auto* definetti = app.add_subcommand("definetti", "Exchangeable families");
  definetti->require_subcommand(1);
  auto* verify = definetti->add_subcommand("verify", "Check an exchangeable family");
  verify->add_option("--family", fam_arg)->required();
  verify->add_option("--degree", degree, "Moment matrix degree")->capture_default_str();
  verify->add_option("--measure", m_arg, "Candidate mixing measure");

  auto* pw = app.add_subcommand("power", "Product powers and family consistency");
  pw->add_option("--morphism", f_arg);
  pw->add_option("--family", fam_arg);
  pw->add_option("--degree", degree)->capture_default_str();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "icdkit: " << e.what() << "\n";
    return 2;
  }

  Report r;
  try {
    if (axioms->parsed()) {
      r.command = "axioms";
      cmd_axioms(r, g, a_arg, b_arg);
    } else if (classify->parsed()) {
      r.command = "classify";
      cmd_classify(r, g, f_arg);
    } else if (ase->parsed()) {
      r.command = "as-equal";
      cmd_as_equal(r, g, o_arg, p_arg, q_arg, mode);
    } else if (ns->parsed()) {
      r.command = "nullspace";
      cmd_nullspace(r, o_arg, kind);
    } else if (deval->parsed()) {
      r.command = "diagram eval";
      cmd_diagram_eval(r, s_arg, term);
    } else if (dequal->parsed()) {
      r.command = "diagram equal";
      cmd_diagram_equal(r, g, s_arg, lhs, rhs);
    } else if (verify->parsed()) {
      r.command = "definetti verify";
      cmd_definetti(r, g, fam_arg, degree, m_arg);
    } else if (pw->parsed()) {
      r.command = "power";
      cmd_power(r, g, f_arg, fam_arg, degree);
    }
  } catch (const std::exception& e) {
    err << "icdkit " << r.command << ": " << e.what() << "\n";
    return 2;
  }

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Json report = {{"command", r.command},
                 {"inputs_digest", fnv1a_hex(r.command + "\n" + r.digest_input)},
                 {"tol", g.tol},
                 {"verdicts", r.verdicts},
                 {"residuals", r.residuals},
                 {"seed", g.seed},
                 {"wall_time", wall}};
  if (!r.result.empty()) report["result"] = r.result;
  const std::string text = report.dump(2) + "\n";
  if (g.out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(g.out_path);
    if (!f) {
      err << "icdkit: cannot write '" << g.out_path << "'\n";
      return 2;
    }
    f << text;
  }
  return 0;
}

}  // namespace icd::cli
