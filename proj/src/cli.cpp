#include "prymkit/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>

#include "prymkit/json_io.hpp"

namespace prymkit {

namespace {

struct Options {
  std::string curve;
  std::string p_point;
  std::string q_point;
  std::vector<std::int64_t> primes;
  std::vector<std::int64_t> s_primes;
  long height_bound = kDefaultHeightBound;
  std::int64_t prime_budget = kDefaultPrimeBudget;
  double field_budget = static_cast<double>(kDefaultFieldBudget);
  std::optional<std::size_t> tuple;
  std::string f;
  std::string candidates;
  std::string form;
  std::int64_t prime = 0;
  std::string out;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw PreconditionError(path + ": " + e.what());
  }
}

CurvePoint parse_point(const std::string& text, const char* name) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw PreconditionError(std::string(name) + " must be given as x,y");
  }
  return CurvePoint::affine(Scalar(Rat::parse(text.substr(0, comma))),
                            Scalar(Rat::parse(text.substr(comma + 1))));
}

PlaceSet s_places(const Options& o) {
  return PlaceSet(std::set<std::int64_t>(o.s_primes.begin(), o.s_primes.end()));
}

std::uint64_t field_budget(const Options& o) {
  if (!(o.field_budget >= 1)) throw PreconditionError("field budget must be positive");
  return static_cast<std::uint64_t>(o.field_budget);
}

// Bare form JSON or a certify report carrying "form" (and "S").
BinaryForm load_form(const Options& o, PlaceSet& s) {
  const Json j = read_json(o.form);
  if (j.contains("form")) {
    if (o.s_primes.empty() && j.contains("S")) s = places_from_json(j.at("S"));
    return form_from_json(j.at("form"));
  }
  return form_from_json(j);
}

struct Outcome {
  Json report;
  int code = kExitOk;
};

Outcome cmd_covers(const Options& o) {
  const HyperCurve c = curve_from_json(read_json(o.curve));
  const CurvePoint p = parse_point(o.p_point, "--p-point");
  const CurvePoint q = parse_point(o.q_point, "--q-point");
  const auto tuples = beta_tuples(c, p, q);
  Json certs = Json::array();
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    const auto cert = reconstruct_h_F(tuples[i]);
    Json j = to_json(cert, verify_certificate(cert));
    j["index"] = i;
    certs.push_back(std::move(j));
  }
  return {Json{{"curve", to_json(c)},
               {"genus", c.genus()},
               {"count", tuples.size()},
               {"certificates", certs}}};
}

Outcome cmd_prym_check(const Options& o) {
  const HyperCurve c = curve_from_json(read_json(o.curve));
  const CurvePoint p = parse_point(o.p_point, "--p-point");
  const CurvePoint q = parse_point(o.q_point, "--q-point");
  if (o.primes.empty()) throw PreconditionError("--primes is required");
  const auto budget = field_budget(o);
  const auto tuples = beta_tuples(c, p, q);
  if (o.tuple && *o.tuple >= tuples.size()) throw PreconditionError("tuple index out of range");
  Json cells = Json::array();
  int code = kExitOk;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    if (o.tuple && *o.tuple != i) continue;
    const auto cert = reconstruct_h_F(tuples[i]);
    for (auto prime : o.primes) {
      if (prime < 3 || prime > o.prime_budget || !is_prime(prime)) {
        throw PreconditionError("prime " + std::to_string(prime) +
                                " is not an odd prime within the prime budget");
      }
      Json cell{{"tuple", i}, {"p", prime}};
      std::string reason;
      if (!prym_check_applicable(cert, static_cast<std::uint32_t>(prime), &reason)) {
        cell["status"] = "skipped (bad reduction)";
        cell["reason"] = reason;
      } else {
        const auto rep = prym_product_check(cert, static_cast<std::uint32_t>(prime), budget);
        cell["status"] = rep.holds() ? "matched" : "failed";
        cell["report"] = to_json(rep);
        if (!rep.holds()) code = kExitInvariant;
      }
      cells.push_back(std::move(cell));
    }
  }
  return {Json{{"genus", c.genus()}, {"cells", cells}}, code};
}

Outcome cmd_certify(const Options& o) {
  const HyperCurve c = curve_from_json(read_json(o.curve));
  const CurvePoint p = parse_point(o.p_point, "--p-point");
  const CurvePoint q = parse_point(o.q_point, "--q-point");
  return {to_json(integral_point_to_form(c, p, q, s_places(o), o.tuple.value_or(0)))};
}

Outcome cmd_check_bprime(const Options& o) {
  PlaceSet s = s_places(o);
  const BinaryForm f = load_form(o, s);
  const auto res = check_B_prime(f, s);
  Json j{{"accepted", res.accepted}};
  if (!res.accepted) j["reason"] = res.reason;
  j["form"] = to_json(f);
  j["disc"] = to_json(bf_disc(f));
  j["certificate"] = to_json(res.certificate);
  return {j};
}

Outcome cmd_classify(const Options& o) {
  PlaceSet s = s_places(o);
  const BinaryForm f = load_form(o, s);
  const auto t = reduction_classify(f, s, o.prime);
  Json j{{"p", o.prime}, {"S", to_json(s)}};
  if (t.kind == ReductionKind::kGoodIrreducible) {
    j["kind"] = "good";
  } else {
    j["kind"] = "split";
    j["m"] = t.m;
    j["n"] = t.n;
    j["C1"] = to_json(*t.c1);
    j["C2"] = to_json(*t.c2);
  }
  return {j};
}

IntegralitySpec integrality(const Options& o) {
  if (o.f.empty()) throw PreconditionError("--f is required");
  IntegralitySpec spec{RatFunc::parse(o.f), s_places(o), o.height_bound};
  validate(spec);
  return spec;
}

Outcome cmd_points(const Options& o) {
  const HyperCurve c = curve_from_json(read_json(o.curve));
  const auto spec = integrality(o);
  return {Json{{"f", spec.f.str()},
               {"S", to_json(spec.s)},
               {"height_bound", spec.height_bound},
               {"points", points_to_json(brute_force_points(c, spec))}}};
}

Outcome cmd_recover(const Options& o) {
  const HyperCurve c = curve_from_json(read_json(o.curve));
  const auto spec = integrality(o);
  const auto cands = candidates_from_json(read_json(o.candidates));
  Json j = to_json(recover_points(c, spec, cands));
  j["f"] = spec.f.str();
  j["S"] = to_json(spec.s);
  return {j};
}

Outcome cmd_compute_t(const Options& o) {
  const HyperCurve c = curve_from_json(read_json(o.curve));
  if (o.f.empty()) throw PreconditionError("--f is required");
  const auto f = RatFunc::parse(o.f);
  return {Json{{"f", f.str()}, {"S", to_json(s_places(o))}, {"T", to_json(compute_T(c, f, s_places(o)))}}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"prymkit: hyperelliptic covers, Prym checks, binary forms and integral points"};
  app.require_subcommand(1);
  Options o;

  auto curve_opts = [&o](CLI::App* s) {
    s->add_option("--curve", o.curve, "curve JSON file")->required();
  };
  auto point_opts = [&o](CLI::App* s) {
    s->add_option("--p-point", o.p_point, "P as x,y")->required();
    s->add_option("--q-point", o.q_point, "Q as x,y")->required();
  };
  auto s_opt = [&o](CLI::App* s) {
    s->add_option("--s-primes", o.s_primes, "finite primes of S")->delimiter(',');
  };
  auto out_opt = [&o](CLI::App* s) { s->add_option("--out", o.out, "output path"); };

  std::vector<std::pair<CLI::App*, std::function<Outcome(const Options&)>>> cmds;

  auto* covers = app.add_subcommand("covers", "all beta-tuples with their (h, F) certificates");
  curve_opts(covers);
  point_opts(covers);
  out_opt(covers);
  cmds.emplace_back(covers, cmd_covers);

  auto* prym = app.add_subcommand("prym-check", "Jacobian order identity per (tuple, prime)");
  curve_opts(prym);
  point_opts(prym);
  prym->add_option("--primes", o.primes, "primes to test")->delimiter(',')->required();
  prym->add_option("--tuple", o.tuple, "restrict to one tuple index");
  prym->add_option("--prime-budget", o.prime_budget, "largest prime accepted");
  prym->add_option("--field-budget", o.field_budget, "largest field size counted over");
  out_opt(prym);
  cmds.emplace_back(prym, cmd_prym_check);

  auto* certify = app.add_subcommand("certify", "B' form from a pair of points");
  curve_opts(certify);
  point_opts(certify);
  s_opt(certify);
  certify->add_option("--tuple", o.tuple, "tuple index (default 0)");
  out_opt(certify);
  cmds.emplace_back(certify, cmd_certify);

  auto* bprime = app.add_subcommand("check-bprime", "decide the B' condition for a form");
  bprime->add_option("--form", o.form, "form JSON or certify output")->required();
  s_opt(bprime);
  out_opt(bprime);
  cmds.emplace_back(bprime, cmd_check_bprime);

  auto* classify = app.add_subcommand("classify-reduction", "reduction type at a prime");
  classify->add_option("--form", o.form, "form JSON or certify output")->required();
  classify->add_option("--prime", o.prime, "prime outside S")->required();
  s_opt(classify);
  out_opt(classify);
  cmds.emplace_back(classify, cmd_classify);

  auto* points = app.add_subcommand("points", "bounded search for S-integral points");
  curve_opts(points);
  points->add_option("--f", o.f, "function of x, e.g. 1/x")->required();
  s_opt(points);
  points->add_option("--height-bound", o.height_bound, "numerator/denominator bound");
  out_opt(points);
  cmds.emplace_back(points, cmd_points);

  auto* recover = app.add_subcommand("recover", "S-integral points from candidate curves");
  curve_opts(recover);
  recover->add_option("--f", o.f, "function of x, e.g. 1/x")->required();
  recover->add_option("--candidates", o.candidates, "candidate set JSON")->required();
  s_opt(recover);
  recover->add_option("--height-bound", o.height_bound, "unused; accepted for symmetry");
  out_opt(recover);
  cmds.emplace_back(recover, cmd_recover);

  auto* tset = app.add_subcommand("compute-t", "bad places of (C, f) enlarged by S");
  curve_opts(tset);
  tset->add_option("--f", o.f, "function of x")->required();
  s_opt(tset);
  out_opt(tset);
  cmds.emplace_back(tset, cmd_compute_t);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }

  try {
    for (const auto& [sub, fn] : cmds) {
      if (!sub->parsed()) continue;
      const Outcome res = fn(o);
      const std::string text = res.report.dump(2) + "\n";
      if (o.out.empty()) {
        out << text;
      } else {
        std::ofstream file(o.out, std::ios::binary);
        if (!file) throw PreconditionError("cannot write " + o.out);
        file << text;
      }
      if (res.code == kExitInvariant) err << "error: a prym-check cell failed\n";
      return res.code;
    }
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitPrecondition;
}

}  // namespace prymkit
