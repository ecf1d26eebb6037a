#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "valvol/branch.hpp"
#include "valvol/degeneration.hpp"
#include "valvol/error.hpp"
#include "valvol/families.hpp"
#include "valvol/ideals.hpp"
#include "valvol/invariants.hpp"
#include "valvol/polynomial.hpp"
#include "valvol/valuation.hpp"

#include <cstdlib>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace valvol;

std::vector<PhiTerm> parse_phi_flag(const std::string& text) {
  std::vector<PhiTerm> terms;
  if (text.empty()) return terms;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    auto colon = piece.find(':');
    if (colon == std::string::npos)
      fail(ErrorCode::parse, "phi term '" + piece + "' must look like exponent:coefficient");
    long e = 0;
    try {
      size_t used = 0;
      e = std::stol(piece.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument("trailing junk");
    } catch (const std::exception&) {
      fail(ErrorCode::parse, "bad phi exponent in '" + piece + "'");
    }
    terms.push_back({e, parse_rat(piece.substr(colon + 1))});
  }
  return terms;
}

std::string phi_flag_str(const BranchParam& br) {
  std::string out;
  for (size_t i = 0; i < br.phi.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(br.phi[i].exp) + ":" + rat_str(br.phi[i].coeff);
  }
  return out;
}

std::string int_str(const Int& n) { return n.str(); }

json ray_json(const std::pair<Int, Int>& ray) {
  return json::array({int_str(ray.first), int_str(ray.second)});
}

json char_json(const PuiseuxChar& chr) {
  json arr = json::array();
  for (long e : chr.exponents) arr.push_back(e);
  return arr;
}

json branch_json(const BranchParam& br) { return json::parse(branch_to_json_text(br)); }

json boundary_json(const std::vector<std::pair<Poly, Rat>>& boundary) {
  json arr = json::array();
  for (const auto& [curve, coeff] : boundary) arr.push_back(json::array({curve.str(), rat_str(coeff)}));
  return arr;
}

void emit(const json& doc, const std::string& format) {
  if (format == "json") {
    std::cout << doc.dump() << "\n";
    return;
  }
  // text: one "path value" line per leaf, in sorted-key order
  std::vector<std::pair<std::string, std::string>> lines;
  std::function<void(const json&, const std::string&)> walk = [&](const json& node,
                                                                  const std::string& path) {
    if (node.is_object()) {
      for (auto it = node.begin(); it != node.end(); ++it)
        walk(it.value(), path.empty() ? it.key() : path + "." + it.key());
    } else if (node.is_array()) {
      for (size_t i = 0; i < node.size(); ++i) walk(node[i], path + "[" + std::to_string(i) + "]");
      if (node.empty()) lines.push_back({path, "[]"});
    } else if (node.is_string()) {
      lines.push_back({path, node.get<std::string>()});
    } else {
      lines.push_back({path, node.dump()});
    }
  };
  walk(doc, "");
  for (const auto& [path, value] : lines) std::cout << path << " " << value << "\n";
}

struct AnalyzeArgs {
  long a = 1;
  std::string phi, lambda;
  std::string format = "json";
};

int run_analyze(const AnalyzeArgs& args) {
  BranchParam br = normalize_branch(args.a, parse_phi_flag(args.phi));
  Rat lambda = parse_rat(args.lambda);
  PuiseuxChar chr = puiseux_characteristic(br);
  Rat lct = lct_unibranch(chr);
  NVolProfile profile = local_volume_closed(chr, lambda);
  MinimizeResult minimized = minimize_nvol(chr, lambda);
  bool agree = minimized.value == profile.value && minimized.ray == profile.ray;
  if (!agree) fail(ErrorCode::internal, "minimizer disagrees with the closed form");

  auto [w1, w2] = profile.unit_discrepancy_weight();
  json doc{
      {"command", "analyze"},
      {"inputs", {{"branch", branch_json(br)}, {"lambda", rat_str(lambda)}}},
      {"outputs",
       {{"case", case_tag_name(profile.tag)},
        {"characteristic", char_json(chr)},
        {"lct", rat_str(lct)},
        {"nvol", rat_str(profile.value)},
        {"ray", ray_json(profile.ray)},
        {"unit_discrepancy_weight", json::array({rat_str(w1), rat_str(w2)})}}},
      {"checks", {{"minimizer_matches_closed_form", agree}}},
  };
  emit(doc, args.format);
  std::cerr << "branch x=t^" << br.a << ", y=" << (br.phi.empty() ? "0" : phi_flag_str(br))
            << ": characteristic " << chr.str() << ", lct " << rat_str(lct) << ", nvol "
            << rat_str(profile.value) << " at ray (" << int_str(profile.ray.first) << ","
            << int_str(profile.ray.second) << "), case " << case_tag_name(profile.tag) << "\n";
  return 0;
}

int run_degenerate(const AnalyzeArgs& args) {
  BranchParam br = normalize_branch(args.a, parse_phi_flag(args.phi));
  Rat lambda = parse_rat(args.lambda);
  DegenerationResult result = kss_degeneration(br, lambda);
  Poly equation = result.tag == CaseTag::smooth ? implicitize(normalize_branch(1, {}))
                                                : implicitize(br);
  Poly rees = rees_family(
      equation, Weight({Rat(result.xi.first), Rat(result.xi.second)}));
  Rat nvol = local_volume_closed(puiseux_characteristic(br), lambda).value;

  json doc{
      {"command", "degenerate"},
      {"inputs", {{"branch", branch_json(br)}, {"lambda", rat_str(lambda)}}},
      {"outputs",
       {{"case", case_tag_name(result.tag)},
        {"xi", ray_json(result.xi)},
        {"f0", result.f0.str()},
        {"central_boundary", boundary_json(result.central_boundary)},
        {"kss", result.kss},
        {"rees", rees.str()},
        {"nvol", rat_str(nvol)},
        {"value_group_rank", result.value_group_rank}}},
      {"checks", {{"central_volume_matches_closed_form", true}}},
  };
  emit(doc, args.format);
  std::cerr << "degenerates to (A^2, " << (result.central_boundary.empty()
                                               ? std::string("0")
                                               : rat_str(result.central_boundary[0].second) + "*(" +
                                                     result.central_boundary[0].first.str() + ")")
            << "; xi=(" << int_str(result.xi.first) << "," << int_str(result.xi.second)
            << ")), f0 = " << result.f0.str() << ", K-semistable: " << (result.kss ? "yes" : "no")
            << "\n";
  return 0;
}

struct FamilyArgs {
  std::string file;
  std::string cutoff = "20";
  std::string format = "json";
};

int run_family(const FamilyArgs& args) {
  FamilySpec spec = load_family(args.file);
  Rat cutoff = parse_rat(args.cutoff);
  FamilyReport report = family_report(spec, cutoff);
  FlatFamilyResult flat = flat_ideal_family_check(spec, cutoff);

  json fibers = json::array();
  for (const auto& rec : report.fibers) {
    if (rec.excluded) {
      fibers.push_back({{"sample", rat_str(rec.sample)},
                        {"excluded", true},
                        {"reason", rec.exclusion_reason}});
      continue;
    }
    fibers.push_back({{"sample", rat_str(rec.sample)},
                      {"excluded", false},
                      {"characteristic", char_json(rec.chr)},
                      {"lct", rat_str(rec.lct)},
                      {"nvol", rat_str(rec.nvol)},
                      {"ray", ray_json(rec.ray)},
                      {"case", case_tag_name(rec.tag)},
                      {"kss", rec.kss}});
  }

  json jumps = json::array();
  for (const Rat& j : report.jumps) jumps.push_back(rat_str(j));
  json table = json::array();
  for (const auto& row : report.table) {
    json r = json::array();
    for (const Int& dim : row) r.push_back(int_str(dim));
    table.push_back(r);
  }

  json flat_json{{"ok", flat.ok}};
  if (flat.witness)
    flat_json["witness"] = {{"level", rat_str(flat.witness->level)},
                            {"sample_a", rat_str(flat.witness->sample_a)},
                            {"sample_b", rat_str(flat.witness->sample_b)},
                            {"dim_a", int_str(flat.witness->dim_a)},
                            {"dim_b", int_str(flat.witness->dim_b)}};

  json common;
  if (report.common_degeneration) {
    const auto& d = *report.common_degeneration;
    common = json{{"case", case_tag_name(d.tag)},
                  {"xi", ray_json(d.xi)},
                  {"f0", d.f0.str()},
                  {"central_boundary", boundary_json(d.central_boundary)},
                  {"kss", d.kss}};
  }

  json doc{
      {"command", "family"},
      {"inputs", {{"file", args.file}, {"cutoff", rat_str(cutoff)}, {"lambda", rat_str(spec.lambda)}}},
      {"fibers", fibers},
      {"verdicts",
       {{"characteristic_constant", report.char_constant},
        {"lct_constant", report.lct_constant},
        {"nvol_constant", report.nvol_constant},
        {"ray_constant", report.ray_constant},
        {"case_constant", report.tag_constant},
        {"kss_constant", report.kss_constant},
        {"graded_dims_constant", report.graded_constant}}},
      {"graded", {{"jumps", jumps}, {"table", table}}},
      {"flat", flat_json},
      {"common_degeneration", common},
  };
  emit(doc, args.format);

  size_t excluded = 0;
  for (const auto& rec : report.fibers) excluded += rec.excluded ? 1 : 0;
  std::cerr << "family over " << report.fibers.size() << " sample(s)";
  if (excluded) std::cerr << " (" << excluded << " excluded)";
  std::cerr << ": invariants " << (report.common_degeneration ? "constant" : "NOT constant")
            << ", graded dimensions " << (flat.ok ? "flat" : "NOT flat");
  if (flat.witness) std::cerr << " (first mismatch at level " << rat_str(flat.witness->level) << ")";
  std::cerr << "\n";
  return 0;
}

struct KssArgs {
  std::string orders;
  std::string coeff = "0";
  std::string format = "json";
};

int run_kss(const KssArgs& args) {
  auto comma = args.orders.find(',');
  if (comma == std::string::npos) fail(ErrorCode::parse, "--orders must look like a0,b0");
  long a0 = 0, b0 = 0;
  try {
    a0 = std::stol(args.orders.substr(0, comma));
    b0 = std::stol(args.orders.substr(comma + 1));
  } catch (const std::exception&) {
    fail(ErrorCode::parse, "bad orbifold orders '" + args.orders + "'");
  }
  Rat coeff = parse_rat(args.coeff);
  P1ConePair pair(a0, b0, {{"1", coeff}});
  bool verdict = kss_test(pair);
  Rat threshold = Rat(1) / a0 - Rat(1) / b0;

  json doc{
      {"command", "kss"},
      {"inputs", {{"orders", json::array({a0, b0})}, {"coeff", rat_str(coeff)}}},
      {"outputs", {{"kss", verdict}, {"threshold", rat_str(threshold)}}},
  };
  emit(doc, args.format);
  std::cerr << "(P^1, (1-1/" << a0 << "){0} + (1-1/" << b0 << "){inf} + " << rat_str(coeff)
            << "{1}) is " << (verdict ? "" : "NOT ") << "K-semistable (threshold "
            << rat_str(threshold) << ")\n";
  return 0;
}

// Randomized cross-checks of the library against its own independent
// routes; VALVOL_SEED fixes the corpus.
int run_selftest(const std::string& format) {
  unsigned long seed = 0;
  if (const char* env = std::getenv("VALVOL_SEED")) seed = std::strtoul(env, nullptr, 10);
  std::mt19937_64 gen(seed);
  auto rnd = [&](long n) { return static_cast<long>(gen() % static_cast<unsigned long>(n)); };

  json results;
  bool all_ok = true;
  auto record = [&](const std::string& name, bool ok) {
    results[name] = ok;
    all_ok = all_ok && ok;
    std::cerr << (ok ? "ok " : "FAIL ") << name << "\n";
  };

  {
    bool ok = true;
    for (int trial = 0; trial < 20 && ok; ++trial) {
      long a = 2 + rnd(4);
      long b = a + 1 + rnd(8);
      while (std::gcd(a, b) != 1) ++b;
      PuiseuxChar chr{{a, b}};
      Rat lct = Rat(1) / a + Rat(1) / b;
      Rat lambda = lct * rnd(97) / 97;
      MinimizeResult m = minimize_nvol(chr, lambda);
      NVolProfile p = local_volume_closed(chr, lambda);
      ok = m.value == p.value && m.ray == p.ray;
    }
    record("minimize_matches_closed_form", ok);
  }

  {
    bool ok = true;
    for (int trial = 0; trial < 20 && ok; ++trial) {
      Poly f(std::vector<std::string>{"x", "y"});
      for (int t = 0; t < 4; ++t)
        f += Poly::monomial({"x", "y"}, {unsigned(rnd(5)), unsigned(rnd(5))}, Rat(1 + rnd(9)));
      if (f.is_zero()) continue;
      Weight xi({Rat(1 + rnd(4)), Rat(1 + rnd(4))});
      Poly family = rees_family(f, xi);
      Poly at_one = family.substitute(2, Rat(1)).with_vars({"x", "y"});
      Poly at_zero = family.substitute(2, Rat(0)).with_vars({"x", "y"});
      ok = at_one == f && at_zero == initial_form(f, xi);
    }
    record("rees_family_endpoints", ok);
  }

  {
    bool ok = true;
    for (int trial = 0; trial < 20 && ok; ++trial) {
      std::vector<std::string> vars{"t1", "t2", "x1"};
      Poly f(vars);
      for (int t = 0; t < 4; ++t)
        f += Poly::monomial(vars, {unsigned(rnd(4)), unsigned(rnd(4)), unsigned(rnd(4))},
                            Rat(1 + rnd(9)));
      if (f.is_zero()) continue;
      Weight alpha({Rat(1 + rnd(3)), Rat(1 + rnd(3))});
      Weight beta({Rat(1 + rnd(5))});
      ChainValues chain = degeneration_chain(f, 2, alpha, beta);
      ok = chain.low <= chain.mid && (!chain.high || chain.mid <= *chain.high);
      if (ok && chain.high) {
        Rat bound = stabilization_bound(f, alpha);
        ChainValues far = degeneration_chain(f, 2, alpha, Weight({bound + 1}));
        ok = far.mid == *far.high;
      }
    }
    record("degeneration_chain_bounds", ok);
  }

  {
    bool ok = true;
    for (int trial = 0; trial < 10 && ok; ++trial) {
      long a = 2 + rnd(3);
      long b = a + 1 + rnd(6);
      while (std::gcd(a, b) != 1) ++b;
      std::vector<PhiTerm> phi{{b, Rat(1)}};
      if (rnd(2)) phi.push_back({b + 1 + rnd(3), Rat(1 + rnd(5))});
      BranchParam br = normalize_branch(a, phi);
      Weight w({Rat(1 + rnd(6)), Rat(1 + rnd(6))});
      MonomialValuation mv({"x", "y"}, w);
      ok = eval_on_branch(puiseux_characteristic(br), w) == *mv.eval(implicitize(br));
    }
    record("branch_value_matches_equation", ok);
  }

  {
    bool ok = true;
    for (long mu : {1L, 2L, 3L}) {
      MonomialValuation mv({"x", "y"}, Weight({Rat(mu), Rat(mu + 1)}));
      Rat err = volume_estimate(mv, 100) - volume(mv);
      if (err < 0) err = -err;
      ok = ok && err <= volume_estimate_error_bound(mv, 100);
    }
    record("volume_estimator_within_bound", ok);
  }

  json doc{{"command", "selftest"}, {"seed", seed}, {"results", results}, {"ok", all_ok}};
  emit(doc, format);
  std::cerr << (all_ok ? "selftest passed" : "selftest FAILED") << "\n";
  return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"valuation invariants of unibranch plane-curve singularities"};
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  CLI::App* analyze = app.add_subcommand("analyze", "characteristic, lct and normalized volume");
  analyze->add_option("--a", analyze_args.a, "parametrization order of x = t^a")->required();
  analyze->add_option("--phi", analyze_args.phi, "terms of y = phi(t), e.g. 3:1,4:1/2");
  analyze->add_option("--lambda", analyze_args.lambda, "boundary coefficient p/q")->required();
  analyze->add_option("--format", analyze_args.format, "json|text")
      ->check(CLI::IsMember({"json", "text"}));

  AnalyzeArgs degenerate_args;
  CLI::App* degenerate = app.add_subcommand("degenerate", "K-semistable central fiber");
  degenerate->add_option("--a", degenerate_args.a, "parametrization order of x = t^a")->required();
  degenerate->add_option("--phi", degenerate_args.phi, "terms of y = phi(t)");
  degenerate->add_option("--lambda", degenerate_args.lambda, "boundary coefficient p/q")->required();
  degenerate->add_option("--format", degenerate_args.format, "json|text")
      ->check(CLI::IsMember({"json", "text"}));

  FamilyArgs family_args;
  CLI::App* family = app.add_subcommand("family", "family report and flatness check");
  family->add_option("--file", family_args.file, "family spec file")->required();
  family->add_option("--cutoff", family_args.cutoff, "graded-dimension cutoff p/q");
  family->add_option("--format", family_args.format, "json|text")
      ->check(CLI::IsMember({"json", "text"}));

  KssArgs kss_args;
  CLI::App* kss = app.add_subcommand("kss", "Fujita-Li test on the marked projective line");
  kss->add_option("--orders", kss_args.orders, "orbifold orders a0,b0")->required();
  kss->add_option("--coeff", kss_args.coeff, "coefficient at the third point");
  kss->add_option("--format", kss_args.format, "json|text")
      ->check(CLI::IsMember({"json", "text"}));

  std::string selftest_format = "json";
  CLI::App* selftest = app.add_subcommand("selftest", "randomized cross-checks (VALVOL_SEED)");
  selftest->add_option("--format", selftest_format, "json|text")
      ->check(CLI::IsMember({"json", "text"}));

  CLI11_PARSE(app, argc, argv);

  std::string format = "json";
  try {
    if (analyze->parsed()) return run_analyze(analyze_args);
    if (degenerate->parsed()) return run_degenerate(degenerate_args);
    if (family->parsed()) return run_family(family_args);
    if (kss->parsed()) return run_kss(kss_args);
    if (selftest->parsed()) return run_selftest(selftest_format);
  } catch (const Error& e) {
    if (analyze->parsed()) format = analyze_args.format;
    if (degenerate->parsed()) format = degenerate_args.format;
    if (family->parsed()) format = family_args.format;
    if (kss->parsed()) format = kss_args.format;
    if (format == "json")
      std::cout << json{{"error", error_code_name(e.code)}, {"message", e.what()}}.dump() << "\n";
    else
      std::cout << "error " << error_code_name(e.code) << " " << e.what() << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cout << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
