#include "valvol/families.hpp"

#include "valvol/error.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

namespace valvol {

namespace {

using nlohmann::json;

Rat rat_field(const json& j, const std::string& name) {
  if (!j.is_string()) fail(ErrorCode::parse, "family field " + name + " must be a rational string");
  return parse_rat(j.get<std::string>());
}

} // namespace

FamilySpec parse_family_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::parse, std::string("family file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorCode::parse, "family file must be a JSON object");
  for (const char* field : {"param", "samples", "a", "phi", "lambda"})
    if (!doc.contains(field)) fail(ErrorCode::parse, std::string("family file lacks field ") + field);

  FamilySpec spec;
  if (!doc["param"].is_string() || doc["param"].get<std::string>().empty())
    fail(ErrorCode::parse, "family parameter must be a nonempty string");
  spec.param = doc["param"].get<std::string>();

  if (!doc["samples"].is_array() || doc["samples"].empty())
    fail(ErrorCode::parse, "family needs a nonempty samples array");
  for (const auto& s : doc["samples"]) spec.samples.push_back(rat_field(s, "samples[]"));

  if (!doc["a"].is_number_integer() || doc["a"].get<long>() < 1)
    fail(ErrorCode::parse, "family field a must be a positive integer");
  spec.a = doc["a"].get<long>();

  if (!doc["phi"].is_array()) fail(ErrorCode::parse, "family field phi must be an array");
  std::set<long> seen;
  for (const auto& entry : doc["phi"]) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_integer() ||
        !entry[1].is_string())
      fail(ErrorCode::parse, "phi entries must be [exponent, coefficient-expression]");
    long e = entry[0].get<long>();
    if (e < 1) fail(ErrorCode::parse, "phi exponents must be positive");
    if (!seen.insert(e).second) fail(ErrorCode::parse, "duplicate phi exponent " + std::to_string(e));
    Poly coeff = Poly::parse(entry[1].get<std::string>(), {spec.param});
    spec.phi.push_back({e, coeff});
  }

  spec.lambda = rat_field(doc["lambda"], "lambda");
  if (spec.lambda < 0) fail(ErrorCode::parse, "family lambda must be nonnegative");
  return spec;
}

FamilySpec load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::parse, "cannot open family file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_family_text(buffer.str());
}

FiberInstance instantiate_sample(const FamilySpec& spec, const Rat& sample) {
  std::vector<PhiTerm> terms;
  for (const auto& [e, coeff] : spec.phi) terms.push_back({e, coeff.eval({sample})});
  FiberInstance out{sample, std::nullopt, ""};
  try {
    out.branch = normalize_branch(spec.a, terms);
  } catch (const Error& err) {
    out.flag_reason = err.what();
  }
  return out;
}

namespace {

bool same_descriptor(const DegenerationResult& a, const DegenerationResult& b) {
  if (a.tag != b.tag || a.xi != b.xi || a.f0 != b.f0 || a.kss != b.kss) return false;
  if (a.central_boundary.size() != b.central_boundary.size()) return false;
  for (size_t i = 0; i < a.central_boundary.size(); ++i)
    if (a.central_boundary[i].first != b.central_boundary[i].first ||
        a.central_boundary[i].second != b.central_boundary[i].second)
      return false;
  return true;
}

} // namespace

FamilyReport family_report(const FamilySpec& spec, const Rat& cutoff) {
  if (cutoff < 0) fail(ErrorCode::domain, "cutoff must be nonnegative");
  if (spec.samples.empty()) fail(ErrorCode::domain, "family has no samples");

  FamilyReport report;
  report.cutoff = cutoff;
  std::vector<DegenerationResult> degenerations; // per included fiber
  for (const Rat& sample : spec.samples) {
    FiberInstance inst = instantiate_sample(spec, sample);
    FiberRecord rec;
    rec.sample = sample;
    if (!inst.branch) {
      rec.excluded = true;
      rec.exclusion_reason = inst.flag_reason;
      report.fibers.push_back(std::move(rec));
      continue;
    }
    rec.branch = *inst.branch;
    rec.chr = puiseux_characteristic(rec.branch);
    rec.lct = lct_unibranch(rec.chr);
    if (spec.lambda >= rec.lct)
      fail(ErrorCode::domain, "lambda outside klt range [0, " + rat_str(rec.lct) + ") at sample " +
                                  rat_str(sample));
    NVolProfile profile = local_volume_closed(rec.chr, spec.lambda);
    MinimizeResult minimized = minimize_nvol(rec.chr, spec.lambda);
    if (minimized.value != profile.value || minimized.ray != profile.ray)
      fail(ErrorCode::internal, "minimizer disagrees with the closed form at sample " + rat_str(sample));
    rec.nvol = profile.value;
    rec.ray = profile.ray;
    rec.tag = profile.tag;
    DegenerationResult degen = kss_degeneration(rec.branch, spec.lambda);
    rec.kss = degen.kss;
    MonomialValuation mv({"x", "y"}, Weight({Rat(rec.ray.first), Rat(rec.ray.second)}));
    rec.graded = graded_dims(mv, cutoff);
    degenerations.push_back(std::move(degen));
    report.fibers.push_back(std::move(rec));
  }

  std::vector<const FiberRecord*> included;
  for (const auto& rec : report.fibers)
    if (!rec.excluded) included.push_back(&rec);
  if (included.empty()) fail(ErrorCode::domain, "every sample of the family is excluded");

  auto all_equal = [&](auto&& get) {
    for (size_t i = 1; i < included.size(); ++i)
      if (get(*included[i]) != get(*included[0])) return false;
    return true;
  };
  report.char_constant = all_equal([](const FiberRecord& r) { return r.chr; });
  report.lct_constant = all_equal([](const FiberRecord& r) { return r.lct; });
  report.nvol_constant = all_equal([](const FiberRecord& r) { return r.nvol; });
  report.ray_constant = all_equal([](const FiberRecord& r) { return r.ray; });
  report.tag_constant = all_equal([](const FiberRecord& r) { return r.tag; });
  report.kss_constant = all_equal([](const FiberRecord& r) { return r.kss; });

  std::set<Rat> jump_union;
  for (const FiberRecord* rec : included)
    for (const Rat& j : rec->graded->jumps) jump_union.insert(j);
  report.jumps.assign(jump_union.begin(), jump_union.end());
  for (const Rat& jump : report.jumps) {
    std::vector<Int> row;
    for (const FiberRecord* rec : included) {
      Int dim = 0;
      const auto& view = *rec->graded;
      for (size_t i = 0; i < view.jumps.size(); ++i)
        if (view.jumps[i] == jump) {
          dim = view.dims[i];
          break;
        }
      row.push_back(dim);
    }
    report.table.push_back(std::move(row));
  }
  report.graded_constant = true;
  for (const auto& row : report.table)
    for (const Int& dim : row)
      if (dim != row[0]) report.graded_constant = false;

  bool invariants_constant = report.char_constant && report.lct_constant && report.nvol_constant &&
                             report.ray_constant && report.tag_constant && report.kss_constant &&
                             report.graded_constant;
  if (invariants_constant) {
    bool shared = true;
    for (size_t i = 1; i < degenerations.size(); ++i)
      if (!same_descriptor(degenerations[i], degenerations[0])) shared = false;
    if (shared) report.common_degeneration = degenerations[0];
  }
  return report;
}

FlatFamilyResult flat_ideal_family_check(const FamilySpec& spec, const Rat& cutoff) {
  FamilyReport report = family_report(spec, cutoff);
  std::vector<const FiberRecord*> included;
  for (const auto& rec : report.fibers)
    if (!rec.excluded) included.push_back(&rec);
  for (size_t j = 0; j < report.jumps.size(); ++j) {
    const auto& row = report.table[j];
    for (size_t k = 1; k < row.size(); ++k)
      if (row[k] != row[0]) {
        FlatFamilyWitness w{report.jumps[j], included[0]->sample, included[k]->sample, row[0], row[k]};
        return {false, w};
      }
  }
  return {true, std::nullopt};
}

} // namespace valvol
