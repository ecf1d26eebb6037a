#pragma once

#include "valvol/branch.hpp"
#include "valvol/degeneration.hpp"
#include "valvol/ideals.hpp"
#include "valvol/invariants.hpp"
#include "valvol/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace valvol {

// A one-parameter family of branch parametrizations, evaluated at finitely
// many rational samples: x = t^a, y = sum(c_i(param) t^{e_i}).
struct FamilySpec {
  std::string param;
  std::vector<Rat> samples;
  long a = 1;
  std::vector<std::pair<long, Poly>> phi; // exponent -> coefficient in param
  Rat lambda;
};

// File schema (JSON):
//   {"param": "s", "samples": ["0", "1", "-1/2"], "a": 2,
//    "phi": [[3, "1"], [4, "s"]], "lambda": "1/2"}
// Coefficient expressions use the polynomial grammar in the one parameter.
FamilySpec load_family(const std::string& path);
FamilySpec parse_family_text(const std::string& text);

// One sample's branch, or the reason it degenerates (leading coefficient
// vanishing, primitivity failure, ...).  Degenerate samples are flagged and
// excluded from constancy verdicts, never silently dropped.
struct FiberInstance {
  Rat sample;
  std::optional<BranchParam> branch;
  std::string flag_reason; // set when branch is absent
};
FiberInstance instantiate_sample(const FamilySpec& spec, const Rat& sample);

// Per-sample result; fields past `exclusion_reason` are meaningful only for
// included fibers.
struct FiberRecord {
  Rat sample;
  bool excluded = false;
  std::string exclusion_reason;
  BranchParam branch;
  PuiseuxChar chr;
  Rat lct;
  Rat nvol;
  std::pair<Int, Int> ray;
  CaseTag tag = CaseTag::smooth;
  bool kss = false;
  std::optional<IdealSeqView> graded; // minimizer's ideal sequence up to the cutoff
};

struct FamilyReport {
  std::vector<FiberRecord> fibers;
  bool char_constant = false;
  bool lct_constant = false;
  bool nvol_constant = false;
  bool ray_constant = false;
  bool tag_constant = false;
  bool kss_constant = false;
  bool graded_constant = false;
  Rat cutoff;
  // Union of jump values across included fibers; table[j][k] is the graded
  // dimension of included fiber k at jumps[j] (0 where the jump is absent).
  std::vector<Rat> jumps;
  std::vector<std::vector<Int>> table;
  // Present when every invariant is constant and all included fibers share
  // one central-fiber descriptor.
  std::optional<DegenerationResult> common_degeneration;
};

// Evaluates every fiber through the branch/invariant/degeneration pipeline
// and the graded dimensions of its minimizer's ideal sequence up to the
// cutoff.  Errors if lambda leaves the klt range of some included fiber
// (the message names the sample) or if every sample is excluded.
FamilyReport family_report(const FamilySpec& spec, const Rat& cutoff);

struct FlatFamilyWitness {
  Rat level;
  Rat sample_a, sample_b;
  Int dim_a, dim_b;
};

struct FlatFamilyResult {
  bool ok;
  std::optional<FlatFamilyWitness> witness;
};

// Dimension-level shadow of flatness of the family of minimizer ideal
// sequences: true iff for every jump level <= cutoff all included fibers
// have the same graded dimension there.  On failure reports the first level
// (in increasing order) and a discordant sample pair.
FlatFamilyResult flat_ideal_family_check(const FamilySpec& spec, const Rat& cutoff);

} // namespace valvol
