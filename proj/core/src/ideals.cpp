#include "valvol/ideals.hpp"

#include "valvol/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace valvol {

namespace {

void require_plane(const MonomialValuation& v, const char* who) {
  if (v.vars().size() != 2) fail(ErrorCode::domain, std::string(who) + " needs a valuation on two variables");
}

} // namespace

Int colength(const MonomialValuation& v, const Rat& lam) {
  require_plane(v, "colength");
  if (lam < 0) fail(ErrorCode::domain, "colength cutoff must be nonnegative");
  const Rat& mu = v.weight()[0];
  const Rat& nu = v.weight()[1];
  Int total = 0;
  for (Int i = 0; Rat(i) * mu < lam; ++i) total += count_below((lam - Rat(i) * mu) / nu);
  return total;
}

Rat volume(const MonomialValuation& v) {
  require_plane(v, "volume");
  return Rat(1) / (v.weight()[0] * v.weight()[1]);
}

Rat volume_estimate(const MonomialValuation& v, const Rat& lam) {
  require_plane(v, "volume_estimate");
  if (lam <= 0) fail(ErrorCode::domain, "volume estimate needs a positive cutoff");
  return Rat(2) * Rat(colength(v, lam)) / (lam * lam);
}

Rat volume_estimate_error_bound(const MonomialValuation& v, const Rat& lam) {
  require_plane(v, "volume_estimate_error_bound");
  if (lam <= 0) fail(ErrorCode::domain, "volume estimate needs a positive cutoff");
  return Rat(2) * (Rat(1) / v.weight()[0] + Rat(1) / v.weight()[1]) / lam;
}

Int IdealSeqView::colength_below(const Rat& lam) const {
  Int total = 0;
  for (size_t i = 0; i < jumps.size() && jumps[i] < lam; ++i) total += dims[i];
  return total;
}

IdealSeqView graded_dims(const MonomialValuation& v, const Rat& cutoff) {
  require_plane(v, "graded_dims");
  if (cutoff < 0) fail(ErrorCode::domain, "graded cutoff must be nonnegative");
  const Rat& mu = v.weight()[0];
  const Rat& nu = v.weight()[1];
  std::map<Rat, Int> buckets;
  for (Int i = 0; Rat(i) * mu <= cutoff; ++i)
    for (Int j = 0; Rat(i) * mu + Rat(j) * nu <= cutoff; ++j) ++buckets[Rat(i) * mu + Rat(j) * nu];
  IdealSeqView view{v, cutoff, {}, {}};
  for (const auto& [lam, dim] : buckets) {
    view.jumps.push_back(lam);
    view.dims.push_back(dim);
  }
  return view;
}

Staircase Staircase::everything() { return from_generators({{0, 0}}); }

Staircase Staircase::from_generators(std::vector<std::pair<long, long>> gens) {
  for (const auto& [x, y] : gens)
    if (x < 0 || y < 0) fail(ErrorCode::domain, "staircase generators must lie in N^2");
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<std::pair<long, long>> minimal;
  for (const auto& g : gens) {
    bool dominated = false;
    for (const auto& h : gens)
      if (h != g && h.first <= g.first && h.second <= g.second) {
        // Ties in one coordinate: the sort+unique above keeps both points,
        // and exactly one dominates the other.
        dominated = true;
        break;
      }
    if (!dominated) minimal.push_back(g);
  }
  Staircase s;
  s.gens_ = std::move(minimal);
  return s;
}

bool Staircase::contains(long x, long y) const {
  for (const auto& [gx, gy] : gens_)
    if (gx <= x && gy <= y) return true;
  return false;
}

bool Staircase::subset_of(const Staircase& other) const {
  for (const auto& [gx, gy] : gens_)
    if (!other.contains(gx, gy)) return false;
  return true;
}

Staircase Staircase::intersect(const Staircase& other) const {
  std::vector<std::pair<long, long>> joins;
  for (const auto& [ax, ay] : gens_)
    for (const auto& [bx, by] : other.gens_) joins.push_back({std::max(ax, bx), std::max(ay, by)});
  return from_generators(std::move(joins));
}

Staircase Staircase::unite(const Staircase& other) const {
  std::vector<std::pair<long, long>> all = gens_;
  all.insert(all.end(), other.gens_.begin(), other.gens_.end());
  return from_generators(std::move(all));
}

long Staircase::max_generator_coord() const {
  long m = 0;
  for (const auto& [x, y] : gens_) m = std::max(m, std::max(x, y));
  return m;
}

std::string Staircase::str() const {
  std::ostringstream out;
  out << "{";
  for (size_t i = 0; i < gens_.size(); ++i) {
    if (i) out << ",";
    out << "(" << gens_[i].first << "," << gens_[i].second << ")";
  }
  out << "}";
  return out.str();
}

namespace {

std::string index_str(const std::vector<long>& m) {
  std::ostringstream out;
  out << "[";
  for (size_t i = 0; i < m.size(); ++i) {
    if (i) out << ",";
    out << m[i];
  }
  out << "]";
  return out.str();
}

} // namespace

ReesFamilyTrunc::ReesFamilyTrunc(std::vector<long> box, std::map<std::vector<long>, Staircase> ideals)
    : box_(std::move(box)), ideals_(std::move(ideals)) {
  if (box_.empty()) fail(ErrorCode::domain, "family index box must be nonempty");
  size_t count = 1;
  for (long b : box_) {
    if (b < 0) fail(ErrorCode::domain, "family box bounds must be nonnegative");
    count *= static_cast<size_t>(b) + 1;
    if (count > 2'000'000) fail(ErrorCode::domain, "family box too large");
  }
  if (ideals_.size() != count)
    fail(ErrorCode::domain, "family must define exactly the ideals of its box (got " +
                                std::to_string(ideals_.size()) + ", box holds " + std::to_string(count) + ")");
  for (const auto& m : indices())
    if (!ideals_.count(m)) fail(ErrorCode::domain, "family is missing index " + index_str(m));
  const std::vector<long> origin(box_.size(), 0);
  if (ideals_.at(origin) != Staircase::everything())
    fail(ErrorCode::domain, "family must have I_0 = all of N^2");
}

const Staircase& ReesFamilyTrunc::at(const std::vector<long>& m) const {
  auto it = ideals_.find(m);
  if (it == ideals_.end()) fail(ErrorCode::domain, "family index " + index_str(m) + " outside box");
  return it->second;
}

std::vector<std::vector<long>> ReesFamilyTrunc::indices() const {
  std::vector<std::vector<long>> out;
  std::vector<long> m(box_.size(), 0);
  while (true) {
    out.push_back(m);
    size_t axis = box_.size();
    while (axis-- > 0) {
      if (m[axis] < box_[axis]) {
        ++m[axis];
        std::fill(m.begin() + static_cast<long>(axis) + 1, m.end(), 0);
        break;
      }
      if (axis == 0) return out;
    }
  }
}

FlatReesResult flat_rees_check(const ReesFamilyTrunc& fam, const Weight& xi, const Rat& cutoff) {
  if (xi.size() != fam.rank()) fail(ErrorCode::var_mismatch, "index weight length differs from family rank");
  if (cutoff < 0) fail(ErrorCode::domain, "cutoff must be nonnegative");

  // One-step margin: every index inside {<xi, m> <= cutoff} needs all its
  // successors m + e_j available, otherwise I_{>m} is undetermined.
  {
    std::vector<Int> required;
    bool too_small = false;
    for (size_t i = 0; i < fam.rank(); ++i) {
      Int need = floor_rat(cutoff / xi[i]) + 1;
      required.push_back(need);
      if (Int(fam.box()[i]) < need) too_small = true;
    }
    if (too_small) {
      std::ostringstream out;
      out << "box too small to evaluate I_{>m} up to the cutoff; need at least [";
      for (size_t i = 0; i < required.size(); ++i) {
        if (i) out << ",";
        out << required[i];
      }
      out << "]";
      fail(ErrorCode::box_too_small, out.str());
    }
  }

  const auto indices = fam.indices();

  auto value_of = [&](const std::vector<long>& m) {
    Rat v = 0;
    for (size_t i = 0; i < m.size(); ++i) v += xi[i] * m[i];
    return v;
  };

  for (size_t ia = 0; ia < indices.size(); ++ia)
    for (size_t ib = ia + 1; ib < indices.size(); ++ib) {
      const auto& k = indices[ia];
      const auto& l = indices[ib];
      std::vector<long> mx(k.size());
      for (size_t i = 0; i < k.size(); ++i) mx[i] = std::max(k[i], l[i]);
      Staircase meet = fam.at(k).intersect(fam.at(l));
      if (meet != fam.at(mx)) {
        FlatReesWitness w;
        w.kind = FlatReesWitness::Kind::intersection;
        w.index_a = k;
        w.index_b = l;
        w.detail = "I" + index_str(k) + " cap I" + index_str(l) + " = " + meet.str() + " but I" +
                   index_str(mx) + " = " + fam.at(mx).str();
        return {false, w};
      }
    }

  std::set<Rat> jumps;
  for (const auto& m : indices) {
    Rat v = value_of(m);
    if (v <= cutoff) jumps.insert(v);
  }

  long window = 2;
  for (const auto& m : indices) window = std::max(window, fam.at(m).max_generator_coord() + 2);
  for (long b : fam.box()) window = std::max(window, b + 2);

  for (const Rat& lam : jumps) {
    Staircase u_ge, u_gt;
    for (const auto& m : indices) {
      Rat v = value_of(m);
      if (v >= lam) u_ge = u_ge.unite(fam.at(m));
      if (v > lam) u_gt = u_gt.unite(fam.at(m));
    }
    Int lhs = 0;
    for (long x = 0; x < window; ++x)
      for (long y = 0; y < window; ++y)
        if (u_ge.contains(x, y) && !u_gt.contains(x, y)) ++lhs;

    Int rhs = 0;
    for (const auto& m : indices) {
      if (value_of(m) != lam) continue;
      std::vector<const Staircase*> succ;
      for (size_t i = 0; i < m.size(); ++i) {
        std::vector<long> mp = m;
        ++mp[i];
        succ.push_back(&fam.at(mp));
      }
      const Staircase& im = fam.at(m);
      for (long x = 0; x < window; ++x)
        for (long y = 0; y < window; ++y) {
          if (!im.contains(x, y)) continue;
          bool above = false;
          for (const Staircase* s : succ)
            if (s->contains(x, y)) {
              above = true;
              break;
            }
          if (!above) ++rhs;
        }
    }

    if (lhs != rhs) {
      FlatReesWitness w;
      w.kind = FlatReesWitness::Kind::graded;
      w.level = lam;
      std::ostringstream out;
      out << "graded piece at level " << rat_str(lam) << ": union side has " << lhs
          << " lattice points, direct-sum side has " << rhs;
      w.detail = out.str();
      return {false, w};
    }
  }

  return {true, std::nullopt};
}

} // namespace valvol
