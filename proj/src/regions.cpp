#include "migra/regions.hpp"

#include <algorithm>
#include <iterator>

namespace migra::regions {

namespace {

PlaceSet minus(const PlaceSet& a, const PlaceSet& b) {
  PlaceSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

PlaceSet unite(std::initializer_list<const PlaceSet*> sets) {
  PlaceSet out;
  for (const auto* s : sets) out.insert(s->begin(), s->end());
  return out;
}

}  // namespace

ChangeSets change_sets(const CTree& old_tree, const CTree& new_tree) {
  ChangeSets cs;
  for (const auto& p : ctree::places(old_tree)) {
    if (!ctree::contains(new_tree, p)) {
      cs.cr_r.insert(p);
      continue;
    }
    bool root_old = ctree::in_root(old_tree, p);
    bool root_new = ctree::in_root(new_tree, p);
    if (!root_old && root_new) {
      cs.cr_lc.insert(p);
    } else if (root_old && !root_new) {
      cs.cr_ac.insert(p);
    } else if (!root_old && !root_new) {
      CTree g = ctree::gcs(p, old_tree);
      CTree g2 = ctree::gcs(p, new_tree);
      if (ctree::mpe_exists(g, g2)) continue;
      cs.cr_wrc.insert(p);
      auto pg = ctree::places(g);
      auto pg2 = ctree::places(g2);
      if (ctree::is_breakoff(g, minus(pg, pg2)) || ctree::is_breakoff(g2, minus(pg2, pg))) cs.cr_src.insert(p);
    }
  }
  return cs;
}

MemberSets member_sets(const ChangeSets& cs) {
  return {minus(cs.cr_wrc, cs.cr_src), unite({&cs.cr_r, &cs.cr_lc, &cs.cr_ac, &cs.cr_src})};
}

PlaceSet scr(const PlaceSet& over, const PlaceSet& perf) { return unite({&over, &perf}); }

bool pscr_exists(const CTree& old_tree, const CTree& new_tree, const PlaceSet& over, const PlaceSet& perf) {
  if (over.empty()) return true;
  if (ctree::is_breakoff(old_tree, perf)) return true;
  if (ctree::is_breakoff(new_tree, perf)) return false;
  // Blocks left without a generable branch produce no marking, so they must
  // not constrain the embedding.
  return ctree::mpe_exists(ctree::prune_ungenerable(ctree::delete_places(old_tree, perf)),
                           ctree::prune_ungenerable(ctree::delete_places(new_tree, perf)));
}

AnalysisReport analyze(const CTree& old_tree, const CTree& new_tree, const std::vector<Label>& old_places) {
  AnalysisReport r;
  r.change_sets = change_sets(old_tree, new_tree);
  auto [over, perf] = member_sets(r.change_sets);
  r.over = std::move(over);
  r.perf = std::move(perf);
  r.scr = scr(r.over, r.perf);
  r.pscr_exists = pscr_exists(old_tree, new_tree, r.over, r.perf);
  if (r.pscr_exists) r.pscr = r.perf;
  for (const auto& p : old_places) {
    r.per_place[p] = r.perf.count(p)   ? PlaceClass::PerfectMember
                     : r.over.count(p) ? PlaceClass::Overestimation
                                       : PlaceClass::Safe;
  }
  return r;
}

AnalysisReport analyze(const ecws::BlockTree& old_net, const ecws::BlockTree& new_net) {
  return analyze(ctree::build_ctree(old_net), ctree::build_ctree(new_net), ecws::place_labels(old_net));
}

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::Migratable: return "migratable";
    case Decision::NonMigratable: return "non_migratable";
    case Decision::Unknown: return "unknown";
  }
  return "?";
}

Decision decide_marking(const Marking& m, const AnalysisReport& report) {
  if (report.pscr_exists) return m.intersects(*report.pscr) ? Decision::NonMigratable : Decision::Migratable;
  if (!m.intersects(report.scr)) return Decision::Migratable;
  if (m.intersects(report.perf)) return Decision::NonMigratable;
  return Decision::Unknown;
}

}  // namespace migra::regions
