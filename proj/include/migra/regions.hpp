#pragma once

// Structural change regions of a migration pair (old net N, new net N').
//
// Every old place is classified from the two C-trees alone:
//   removal               present in C, absent in C'
//   lost concurrency      non-root in C, root in C'
//   acquired concurrency  root in C, non-root in C'
//   weak reformed         non-root in both, GCS(p,C) has no MPE in GCS(p,C')
//   strong reformed       weak, and one GCS minus the other breaks off its tree
// Perfect members are removal, lost, acquired and strong; overestimations are
// weak but not strong. A marking is non-migratable when it is not reachable in
// N'; the region sets below bound those markings without enumerating states.

#include <map>
#include <optional>
#include <string_view>

#include "migra/ctree.hpp"
#include "migra/ecws.hpp"
#include "migra/wfnet.hpp"

namespace migra::regions {

using ctree::CTree;
using ctree::PlaceSet;
using wfnet::PlaceClass;

struct ChangeSets {
  PlaceSet cr_r;    // removal
  PlaceSet cr_lc;   // lost concurrency
  PlaceSet cr_ac;   // acquired concurrency
  PlaceSet cr_wrc;  // weak reformed concurrency
  PlaceSet cr_src;  // strong reformed concurrency, subset of cr_wrc
  bool operator==(const ChangeSets&) const = default;
};

struct MemberSets {
  PlaceSet over;
  PlaceSet perf;
};

struct AnalysisReport {
  ChangeSets change_sets;
  PlaceSet over;
  PlaceSet perf;
  PlaceSet scr;
  bool pscr_exists = false;
  std::optional<PlaceSet> pscr;
  std::map<Label, PlaceClass> per_place;
};

ChangeSets change_sets(const CTree& old_tree, const CTree& new_tree);

MemberSets member_sets(const ChangeSets& cs);

PlaceSet scr(const PlaceSet& over, const PlaceSet& perf);

/// Decision table evaluated top-down: no overestimation; Perf breaks off C;
/// Perf breaks off C' only; otherwise embedding of both trees with Perf deleted.
bool pscr_exists(const CTree& old_tree, const CTree& new_tree, const PlaceSet& over, const PlaceSet& perf);

AnalysisReport analyze(const CTree& old_tree, const CTree& new_tree, const std::vector<Label>& old_places);

AnalysisReport analyze(const ecws::BlockTree& old_net, const ecws::BlockTree& new_net);

enum class Decision { Migratable, NonMigratable, Unknown };

std::string_view to_string(Decision d);

/// Exact when a PSCR exists; otherwise markings touching only overestimated
/// places are Unknown.
Decision decide_marking(const Marking& m, const AnalysisReport& report);

}  // namespace migra::regions
