#pragma once

// Baseline change region: the smallest single-entry-single-exit fragments of
// the old net covering every node touched by an arc difference.
//
// On block-structured nets a SESE fragment is a contiguous run of one
// sequence that starts and ends at a place, with every block inside it taken
// whole.

#include <set>
#include <vector>

#include "migra/ecws.hpp"
#include "migra/net.hpp"
#include "migra/wfnet.hpp"

namespace migra::sese {

using LabelSet = std::set<Label>;

struct Fragment {
  Label entry;
  Label exit;
  LabelSet places;
  LabelSet nodes;  // places and transitions
  bool operator==(const Fragment&) const = default;
};

struct SeseRegion {
  LabelSet static_nodes;
  LabelSet dynamic_places;
  LabelSet improved_places;
  std::vector<Fragment> fragments;
};

/// Old-net nodes incident to an arc present in exactly one of the nets.
LabelSet static_region(const WfNet& old_net, const WfNet& new_net);

using ArcSet = std::set<std::pair<Label, Label>>;

/// Fragments covering each connected component of `static_nodes`; fragments
/// that share a node are merged. Components follow the old net's arcs and
/// `changed_arcs` (arcs only the new net has), so that one rewired arc is one
/// change.
std::vector<Fragment> dynamic_fragments(const ecws::BlockTree& old_tree, const LabelSet& static_nodes,
                                        const ArcSet& changed_arcs = {});

LabelSet dynamic_region(const ecws::BlockTree& old_tree, const LabelSet& static_nodes,
                        const ArcSet& changed_arcs = {});

/// Fragment places without the entry and exit places. A boundary place the
/// new net no longer has stays in the region.
LabelSet improved_region(const std::vector<Fragment>& fragments, const LabelSet& new_places);

SeseRegion compute(const ecws::BlockTree& old_tree, const ecws::BlockTree& new_tree);

/// Baseline verdict: non-migratable iff the marking touches the improved region.
bool flags_non_migratable(const Marking& m, const SeseRegion& region);

}  // namespace migra::sese
