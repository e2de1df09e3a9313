#include "migra/sese.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <stdexcept>

namespace migra::sese {

using ecws::Element;
using ecws::Sequence;

namespace {

struct Level {
  const Sequence* seq;
  std::size_t index;
};
using Chain = std::vector<Level>;

void index_chains(const Sequence& s, Chain& prefix, std::map<Label, Chain>& out) {
  for (std::size_t i = 0; i < s.items.size(); ++i) {
    prefix.push_back({&s, i});
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, ecws::Place> || std::is_same_v<T, ecws::Transition>) {
            out[n.label] = prefix;
          } else if constexpr (std::is_same_v<T, ecws::LoopBlock>) {
            index_chains(n.forward, prefix, out);
            index_chains(n.back, prefix, out);
          } else {
            for (const auto& b : n.branches) index_chains(b, prefix, out);
          }
        },
        s.items[i].node);
    prefix.pop_back();
  }
}

void collect(const Element& e, LabelSet& places, LabelSet& nodes) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ecws::Place>) {
          places.insert(n.label);
          nodes.insert(n.label);
        } else if constexpr (std::is_same_v<T, ecws::Transition>) {
          nodes.insert(n.label);
        } else if constexpr (std::is_same_v<T, ecws::LoopBlock>) {
          for (const auto& x : n.forward.items) collect(x, places, nodes);
          for (const auto& x : n.back.items) collect(x, places, nodes);
        } else {
          for (const auto& b : n.branches)
            for (const auto& x : b.items) collect(x, places, nodes);
        }
      },
      e.node);
}

class Locator {
 public:
  explicit Locator(const ecws::BlockTree& tree) {
    Chain prefix;
    index_chains(tree.root, prefix, chains_);
  }

  Fragment fragment(const LabelSet& nodes) const {
    std::vector<const Chain*> cs;
    for (const auto& n : nodes) {
      auto it = chains_.find(n);
      if (it == chains_.end()) throw std::invalid_argument("unknown node: " + n);
      cs.push_back(&it->second);
    }
    // Deepest sequence holding every node.
    std::size_t level = 0;
    for (;;) {
      const auto& first = *cs.front();
      bool same_slot = std::all_of(cs.begin(), cs.end(), [&](const Chain* c) {
        return c->size() > level + 1 && (*c)[level].index == first[level].index &&
               (*c)[level + 1].seq == first[level + 1].seq;
      });
      if (!same_slot) break;
      ++level;
    }
    for (;;) {
      const Sequence& seq = *(*cs.front())[level].seq;
      std::size_t lo = seq.items.size(), hi = 0;
      for (const auto* c : cs) {
        lo = std::min(lo, (*c)[level].index);
        hi = std::max(hi, (*c)[level].index);
      }
      while (lo > 0 && !seq.items[lo].is_place()) --lo;
      while (hi + 1 < seq.items.size() && !seq.items[hi].is_place()) ++hi;
      if (seq.items[lo].is_place() && seq.items[hi].is_place()) {
        Fragment f;
        f.entry = std::get<ecws::Place>(seq.items[lo].node).label;
        f.exit = std::get<ecws::Place>(seq.items[hi].node).label;
        for (std::size_t i = lo; i <= hi; ++i) collect(seq.items[i], f.places, f.nodes);
        return f;
      }
      // Transition-bordered run: only the enclosing block is single-entry.
      --level;
    }
  }

 private:
  std::map<Label, Chain> chains_;
};

bool overlap(const LabelSet& a, const LabelSet& b) {
  return std::any_of(a.begin(), a.end(), [&](const Label& l) { return b.count(l) > 0; });
}

}  // namespace

LabelSet static_region(const WfNet& old_net, const WfNet& new_net) {
  LabelSet out;
  auto in_old = [&](const Label& l) { return old_net.has_place(l) || old_net.has_transition(l); };
  for (const auto& a : old_net.arcs) {
    if (new_net.arcs.count(a)) continue;
    out.insert(a.first);
    out.insert(a.second);
  }
  for (const auto& a : new_net.arcs) {
    if (old_net.arcs.count(a)) continue;
    if (in_old(a.first)) out.insert(a.first);
    if (in_old(a.second)) out.insert(a.second);
  }
  // A one-place net has no arcs to lose.
  for (const auto& p : old_net.places)
    if (!new_net.has_place(p) && !new_net.has_transition(p)) out.insert(p);
  return out;
}

std::vector<Fragment> dynamic_fragments(const ecws::BlockTree& old_tree, const LabelSet& static_nodes,
                                        const ArcSet& changed_arcs) {
  if (static_nodes.empty()) return {};
  WfNet net = ecws::build_net(old_tree);
  std::map<Label, LabelSet> adj;
  for (const auto& [a, b] : net.arcs) {
    if (!static_nodes.count(a) || !static_nodes.count(b)) continue;
    adj[a].insert(b);
    adj[b].insert(a);
  }
  // New arcs may pass through nodes the old net lacks.
  for (const auto& [a, b] : changed_arcs) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  Locator loc(old_tree);
  std::vector<Fragment> frags;
  LabelSet seen;
  for (const auto& start : static_nodes) {
    if (seen.count(start)) continue;
    LabelSet comp{start};
    std::vector<Label> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
      Label n = stack.back();
      stack.pop_back();
      for (const auto& m : adj[n])
        if (seen.insert(m).second) {
          if (static_nodes.count(m)) comp.insert(m);
          stack.push_back(m);
        }
    }
    frags.push_back(loc.fragment(comp));
  }
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t i = 0; i < frags.size() && !merged; ++i)
      for (std::size_t j = i + 1; j < frags.size() && !merged; ++j) {
        if (!overlap(frags[i].nodes, frags[j].nodes)) continue;
        LabelSet both = frags[i].nodes;
        both.insert(frags[j].nodes.begin(), frags[j].nodes.end());
        frags[i] = loc.fragment(both);
        frags.erase(frags.begin() + static_cast<std::ptrdiff_t>(j));
        merged = true;
      }
  }
  std::sort(frags.begin(), frags.end(), [](const Fragment& a, const Fragment& b) { return a.entry < b.entry; });
  return frags;
}

LabelSet dynamic_region(const ecws::BlockTree& old_tree, const LabelSet& static_nodes, const ArcSet& changed_arcs) {
  LabelSet out;
  for (const auto& f : dynamic_fragments(old_tree, static_nodes, changed_arcs)) out.insert(f.places.begin(), f.places.end());
  return out;
}

LabelSet improved_region(const std::vector<Fragment>& fragments, const LabelSet& new_places) {
  LabelSet out;
  for (const auto& f : fragments)
    for (const auto& p : f.places)
      if ((p != f.entry && p != f.exit) || !new_places.count(p)) out.insert(p);
  return out;
}

SeseRegion compute(const ecws::BlockTree& old_tree, const ecws::BlockTree& new_tree) {
  SeseRegion r;
  WfNet old_net = ecws::build_net(old_tree);
  WfNet new_net = ecws::build_net(new_tree);
  r.static_nodes = static_region(old_net, new_net);
  ArcSet added;
  std::set_difference(new_net.arcs.begin(), new_net.arcs.end(), old_net.arcs.begin(), old_net.arcs.end(),
                      std::inserter(added, added.end()));
  r.fragments = dynamic_fragments(old_tree, r.static_nodes, added);
  for (const auto& f : r.fragments) r.dynamic_places.insert(f.places.begin(), f.places.end());
  r.improved_places = improved_region(r.fragments, LabelSet(new_net.places.begin(), new_net.places.end()));
  return r;
}

bool flags_non_migratable(const Marking& m, const SeseRegion& region) { return m.intersects(region.improved_places); }

}  // namespace migra::sese
