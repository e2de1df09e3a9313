#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace migra {

using Label = std::string;

/// Explicit place/transition net with a unique source (init) and sink (end).
struct WfNet {
  std::vector<Label> places;       // in order of appearance
  std::vector<Label> transitions;  // in order of appearance
  std::set<std::pair<Label, Label>> arcs;
  std::map<Label, std::set<Label>> pre;   // transition -> input places
  std::map<Label, std::set<Label>> post;  // transition -> output places
  Label init;
  Label end;

  bool has_place(const Label& l) const;
  bool has_transition(const Label& l) const;
  void add_arc(const Label& from, const Label& to, bool from_is_place);
};

/// Structural WF-net checks: unique source and sink, every node on a path
/// from init to end. Returns human-readable violations, empty when sound.
std::vector<std::string> structural_problems(const WfNet& net);

/// Graphviz digraph: places as circles, transitions as boxes.
std::string to_dot(const WfNet& net, const std::string& name = "net");

}  // namespace migra
