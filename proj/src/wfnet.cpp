#include "migra/wfnet.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace migra {

namespace {

std::vector<Label> normalise(std::vector<Label> v) {
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end()) {
    throw std::invalid_argument("marking lists a place twice");
  }
  return v;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

Marking::Marking(std::initializer_list<Label> labels) : places_(normalise(std::vector<Label>(labels))) {}
Marking::Marking(std::vector<Label> labels) : places_(normalise(std::move(labels))) {}
Marking::Marking(const std::set<Label>& labels) : places_(labels.begin(), labels.end()) {}

Marking Marking::parse(std::string_view text) {
  std::vector<Label> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto piece = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (!piece.empty()) out.push_back(piece);
    else if (comma != std::string_view::npos || !out.empty()) throw std::invalid_argument("empty label in marking");
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Marking(std::move(out));
}

bool Marking::contains(const Label& l) const { return std::binary_search(places_.begin(), places_.end(), l); }

bool Marking::intersects(const std::set<Label>& s) const {
  return std::any_of(places_.begin(), places_.end(), [&](const Label& l) { return s.count(l) != 0; });
}

std::string Marking::str() const {
  std::string out;
  for (const auto& p : places_) {
    if (!out.empty()) out += ',';
    out += p;
  }
  return out;
}

}  // namespace migra

namespace migra::wfnet {

std::set<Label> enabled_transitions(const WfNet& net, const Marking& m) {
  for (const auto& p : m) {
    if (!net.has_place(p)) throw UnknownPlaceError(p);
  }
  std::set<Label> out;
  for (const auto& [t, inputs] : net.pre) {
    if (std::all_of(inputs.begin(), inputs.end(), [&](const Label& p) { return m.contains(p); })) out.insert(t);
  }
  return out;
}

Marking fire(const WfNet& net, const Marking& m, const Label& t) {
  auto it = net.pre.find(t);
  if (it == net.pre.end()) throw NotEnabledError(t);
  for (const auto& p : it->second) {
    if (!m.contains(p)) throw NotEnabledError(t);
  }
  std::set<Label> next(m.begin(), m.end());
  for (const auto& p : it->second) next.erase(p);
  for (const auto& p : net.post.at(t)) {
    if (!next.insert(p).second) {
      throw SafetyViolation("firing '" + t + "' in {" + m.str() + "} marks '" + p + "' twice");
    }
  }
  return Marking(next);
}

namespace {

struct Graph {
  std::vector<Marking> states;
  std::map<Marking, std::size_t> index;
  std::vector<std::vector<std::size_t>> succ;
  std::set<Label> fired;
};

Graph explore(const WfNet& net, std::size_t cap) {
  Graph g;
  Marking m0{net.init};
  g.states.push_back(m0);
  g.index.emplace(m0, 0);
  g.succ.emplace_back();
  std::deque<std::size_t> work{0};
  while (!work.empty()) {
    std::size_t i = work.front();
    work.pop_front();
    Marking cur = g.states[i];
    for (const auto& t : enabled_transitions(net, cur)) {
      Marking next = fire(net, cur, t);
      g.fired.insert(t);
      auto [it, fresh] = g.index.emplace(next, g.states.size());
      if (fresh) {
        if (g.states.size() >= cap) throw StateExplosionError(cap);
        g.states.push_back(next);
        g.succ.emplace_back();
        work.push_back(it->second);
      }
      g.succ[i].push_back(it->second);
    }
  }
  return g;
}

}  // namespace

MarkingSet reachable_markings(const WfNet& net, std::size_t cap) {
  Graph g = explore(net, cap);
  return MarkingSet(g.states.begin(), g.states.end());
}

SoundnessReport check_soundness(const WfNet& net, std::size_t cap) {
  Graph g = explore(net, cap);
  SoundnessReport r;
  auto end_it = g.index.find(Marking{net.end});
  if (end_it == g.index.end()) {
    r.proper_termination = false;
  } else {
    // Backward closure from {end}.
    std::vector<std::vector<std::size_t>> pred(g.states.size());
    for (std::size_t i = 0; i < g.succ.size(); ++i)
      for (auto j : g.succ[i]) pred[j].push_back(i);
    std::vector<bool> seen(g.states.size(), false);
    std::deque<std::size_t> work{end_it->second};
    seen[end_it->second] = true;
    while (!work.empty()) {
      auto i = work.front();
      work.pop_front();
      for (auto j : pred[i]) {
        if (!seen[j]) {
          seen[j] = true;
          work.push_back(j);
        }
      }
    }
    r.proper_termination = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  }
  for (const auto& t : net.transitions) {
    if (!g.fired.count(t)) r.dead_transitions.push_back(t);
  }
  return r;
}

std::string_view to_string(PlaceClass c) {
  switch (c) {
    case PlaceClass::Safe: return "safe";
    case PlaceClass::Overestimation: return "overestimation";
    case PlaceClass::PerfectMember: return "perfect_member";
  }
  return "?";
}

OracleReport classify(const MarkingSet& old_markings, const MarkingSet& new_markings,
                      const std::vector<Label>& old_places) {
  OracleReport r;
  r.reachable_old = old_markings;
  r.reachable_new = new_markings;
  std::set_difference(old_markings.begin(), old_markings.end(), new_markings.begin(), new_markings.end(),
                      std::inserter(r.non_migratable, r.non_migratable.end()));

  std::map<Label, std::pair<std::size_t, std::size_t>> counts;  // (migratable, non-migratable)
  for (const auto& m : old_markings) {
    bool bad = r.non_migratable.count(m) != 0;
    for (const auto& p : m) (bad ? counts[p].second : counts[p].first)++;
  }
  std::set<Label> perfect;
  for (const auto& p : old_places) {
    auto [good, bad] = counts[p];
    PlaceClass c = PlaceClass::Safe;
    if (bad > 0 && good == 0) c = PlaceClass::PerfectMember;
    else if (bad > 0) c = PlaceClass::Overestimation;
    r.per_place[p] = c;
    if (bad > 0) r.scr.insert(p);
    if (c == PlaceClass::PerfectMember) perfect.insert(p);
  }
  r.pscr_exists = std::all_of(r.non_migratable.begin(), r.non_migratable.end(),
                              [&](const Marking& m) { return m.intersects(perfect); });
  if (r.pscr_exists) r.pscr = perfect;
  return r;
}

OracleReport oracle_classify(const WfNet& old_net, const WfNet& new_net, std::size_t cap) {
  return classify(reachable_markings(old_net, cap), reachable_markings(new_net, cap), old_net.places);
}

}  // namespace migra::wfnet
