#include "migra/net.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace migra {

bool WfNet::has_place(const Label& l) const {
  return std::find(places.begin(), places.end(), l) != places.end();
}

bool WfNet::has_transition(const Label& l) const { return pre.count(l) != 0; }

void WfNet::add_arc(const Label& from, const Label& to, bool from_is_place) {
  arcs.emplace(from, to);
  if (from_is_place) pre[to].insert(from);
  else post[from].insert(to);
}

std::vector<std::string> structural_problems(const WfNet& net) {
  std::vector<std::string> out;
  std::map<Label, std::vector<Label>> succ, pred;
  for (const auto& [a, b] : net.arcs) {
    succ[a].push_back(b);
    pred[b].push_back(a);
  }
  for (const auto& p : net.places) {
    bool source = pred[p].empty();
    bool sink = succ[p].empty();
    if (source && p != net.init) out.push_back("place '" + p + "' is a second source");
    if (sink && p != net.end) out.push_back("place '" + p + "' is a second sink");
  }
  if (!pred[net.init].empty()) out.push_back("init place '" + net.init + "' has incoming arcs");
  if (!succ[net.end].empty()) out.push_back("end place '" + net.end + "' has outgoing arcs");

  auto closure = [](const Label& start, std::map<Label, std::vector<Label>>& adj) {
    std::set<Label> seen{start};
    std::deque<Label> work{start};
    while (!work.empty()) {
      Label n = work.front();
      work.pop_front();
      for (const auto& m : adj[n]) {
        if (seen.insert(m).second) work.push_back(m);
      }
    }
    return seen;
  };
  auto fwd = closure(net.init, succ);
  auto bwd = closure(net.end, pred);
  auto check = [&](const Label& n) {
    if (!fwd.count(n) || !bwd.count(n)) out.push_back("node '" + n + "' is not on a path from init to end");
  };
  for (const auto& p : net.places) check(p);
  for (const auto& t : net.transitions) check(t);
  return out;
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string to_dot(const WfNet& net, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << quoted(name) << " {\n  rankdir=LR;\n";
  for (const auto& p : net.places) os << "  " << quoted(p) << " [shape=circle];\n";
  for (const auto& t : net.transitions) os << "  " << quoted(t) << " [shape=box];\n";
  for (const auto& [a, b] : net.arcs) os << "  " << quoted(a) << " -> " << quoted(b) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace migra
