#include "migra/ctree.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace migra::ctree {

std::vector<Label> CNode::places() const {
  std::vector<Label> out;
  for (const auto& e : elements)
    if (e.is_place()) out.push_back(e.place());
  return out;
}

std::vector<const CBlock*> CNode::blocks() const {
  std::vector<const CBlock*> out;
  for (const auto& e : elements)
    if (!e.is_place()) out.push_back(&e.block());
  return out;
}

namespace {

void collect(const ecws::Sequence& seq, CNode& node) {
  for (const auto& e : seq.items) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, ecws::Place>) {
            node.elements.push_back(CElement{n.label});
          } else if constexpr (std::is_same_v<T, ecws::AndBlock>) {
            CBlock block;
            for (const auto& b : n.branches) {
              CNode child;
              collect(b, child);
              block.branches.push_back(std::move(child));
            }
            node.elements.push_back(CElement{std::move(block)});
          } else if constexpr (std::is_same_v<T, ecws::XorBlock>) {
            for (const auto& b : n.branches) collect(b, node);
          } else if constexpr (std::is_same_v<T, ecws::LoopBlock>) {
            collect(n.forward, node);
            collect(n.back, node);
          }
        },
        e.node);
  }
}

void gather(const CNode& n, PlaceSet& out) {
  for (const auto& e : n.elements) {
    if (e.is_place()) out.insert(e.place());
    else
      for (const auto& b : e.block().branches) gather(b, out);
  }
}

// Path from root to the node holding p: (element index of block, branch index).
using Step = std::pair<std::size_t, std::size_t>;

bool locate(const CNode& n, const Label& p, std::vector<Step>& path) {
  for (std::size_t i = 0; i < n.elements.size(); ++i) {
    const auto& e = n.elements[i];
    if (e.is_place()) {
      if (e.place() == p) return true;
      continue;
    }
    const auto& br = e.block().branches;
    for (std::size_t j = 0; j < br.size(); ++j) {
      path.emplace_back(i, j);
      if (locate(br[j], p, path)) return true;
      path.pop_back();
    }
  }
  return false;
}

CNode restrict_to_path(const CNode& n, const std::vector<Step>& path, std::size_t depth) {
  auto [ei, bi] = path[depth];
  const CBlock& block = n.elements[ei].block();
  CBlock kept;
  for (std::size_t j = 0; j < block.branches.size(); ++j) {
    if (j != bi) kept.branches.push_back(block.branches[j]);
    else if (depth + 1 < path.size()) kept.branches.push_back(restrict_to_path(block.branches[j], path, depth + 1));
  }
  CNode out;
  out.elements.push_back(CElement{std::move(kept)});
  return out;
}

using Raw = std::vector<std::vector<Label>>;

Raw enumerate(const CNode& n) {
  Raw out;
  for (const auto& e : n.elements) {
    if (e.is_place()) {
      out.push_back({e.place()});
      continue;
    }
    Raw acc{{}};
    for (const auto& branch : e.block().branches) {
      Raw sub = enumerate(branch);
      Raw next;
      for (const auto& a : acc)
        for (const auto& b : sub) {
          auto m = a;
          m.insert(m.end(), b.begin(), b.end());
          next.push_back(std::move(m));
        }
      acc = std::move(next);
      if (acc.empty()) break;
    }
    out.insert(out.end(), acc.begin(), acc.end());
  }
  return out;
}

CNode without(const CNode& n, const PlaceSet& s) {
  CNode out;
  for (const auto& e : n.elements) {
    if (e.is_place()) {
      if (!s.count(e.place())) out.elements.push_back(e);
      continue;
    }
    CBlock b;
    for (const auto& br : e.block().branches) b.branches.push_back(without(br, s));
    out.elements.push_back(CElement{std::move(b)});
  }
  return out;
}

bool generable(const CNode& n) {
  for (const auto& e : n.elements) {
    if (e.is_place()) return true;
    const auto& br = e.block().branches;
    if (std::all_of(br.begin(), br.end(), generable)) return true;
  }
  return false;
}

CNode pruned(const CNode& n) {
  CNode out;
  for (const auto& e : n.elements) {
    if (e.is_place()) {
      out.elements.push_back(e);
      continue;
    }
    CBlock b;
    for (const auto& br : e.block().branches) b.branches.push_back(pruned(br));
    if (std::all_of(b.branches.begin(), b.branches.end(), generable)) out.elements.push_back(CElement{std::move(b)});
  }
  return out;
}

bool empty_path(const CNode& n) {
  for (const auto& e : n.elements)
    if (e.is_place()) return false;
  if (n.elements.empty()) return true;
  for (const auto& e : n.elements)
    for (const auto& br : e.block().branches)
      if (empty_path(br)) return true;
  return false;
}

// Kuhn's augmenting paths. Returns, for every left vertex, its right partner
// when all left vertices can be matched.
std::optional<std::vector<std::size_t>> saturating_matching(const std::vector<std::vector<bool>>& ok,
                                                            std::size_t right) {
  const std::size_t left = ok.size();
  constexpr std::size_t kFree = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(right, kFree);
  std::function<bool(std::size_t, std::vector<bool>&)> augment = [&](std::size_t u, std::vector<bool>& seen) {
    for (std::size_t v = 0; v < right; ++v) {
      if (!ok[u][v] || seen[v]) continue;
      seen[v] = true;
      if (owner[v] == kFree || augment(owner[v], seen)) {
        owner[v] = u;
        return true;
      }
    }
    return false;
  };
  for (std::size_t u = 0; u < left; ++u) {
    std::vector<bool> seen(right, false);
    if (!augment(u, seen)) return std::nullopt;
  }
  std::vector<std::size_t> partner(left, kFree);
  for (std::size_t v = 0; v < right; ++v)
    if (owner[v] != kFree) partner[owner[v]] = v;
  return partner;
}

class Embedder {
 public:
  bool node(const CNode& a, const CNode& b) {
    auto key = std::make_pair(&a, &b);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool r = node_uncached(a, b).has_value();
    memo_.emplace(key, r);
    return r;
  }

  std::optional<MpeWitness> witness(const CNode& a, const CNode& b) {
    auto blocks = node_uncached(a, b);
    if (!blocks) return std::nullopt;
    MpeWitness w;
    auto as = a.blocks();
    auto bs = b.blocks();
    for (std::size_t i = 0; i < as.size(); ++i) {
      MpeWitness::BlockMatch m;
      m.source = i;
      m.target = (*blocks)[i];
      m.branch_map = *branch_matching(*as[i], *bs[m.target]);
      for (std::size_t k = 0; k < m.branch_map.size(); ++k)
        m.branches.push_back(*witness(as[i]->branches[k], bs[m.target]->branches[m.branch_map[k]]));
      w.blocks.push_back(std::move(m));
    }
    return w;
  }

 private:
  std::optional<std::vector<std::size_t>> node_uncached(const CNode& a, const CNode& b) {
    auto pb = b.places();
    std::set<Label> target(pb.begin(), pb.end());
    for (const auto& p : a.places())
      if (!target.count(p)) return std::nullopt;
    auto as = a.blocks();
    auto bs = b.blocks();
    std::vector<std::vector<bool>> ok(as.size(), std::vector<bool>(bs.size(), false));
    for (std::size_t i = 0; i < as.size(); ++i)
      for (std::size_t j = 0; j < bs.size(); ++j) ok[i][j] = branch_matching(*as[i], *bs[j]).has_value();
    return saturating_matching(ok, bs.size());
  }

  std::optional<std::vector<std::size_t>> branch_matching(const CBlock& x, const CBlock& y) {
    if (x.branches.size() != y.branches.size()) return std::nullopt;
    const auto n = x.branches.size();
    std::vector<std::vector<bool>> ok(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) ok[i][j] = node(x.branches[i], y.branches[j]);
    return saturating_matching(ok, n);
  }

  std::map<std::pair<const CNode*, const CNode*>, bool> memo_;
};

void mgs(const CNode& n, std::string& out) {
  out += '{';
  bool first = true;
  for (const auto& e : n.elements) {
    if (!first) out += ',';
    first = false;
    if (e.is_place()) {
      out += e.place();
      continue;
    }
    out += '(';
    bool first_branch = true;
    for (const auto& br : e.block().branches) {
      if (!first_branch) out += ',';
      first_branch = false;
      mgs(br, out);
    }
    out += ')';
  }
  out += '}';
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

}  // namespace

CTree build_ctree(const ecws::BlockTree& tree) {
  CTree c;
  collect(tree.root, c.root);
  return c;
}

PlaceSet places(const CTree& c) {
  PlaceSet out;
  gather(c.root, out);
  return out;
}

bool contains(const CTree& c, const Label& p) {
  std::vector<Step> path;
  return locate(c.root, p, path);
}

bool in_root(const CTree& c, const Label& p) {
  auto ps = c.root.places();
  return std::find(ps.begin(), ps.end(), p) != ps.end();
}

CTree gcs(const Label& p, const CTree& c) {
  std::vector<Step> path;
  if (!locate(c.root, p, path)) throw UnknownPlaceError(p);
  if (path.empty()) return CTree{};
  return CTree{restrict_to_path(c.root, path, 0)};
}

MarkingSet markings_of(const CTree& c) {
  MarkingSet out;
  for (auto& m : enumerate(c.root)) out.insert(Marking(std::move(m)));
  return out;
}

Marking sample_marking(const Label& p, const CTree& c, std::mt19937_64& rng) {
  std::set<Label> m{p};
  CTree g = gcs(p, c);
  for (auto avail = places(g); !avail.empty(); avail = places(g)) {
    std::uniform_int_distribution<std::size_t> pick(0, avail.size() - 1);
    auto q = *std::next(avail.begin(), static_cast<std::ptrdiff_t>(pick(rng)));
    m.insert(q);
    g = gcs(q, g);
  }
  return Marking(m);
}

CTree delete_places(const CTree& c, const PlaceSet& s) { return CTree{without(c.root, s)}; }

CTree prune_ungenerable(const CTree& c) { return CTree{pruned(c.root)}; }

bool has_empty_path(const CTree& c) { return empty_path(c.root); }

bool is_dysfunctional(const CTree& c) {
  // Every non-generable tree has an empty path, so its absence settles it.
  if (!has_empty_path(c)) return false;
  return !generable(c.root);
}

bool is_breakoff(const CTree& c, const PlaceSet& s) { return is_dysfunctional(delete_places(c, s)); }

std::optional<MpeWitness> find_mpe(const CTree& c, const CTree& c2) {
  Embedder e;
  return e.witness(c.root, c2.root);
}

bool mpe_exists(const CTree& c, const CTree& c2) {
  Embedder e;
  return e.node(c.root, c2.root);
}

std::string to_mgs(const CTree& c) {
  std::string out;
  mgs(c.root, out);
  return out;
}

std::string to_dot(const CTree& c, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << quote(name) << " {\n";
  os << "  node [fontname=\"Helvetica\"];\n";
  std::size_t counter = 0;
  std::function<std::string(const CNode&)> emit = [&](const CNode& n) {
    std::string id = "n" + std::to_string(counter++);
    std::string label;
    for (const auto& p : n.places()) label += (label.empty() ? "" : ", ") + p;
    os << "  " << id << " [shape=box, label=" << quote(label) << "];\n";
    for (const auto* b : n.blocks()) {
      std::string bid = "b" + std::to_string(counter++);
      os << "  " << bid << " [shape=square, label=\"\", width=0.25, height=0.25];\n";
      os << "  " << id << " -> " << bid << ";\n";
      for (const auto& br : b->branches) {
        std::string child = emit(br);
        os << "  " << bid << " -> " << child << ";\n";
      }
    }
    return id;
  };
  emit(c.root);
  os << "}\n";
  return os.str();
}

}  // namespace migra::ctree
