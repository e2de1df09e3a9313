#include "migra/gen.hpp"

#include <algorithm>
#include <set>

namespace migra::gen {

using ecws::AndBlock;
using ecws::BlockTree;
using ecws::Element;
using ecws::LoopBlock;
using ecws::Place;
using ecws::Sequence;
using ecws::Transition;
using ecws::XorBlock;

namespace {

using Rng = std::mt19937_64;

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// ---------------------------------------------------------------------------
// Generation

// Random composition of `total` into `parts` values, each at least `least`.
std::vector<int> split(Rng& rng, int total, int parts, int least) {
  std::vector<int> out(static_cast<std::size_t>(parts), least);
  for (int k = total - parts * least; k > 0; --k) ++out[static_cast<std::size_t>(uniform(rng, 0, parts - 1))];
  return out;
}

// Builds nets that use exactly the requested number of places.
class Builder {
 public:
  Builder(Rng& rng, const Config& cfg) : rng_(rng), cfg_(cfg) {}

  Sequence pnet(int depth, int budget) {
    Sequence s;
    s.items.push_back(place());
    int left = budget - 1;
    while (left > 0) {
      if (depth >= cfg_.max_depth || left < 2 || !coin(rng_, 0.7)) {
        s.items.push_back(transition());
        s.items.push_back(place());
        left -= 1;
        continue;
      }
      int inner = uniform(rng_, std::max(1, (left - 1) / 2), left - 1);  // one place stays for after the block
      left -= inner + 1;
      int kind = uniform(rng_, 0, 2);
      if (kind == 0 && inner < 2) kind = 1 + uniform(rng_, 0, 1);
      if (kind == 1) {
        s.items.push_back(Element{xor_block(depth, inner)});
        s.items.push_back(place());
        continue;
      }
      s.items.push_back(transition());
      // AND and loop blocks may follow each other through one transition.
      for (;;) {
        s.items.push_back(kind == 0 ? Element{and_block(depth, inner)} : Element{loop_block(depth, inner)});
        s.items.push_back(transition());
        if (left < 3 || !coin(rng_, 0.15)) break;
        inner = uniform(rng_, 1, left - 2);
        left -= inner;
        kind = inner >= 2 && coin(rng_, 0.5) ? 0 : 2;
      }
      s.items.push_back(place());
    }
    return s;
  }

  // Transition-bordered run holding `budget` places (zero gives one transition).
  Sequence tnet(int depth, int budget) {
    Sequence s;
    s.items.push_back(transition());
    if (budget > 0) {
      for (auto& e : pnet(depth, budget).items) s.items.push_back(std::move(e));
      s.items.push_back(transition());
    }
    return s;
  }

 private:
  AndBlock and_block(int depth, int inner) {
    int n = inner >= 3 && coin(rng_, 0.25) ? 3 : 2;
    AndBlock b;
    for (int part : split(rng_, inner, n, 1)) b.branches.push_back(pnet(depth + 1, part));
    return b;
  }

  XorBlock xor_block(int depth, int inner) {
    int n = coin(rng_, 0.25) ? 3 : 2;
    XorBlock b;
    for (int part : split(rng_, inner, n, 0)) b.branches.push_back(tnet(depth + 1, part));
    return b;
  }

  LoopBlock loop_block(int depth, int inner) {
    int back = uniform(rng_, 0, inner - 1);
    LoopBlock b;
    b.forward = pnet(depth + 1, inner - back);
    b.back = tnet(depth + 1, back);
    return b;
  }

  Element place() { return Element{Place{"x"}}; }
  Element transition() { return Element{Transition{"x"}}; }

  Rng& rng_;
  const Config& cfg_;
};

void relabel(Sequence& s, int& np, int& nt) {
  for (auto& e : s.items) {
    std::visit(
        [&](auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Place>) n.label = "p" + std::to_string(++np);
          else if constexpr (std::is_same_v<T, Transition>) n.label = "t" + std::to_string(++nt);
          else if constexpr (std::is_same_v<T, LoopBlock>) {
            relabel(n.forward, np, nt);
            relabel(n.back, np, nt);
          } else {
            for (auto& b : n.branches) relabel(b, np, nt);
          }
        },
        e.node);
  }
}

int depth_of(const Sequence& s) {
  int d = 0;
  for (const auto& e : s.items) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, LoopBlock>) {
            d = std::max({d, 1 + depth_of(n.forward), 1 + depth_of(n.back)});
          } else if constexpr (std::is_same_v<T, AndBlock> || std::is_same_v<T, XorBlock>) {
            for (const auto& b : n.branches) d = std::max(d, 1 + depth_of(b));
          }
        },
        e.node);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Edit sites. An edit is described by indices so that it can be replayed on a
// fresh copy of the tree.

void walk(Sequence& s, std::vector<Sequence*>& out) {
  out.push_back(&s);
  for (auto& e : s.items) {
    std::visit(
        [&](auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, LoopBlock>) {
            walk(n.forward, out);
            walk(n.back, out);
          } else if constexpr (std::is_same_v<T, AndBlock> || std::is_same_v<T, XorBlock>) {
            for (auto& b : n.branches) walk(b, out);
          }
        },
        e.node);
  }
}

std::vector<Sequence*> sequences(BlockTree& t) {
  std::vector<Sequence*> out;
  walk(t.root, out);
  return out;
}

class Fresh {
 public:
  explicit Fresh(const BlockTree& t) {
    for (auto& l : ecws::place_labels(t)) used_.insert(l);
    for (auto& l : ecws::transition_labels(t)) used_.insert(l);
  }
  Element place() { return Element{Place{next("q")}}; }
  Element transition() { return Element{Transition{next("u")}}; }

 private:
  std::string next(const std::string& prefix) {
    for (;;) {
      std::string l = prefix + std::to_string(++counter_);
      if (used_.insert(l).second) return l;
    }
  }
  std::set<Label> used_;
  int counter_ = 0;
};

using Edit = std::function<void(std::vector<Sequence*>&)>;

template <typename T>
bool holds(const Element& e) {
  return std::holds_alternative<T>(e.node);
}

Sequence slice(const Sequence& s, std::size_t from, std::size_t to) {
  Sequence out;
  out.items.assign(s.items.begin() + static_cast<std::ptrdiff_t>(from), s.items.begin() + static_cast<std::ptrdiff_t>(to));
  return out;
}

void splice(Sequence& s, std::size_t from, std::size_t to, std::vector<Element> with) {
  s.items.erase(s.items.begin() + static_cast<std::ptrdiff_t>(from), s.items.begin() + static_cast<std::ptrdiff_t>(to));
  s.items.insert(s.items.begin() + static_cast<std::ptrdiff_t>(from), std::make_move_iterator(with.begin()),
                 std::make_move_iterator(with.end()));
}

std::vector<Edit> removal_sites(const std::vector<Sequence*>& seqs) {
  std::vector<Edit> out;
  for (std::size_t si = 0; si < seqs.size(); ++si) {
    const Sequence& s = *seqs[si];
    const std::size_t n = s.items.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Element& e = s.items[i];
      if (e.is_place()) {
        if (i > 0 && i + 1 < n && s.items[i - 1].is_transition() && s.items[i + 1].is_transition()) {
          out.push_back([si, i](auto& q) { splice(*q[si], i, i + 2, {}); });
        } else if (i == 0 && n >= 3 && s.items[2].is_place()) {
          out.push_back([si](auto& q) { splice(*q[si], 0, 2, {}); });
        } else if (i + 1 == n && n >= 3 && s.items[n - 3].is_place()) {
          out.push_back([si, n](auto& q) { splice(*q[si], n - 2, n, {}); });
        }
      } else if (holds<AndBlock>(e)) {
        const auto& br = std::get<AndBlock>(e.node).branches;
        for (std::size_t k = 0; k < br.size(); ++k) {
          if (br[k].items.size() != 1) continue;
          out.push_back([si, i, k](auto& q) {
            auto& seq = *q[si];
            auto& block = std::get<AndBlock>(seq.items[i].node);
            if (block.branches.size() > 2) {
              block.branches.erase(block.branches.begin() + static_cast<std::ptrdiff_t>(k));
            } else {
              Sequence other = block.branches[1 - k];
              splice(seq, i, i + 1, std::move(other.items));
            }
          });
        }
      }
    }
  }
  return out;
}

std::vector<Edit> insertion_sites(const std::vector<Sequence*>& seqs, Fresh& fresh) {
  std::vector<Edit> out;
  for (std::size_t si = 0; si < seqs.size(); ++si) {
    const Sequence& s = *seqs[si];
    for (std::size_t i = 0; i < s.items.size(); ++i) {
      if (s.items[i].is_place()) {
        out.push_back([si, i, &fresh](auto& q) {
          splice(*q[si], i + 1, i + 1, {fresh.transition(), fresh.place()});
        });
      } else if (holds<AndBlock>(s.items[i])) {
        out.push_back([si, i, &fresh](auto& q) {
          Sequence branch;
          branch.items.push_back(fresh.place());
          std::get<AndBlock>(q[si]->items[i].node).branches.push_back(std::move(branch));
        });
      }
    }
  }
  return out;
}

std::vector<Edit> swap_sites(const std::vector<Sequence*>& seqs) {
  std::vector<Edit> out;
  for (std::size_t si = 0; si < seqs.size(); ++si) {
    const Sequence& s = *seqs[si];
    for (std::size_t i = 0; i < s.items.size(); ++i) {
      if (!holds<AndBlock>(s.items[i])) continue;
      const auto& br = std::get<AndBlock>(s.items[i].node).branches;
      for (std::size_t j = 0; j < br.size(); ++j)
        for (std::size_t k = j + 1; k < br.size(); ++k)
          for (std::size_t a = 2; a < br[j].items.size(); a += 2)
            for (std::size_t b = 2; b < br[k].items.size(); b += 2) {
              out.push_back([si, i, j, k, a, b](auto& q) {
                auto& block = std::get<AndBlock>(q[si]->items[i].node);
                Sequence& x = block.branches[j];
                Sequence& y = block.branches[k];
                Sequence tx = slice(x, a, x.items.size());
                Sequence ty = slice(y, b, y.items.size());
                splice(x, a, x.items.size(), std::move(ty.items));
                splice(y, b, y.items.size(), std::move(tx.items));
              });
            }
    }
  }
  return out;
}

std::vector<Edit> block_change_sites(const std::vector<Sequence*>& seqs, Fresh& fresh) {
  std::vector<Edit> out;
  for (std::size_t si = 0; si < seqs.size(); ++si) {
    const Sequence& s = *seqs[si];
    for (std::size_t i = 0; i < s.items.size(); ++i) {
      const Element& e = s.items[i];
      if (holds<AndBlock>(e) && i > 0) {
        // AND -> XOR: fork, block and join collapse into one choice.
        out.push_back([si, i, &fresh](auto& q) {
          auto& seq = *q[si];
          auto block = std::get<AndBlock>(seq.items[i].node);
          XorBlock x;
          for (std::size_t k = 0; k < block.branches.size(); ++k) {
            Sequence b;
            b.items.push_back(k == 0 ? seq.items[i - 1] : fresh.transition());
            for (auto& el : block.branches[k].items) b.items.push_back(std::move(el));
            b.items.push_back(k == 0 ? seq.items[i + 1] : fresh.transition());
            x.branches.push_back(std::move(b));
          }
          splice(seq, i - 1, i + 2, {Element{std::move(x)}});
        });
        if (std::get<AndBlock>(e.node).branches.size() == 2) {
          // AND -> loop: second branch becomes the back path.
          out.push_back([si, i, &fresh](auto& q) {
            auto& seq = *q[si];
            auto block = std::get<AndBlock>(seq.items[i].node);
            LoopBlock l;
            l.forward = block.branches[0];
            l.back.items.push_back(fresh.transition());
            for (auto& el : block.branches[1].items) l.back.items.push_back(std::move(el));
            l.back.items.push_back(fresh.transition());
            seq.items[i] = Element{std::move(l)};
          });
        }
      } else if (holds<XorBlock>(e)) {
        const auto& br = std::get<XorBlock>(e.node).branches;
        bool all_inner = std::all_of(br.begin(), br.end(), [](const Sequence& b) { return b.items.size() >= 3; });
        if (all_inner) {
          // XOR -> AND: branch interiors run concurrently.
          out.push_back([si, i](auto& q) {
            auto& seq = *q[si];
            auto block = std::get<XorBlock>(seq.items[i].node);
            AndBlock a;
            for (auto& b : block.branches) a.branches.push_back(slice(b, 1, b.items.size() - 1));
            Element fork = block.branches[0].items.front();
            Element join = block.branches[0].items.back();
            splice(seq, i, i + 1, {fork, Element{std::move(a)}, join});
          });
        }
        if (br.size() == 2) {
          for (std::size_t f = 0; f < 2; ++f) {
            if (br[f].items.size() < 3) continue;
            // XOR -> loop: one branch stays forward, the other becomes the back path.
            out.push_back([si, i, f](auto& q) {
              auto& seq = *q[si];
              auto block = std::get<XorBlock>(seq.items[i].node);
              Sequence& fw = block.branches[f];
              LoopBlock l{slice(fw, 1, fw.items.size() - 1), block.branches[1 - f]};
              Element entry = fw.items.front();
              Element exit = fw.items.back();
              splice(seq, i, i + 1, {entry, Element{std::move(l)}, exit});
            });
          }
        }
      } else if (holds<LoopBlock>(e) && i > 0) {
        // loop -> XOR
        out.push_back([si, i](auto& q) {
          auto& seq = *q[si];
          auto l = std::get<LoopBlock>(seq.items[i].node);
          XorBlock x;
          Sequence first;
          first.items.push_back(seq.items[i - 1]);
          for (auto& el : l.forward.items) first.items.push_back(std::move(el));
          first.items.push_back(seq.items[i + 1]);
          x.branches.push_back(std::move(first));
          x.branches.push_back(std::move(l.back));
          splice(seq, i - 1, i + 2, {Element{std::move(x)}});
        });
        if (std::get<LoopBlock>(e.node).back.items.size() >= 3) {
          // loop -> AND
          out.push_back([si, i](auto& q) {
            auto& seq = *q[si];
            auto l = std::get<LoopBlock>(seq.items[i].node);
            AndBlock a;
            a.branches.push_back(std::move(l.forward));
            a.branches.push_back(slice(l.back, 1, l.back.items.size() - 1));
            seq.items[i] = Element{std::move(a)};
          });
        }
      }
    }
  }
  return out;
}

std::vector<Edit> unwrap_sites(const std::vector<Sequence*>& seqs) {
  std::vector<Edit> out;
  for (std::size_t si = 0; si < seqs.size(); ++si) {
    const Sequence& s = *seqs[si];
    for (std::size_t i = 0; i < s.items.size(); ++i) {
      const Element& e = s.items[i];
      std::size_t options = 0;
      if (holds<AndBlock>(e)) options = std::get<AndBlock>(e.node).branches.size();
      else if (holds<XorBlock>(e)) options = std::get<XorBlock>(e.node).branches.size();
      else if (holds<LoopBlock>(e)) options = 1;
      for (std::size_t k = 0; k < options; ++k) {
        out.push_back([si, i, k](auto& q) {
          auto& seq = *q[si];
          Sequence keep = std::visit(
              [k](auto& n) -> Sequence {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, LoopBlock>) return n.forward;
                else if constexpr (std::is_same_v<T, AndBlock> || std::is_same_v<T, XorBlock>) return n.branches[k];
                else return {};
              },
              seq.items[i].node);
          splice(seq, i, i + 1, std::move(keep.items));
        });
      }
    }
  }
  return out;
}

std::optional<BlockTree> apply(const BlockTree& tree, const Edit& edit) {
  BlockTree copy = tree;
  auto seqs = sequences(copy);
  edit(seqs);
  try {
    ecws::validate(copy);
  } catch (const ecws::EcwsError&) {
    return std::nullopt;
  }
  return copy;
}

}  // namespace

std::size_t place_count(const BlockTree& tree) { return ecws::place_labels(tree).size(); }

int nesting_depth(const BlockTree& tree) { return depth_of(tree.root); }

ecws::BlockTree random_tree(std::mt19937_64& rng, const Config& cfg) {
  Builder b(rng, cfg);
  BlockTree t{b.pnet(0, uniform(rng, 2, std::max(2, cfg.max_places)))};
  int np = 0, nt = 0;
  relabel(t.root, np, nt);
  return t;
}

std::string_view to_string(Mutation m) {
  switch (m) {
    case Mutation::InsertPlace: return "insert-place";
    case Mutation::RemovePlace: return "remove-place";
    case Mutation::BranchSwap: return "branch-swap";
    case Mutation::BlockTypeChange: return "block-type-change";
  }
  return "?";
}

std::optional<ecws::BlockTree> mutate(const ecws::BlockTree& tree, Mutation kind, std::mt19937_64& rng) {
  BlockTree probe = tree;
  auto seqs = sequences(probe);
  Fresh fresh(tree);
  std::vector<Edit> sites;
  switch (kind) {
    case Mutation::InsertPlace: sites = insertion_sites(seqs, fresh); break;
    case Mutation::RemovePlace: sites = removal_sites(seqs); break;
    case Mutation::BranchSwap: sites = swap_sites(seqs); break;
    case Mutation::BlockTypeChange: sites = block_change_sites(seqs, fresh); break;
  }
  std::shuffle(sites.begin(), sites.end(), rng);
  for (const auto& edit : sites) {
    if (auto t = apply(tree, edit)) return t;
  }
  return std::nullopt;
}

NetPair random_pair(std::mt19937_64& rng, const Config& cfg) {
  static constexpr Mutation kinds[] = {Mutation::InsertPlace, Mutation::RemovePlace, Mutation::BranchSwap,
                                       Mutation::BlockTypeChange};
  for (;;) {
    NetPair pair{random_tree(rng, cfg), {}, {}};
    pair.new_net = pair.old_net;
    int wanted = uniform(rng, 1, 3);
    for (int step = 0; step < wanted; ++step) {
      std::vector<Mutation> order(std::begin(kinds), std::end(kinds));
      std::shuffle(order.begin(), order.end(), rng);
      for (Mutation m : order) {
        if (auto t = mutate(pair.new_net, m, rng)) {
          pair.new_net = std::move(*t);
          pair.applied.push_back(m);
          break;
        }
      }
    }
    if (pair.applied.empty()) continue;
    if (place_count(pair.new_net) > static_cast<std::size_t>(cfg.max_places)) continue;
    if (nesting_depth(pair.new_net) > cfg.max_depth) continue;
    return pair;
  }
}

std::vector<NetPair> corpus(std::uint64_t seed, std::size_t count, const Config& cfg) {
  std::mt19937_64 rng(seed);
  std::vector<NetPair> out;
  out.reserve(count);
  while (out.size() < count) out.push_back(random_pair(rng, cfg));
  return out;
}

std::vector<ecws::BlockTree> shrink(const ecws::BlockTree& tree) {
  BlockTree probe = tree;
  auto seqs = sequences(probe);
  auto sites = removal_sites(seqs);
  auto unwraps = unwrap_sites(seqs);
  sites.insert(sites.end(), unwraps.begin(), unwraps.end());
  std::vector<BlockTree> out;
  for (const auto& edit : sites) {
    if (auto t = apply(tree, edit)) out.push_back(std::move(*t));
  }
  return out;
}

NetPair minimize(NetPair pair, const std::function<bool(const NetPair&)>& fails) {
  auto labels = [](const BlockTree& t) {
    auto v = ecws::place_labels(t);
    return std::set<Label>(v.begin(), v.end());
  };
  auto dropped = [&](const BlockTree& from, const BlockTree& to) {
    std::set<Label> out;
    auto a = labels(from), b = labels(to);
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
  };
  for (bool progress = true; progress;) {
    progress = false;
    auto olds = shrink(pair.old_net);
    auto news = shrink(pair.new_net);
    // Prefer dropping the same places from both nets.
    for (const auto& o : olds) {
      auto gone = dropped(pair.old_net, o);
      for (const auto& n : news) {
        if (dropped(pair.new_net, n) != gone) continue;
        NetPair cand{o, n, pair.applied};
        if (fails(cand)) {
          pair = std::move(cand);
          progress = true;
          break;
        }
      }
      if (progress) break;
    }
    if (progress) continue;
    for (const auto& o : olds) {
      NetPair cand{o, pair.new_net, pair.applied};
      if (fails(cand)) {
        pair = std::move(cand);
        progress = true;
        break;
      }
    }
    if (progress) continue;
    for (const auto& n : news) {
      NetPair cand{pair.old_net, n, pair.applied};
      if (fails(cand)) {
        pair = std::move(cand);
        progress = true;
        break;
      }
    }
  }
  return pair;
}

}  // namespace migra::gen
