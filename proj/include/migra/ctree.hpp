#pragma once

// Conjoint trees (C-trees): the concurrency skeleton of a block-structured net.
//
// A node lists mutually exclusive elements. An element is either a place or a
// C-block standing for an AND block; the branches of a C-block are nodes that
// are marked simultaneously. Sequences, XOR blocks and loops do not nest, so
// every place of one concurrency level lands in the same node.

#include <cstddef>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "migra/ecws.hpp"
#include "migra/wfnet.hpp"

namespace migra::ctree {

using PlaceSet = std::set<Label>;

struct CNode;

struct CBlock {
  std::vector<CNode> branches;
  bool operator==(const CBlock&) const;
};

struct CElement {
  std::variant<Label, CBlock> value;

  bool is_place() const { return std::holds_alternative<Label>(value); }
  const Label& place() const { return std::get<Label>(value); }
  const CBlock& block() const { return std::get<CBlock>(value); }
  bool operator==(const CElement&) const = default;
};

struct CNode {
  std::vector<CElement> elements;  // in order of appearance in the net

  std::vector<Label> places() const;
  std::vector<const CBlock*> blocks() const;
  bool operator==(const CNode&) const = default;
};

inline bool CBlock::operator==(const CBlock& o) const { return branches == o.branches; }

struct CTree {
  CNode root;
  bool operator==(const CTree&) const = default;
};

CTree build_ctree(const ecws::BlockTree& tree);

PlaceSet places(const CTree& c);

bool contains(const CTree& c, const Label& p);

/// p is marked only by itself, i.e. it sits in the root node.
bool in_root(const CTree& c, const Label& p);

/// Generator of concurrent submarkings: the part of c concurrent with p.
/// Ancestor nodes become place-less connectors holding only the path block;
/// p's own node is dropped from its parent block. A root place yields the
/// empty tree. Throws UnknownPlaceError.
CTree gcs(const Label& p, const CTree& c);

/// Every complete marking c can generate (one element of the root node,
/// all branches of a chosen block).
MarkingSet markings_of(const CTree& c);

/// Random walk over GCS trees building one marking that contains p.
Marking sample_marking(const Label& p, const CTree& c, std::mt19937_64& rng);

CTree delete_places(const CTree& c, const PlaceSet& s);

/// Drops every block that has a branch generating no marking. The result
/// generates exactly the same markings as `c`.
CTree prune_ungenerable(const CTree& c);

/// A path from the root through place-less nodes down to an empty leaf.
/// Necessary for dysfunctionality; not sufficient once a node holds sibling
/// blocks, since another block may still be complete.
bool has_empty_path(const CTree& c);

bool is_dysfunctional(const CTree& c);

bool is_breakoff(const CTree& c, const PlaceSet& s);

/// Mapping of root blocks of c onto root blocks of c2 with, per pair, a
/// bijection of branches whose pairs are again embedded.
struct MpeWitness {
  struct BlockMatch {
    std::size_t source;  // index among c's root blocks
    std::size_t target;  // index among c2's root blocks
    std::vector<std::size_t> branch_map;  // source branch i -> target branch
    std::vector<MpeWitness> branches;
  };
  std::vector<BlockMatch> blocks;
};

std::optional<MpeWitness> find_mpe(const CTree& c, const CTree& c2);

bool mpe_exists(const CTree& c, const CTree& c2);

/// Nested-set notation, e.g. "{p1,({p2},{p3}),p4}".
std::string to_mgs(const CTree& c);

std::string to_dot(const CTree& c, const std::string& name = "ctree");

}  // namespace migra::ctree
