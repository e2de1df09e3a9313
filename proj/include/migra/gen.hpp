#pragma once

// Random block-structured nets and migration pairs for property testing.

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "migra/ecws.hpp"

namespace migra::gen {

struct Config {
  int max_depth = 4;    // block nesting
  int max_places = 14;  // per net
};

ecws::BlockTree random_tree(std::mt19937_64& rng, const Config& cfg = {});

enum class Mutation { InsertPlace, RemovePlace, BranchSwap, BlockTypeChange };

std::string_view to_string(Mutation m);

/// Applies one mutation of the given kind at a random applicable site;
/// nullopt when the tree has no such site.
std::optional<ecws::BlockTree> mutate(const ecws::BlockTree& tree, Mutation kind, std::mt19937_64& rng);

struct NetPair {
  ecws::BlockTree old_net;
  ecws::BlockTree new_net;
  std::vector<Mutation> applied;
};

/// Random old net and a new net derived from it by 1–3 mutations. Both nets
/// respect the configured bounds.
NetPair random_pair(std::mt19937_64& rng, const Config& cfg = {});

std::vector<NetPair> corpus(std::uint64_t seed, std::size_t count, const Config& cfg = {});

/// One-step simplifications of a tree: drop one place, or replace a block by
/// one of its branches. Each result is valid.
std::vector<ecws::BlockTree> shrink(const ecws::BlockTree& tree);

/// Greedy shrinking of a failing pair; `fails` must hold for the input.
NetPair minimize(NetPair pair, const std::function<bool(const NetPair&)>& fails);

std::size_t place_count(const ecws::BlockTree& tree);

int nesting_depth(const ecws::BlockTree& tree);

}  // namespace migra::gen
