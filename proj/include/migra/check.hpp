#pragma once

// Structural analysis versus reachability ground truth on one net pair.

#include <string>
#include <vector>

#include "migra/gen.hpp"
#include "migra/regions.hpp"
#include "migra/wfnet.hpp"

namespace migra::check {

struct PairCheck {
  bool scr = true;
  bool pscr_exists = true;
  bool pscr = true;
  bool per_place = true;
  bool lemma = true;             // mpe_exists(C, C') iff R(N) is a subset of R(N')
  bool tree_covers = true;       // R(N) within the markings of C
  bool tree_exact = true;        // and equal to them
  std::size_t contradictions = 0;  // definite decisions the oracle refutes
  std::size_t unknown_with_pscr = 0;

  bool regions_agree() const { return scr && pscr_exists && pscr && per_place; }
  bool all() const {
    return regions_agree() && lemma && tree_covers && tree_exact && contradictions == 0 && unknown_with_pscr == 0;
  }
  std::string failures() const;
};

PairCheck check_pair(const ecws::BlockTree& old_tree, const ecws::BlockTree& new_tree,
                     std::size_t cap = wfnet::kDefaultStateCap);

struct FuzzSummary {
  std::size_t pairs = 0;
  std::size_t region_failures = 0;
  std::size_t lemma_failures = 0;
  std::size_t cover_failures = 0;
  std::size_t exact_failures = 0;
  std::size_t contradictions = 0;
  std::vector<gen::NetPair> counterexamples;  // minimized, first few only
};

FuzzSummary fuzz(std::uint64_t seed, std::size_t count, const gen::Config& cfg = {}, std::size_t keep = 5);

}  // namespace migra::check
