#include "migra/check.hpp"

#include <algorithm>

namespace migra::check {

std::string PairCheck::failures() const {
  std::string out;
  auto add = [&](bool ok, const char* what) {
    if (ok) return;
    if (!out.empty()) out += ", ";
    out += what;
  };
  add(scr, "scr");
  add(pscr_exists, "pscr_exists");
  add(pscr, "pscr");
  add(per_place, "per_place");
  add(lemma, "mpe-vs-inclusion");
  add(tree_covers, "ctree-cover");
  add(tree_exact, "ctree-exact");
  add(contradictions == 0, "decision-contradiction");
  add(unknown_with_pscr == 0, "unknown-with-pscr");
  return out;
}

PairCheck check_pair(const ecws::BlockTree& old_tree, const ecws::BlockTree& new_tree, std::size_t cap) {
  PairCheck c;
  auto oracle = wfnet::oracle_classify(ecws::build_net(old_tree), ecws::build_net(new_tree), cap);
  auto ct = ctree::build_ctree(old_tree);
  auto ct2 = ctree::build_ctree(new_tree);
  auto report = regions::analyze(ct, ct2, ecws::place_labels(old_tree));

  c.scr = report.scr == oracle.scr;
  c.pscr_exists = report.pscr_exists == oracle.pscr_exists;
  c.pscr = report.pscr == oracle.pscr;
  c.per_place = report.per_place == oracle.per_place;

  const auto& r_old = oracle.reachable_old;
  const auto& r_new = oracle.reachable_new;
  bool inclusion = std::includes(r_new.begin(), r_new.end(), r_old.begin(), r_old.end());
  c.lemma = ctree::mpe_exists(ct, ct2) == inclusion;

  auto generated = ctree::markings_of(ct);
  c.tree_covers = std::includes(generated.begin(), generated.end(), r_old.begin(), r_old.end());
  c.tree_exact = generated == r_old;

  for (const auto& m : r_old) {
    auto d = regions::decide_marking(m, report);
    bool migratable = r_new.count(m) > 0;
    if (d == regions::Decision::Unknown) {
      if (report.pscr_exists) ++c.unknown_with_pscr;
    } else if ((d == regions::Decision::Migratable) != migratable) {
      ++c.contradictions;
    }
  }
  return c;
}

FuzzSummary fuzz(std::uint64_t seed, std::size_t count, const gen::Config& cfg, std::size_t keep) {
  FuzzSummary s;
  auto fails = [](const gen::NetPair& p) { return !check_pair(p.old_net, p.new_net).all(); };
  for (auto& pair : gen::corpus(seed, count, cfg)) {
    ++s.pairs;
    auto c = check_pair(pair.old_net, pair.new_net);
    s.region_failures += !c.regions_agree();
    s.lemma_failures += !c.lemma;
    s.cover_failures += !c.tree_covers;
    s.exact_failures += !c.tree_exact;
    s.contradictions += c.contradictions;
    if (!c.all() && s.counterexamples.size() < keep) s.counterexamples.push_back(gen::minimize(pair, fails));
  }
  return s;
}

}  // namespace migra::check
