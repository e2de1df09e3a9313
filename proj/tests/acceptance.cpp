// End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "migra/check.hpp"
#include "migra/compare.hpp"
#include "migra/ctree.hpp"
#include "migra/ecws.hpp"
#include "migra/gen.hpp"
#include "migra/regions.hpp"
#include "migra/sese.hpp"

using namespace migra;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::uint64_t kSeed = 20241014;
constexpr std::size_t kPairs = 1000;

int failures = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << std::left << std::setw(4) << id << detail << "\n";
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << s << "s";
  return os.str();
}

ecws::BlockTree fixture(const std::string& name) {
  std::ifstream in(std::string(MIGRA_FIXTURES) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::stringstream buf;
  buf << in.rdbuf();
  return ecws::parse(buf.str());
}

std::string join(const std::set<Label>& s) {
  std::string out = "{";
  for (const auto& l : s) out += (out.size() > 1 ? "," : "") + l;
  return out + "}";
}

void criterion_1a() {
  auto t0 = Clock::now();
  auto mgs = ctree::to_mgs(ctree::build_ctree(fixture("nested.ecws")));
  const std::string want = "{p1,p2,p3,({p4,({p5,p7},{p6,p8}),p9},{p10,p11}),p12}";
  double s = seconds_since(t0);
  report("1a", mgs == want && s < 1.0, "MGS " + mgs + " in " + fmt_seconds(s));
}

void criterion_1b() {
  auto t0 = Clock::now();
  auto c = ctree::build_ctree(fixture("nested.ecws"));
  ctree::PlaceSet cut{"p1", "p2", "p3", "p4", "p6", "p8", "p9", "p12"};
  bool whole = ctree::is_breakoff(c, cut);
  std::size_t minimal = 0;
  for (const auto& p : cut) {
    auto smaller = cut;
    smaller.erase(p);
    if (!ctree::is_breakoff(c, smaller)) ++minimal;
  }
  double s = seconds_since(t0);
  report("1b", whole && minimal == cut.size() && s < 1.0,
         std::string("break-off ") + (whole ? "yes" : "no") + ", " + std::to_string(minimal) + "/" +
             std::to_string(cut.size()) + " single removals break it, " + fmt_seconds(s));
}

void criterion_1c() {
  auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  for (const char* name : {"relabel", "xorloop"}) {
    auto c = compare::run(fixture(std::string(name) + "_old.ecws"), fixture(std::string(name) + "_new.ecws"));
    bool pass = c.analysis.scr.empty() && c.analysis.pscr_exists && c.analysis.pscr->empty() &&
                c.oracle.non_migratable.empty() && !c.sese.improved_places.empty();
    ok = ok && pass;
    detail += std::string(name) + ": scr=" + join(c.analysis.scr) + " oracle-nm=" +
              std::to_string(c.oracle.non_migratable.size()) + " sese=" + join(c.sese.improved_places) + "; ";
  }
  double s = seconds_since(t0);
  report("1c", ok && s < 1.0, detail + fmt_seconds(s));
}

void criterion_1d() {
  auto t0 = Clock::now();
  auto o = fixture("swap_old.ecws");
  auto n = fixture("swap_new.ecws");
  auto r = regions::analyze(o, n);
  auto truth = wfnet::oracle_classify(ecws::build_net(o), ecws::build_net(n));
  std::set<Label> want{"p2", "p3", "p4", "p5"};
  bool ok = !r.pscr_exists && r.scr == want && !truth.pscr_exists && truth.scr == want &&
            r.per_place == truth.per_place;
  double s = seconds_since(t0);
  report("1d", ok && s < 1.0,
         "pscr_exists=" + std::string(r.pscr_exists ? "true" : "false") + " scr=" + join(r.scr) +
             " oracle scr=" + join(truth.scr) + ", " + fmt_seconds(s));
}

struct CorpusStats {
  std::size_t pairs = 0;
  std::size_t region_fail = 0, lemma_fail = 0, cover_fail = 0, exact_fail = 0;
  std::size_t contradictions = 0, unknown_with_pscr = 0, markings = 0;
  double seconds = 0;
  std::vector<gen::NetPair> region_cex, lemma_cex;
};

CorpusStats run_corpus() {
  CorpusStats st;
  auto t0 = Clock::now();
  auto pairs = gen::corpus(kSeed, kPairs);
  auto region_fails = [](const gen::NetPair& p) { return !check::check_pair(p.old_net, p.new_net).regions_agree(); };
  auto lemma_fails = [](const gen::NetPair& p) { return !check::check_pair(p.old_net, p.new_net).lemma; };
  for (const auto& p : pairs) {
    auto c = check::check_pair(p.old_net, p.new_net);
    ++st.pairs;
    st.markings += wfnet::reachable_markings(ecws::build_net(p.old_net)).size();
    if (!c.regions_agree()) {
      ++st.region_fail;
      if (st.region_cex.size() < 3) st.region_cex.push_back(gen::minimize(p, region_fails));
    }
    if (!c.lemma) {
      ++st.lemma_fail;
      if (st.lemma_cex.size() < 3) st.lemma_cex.push_back(gen::minimize(p, lemma_fails));
    }
    st.cover_fail += !c.tree_covers;
    st.exact_fail += !c.tree_exact;
    st.contradictions += c.contradictions;
    st.unknown_with_pscr += c.unknown_with_pscr;
  }
  st.seconds = seconds_since(t0);
  return st;
}

void print_cex(const std::vector<gen::NetPair>& cex) {
  for (const auto& p : cex) {
    auto c = check::check_pair(p.old_net, p.new_net);
    std::cout << "       counterexample (" << c.failures() << ")\n"
              << "         old: " << ecws::format(p.old_net) << "\n"
              << "         new: " << ecws::format(p.new_net) << "\n";
  }
}

void criterion_2(const CorpusStats& st) {
  report("2", st.region_fail == 0 && st.pairs >= 500 && st.seconds < 60.0,
         std::to_string(st.pairs - st.region_fail) + "/" + std::to_string(st.pairs) +
             " pairs agree on SCR, PSCR existence, PSCR and per-place classes (seed " + std::to_string(kSeed) +
             ", " + fmt_seconds(st.seconds) + " for the whole corpus)");
  print_cex(st.region_cex);
}

void criterion_3(const CorpusStats& st) {
  report("3", st.lemma_fail == 0,
         std::to_string(st.pairs - st.lemma_fail) + "/" + std::to_string(st.pairs) +
             " pairs: embedding exists iff old reachable set is contained in new");
  print_cex(st.lemma_cex);
}

void criterion_4(const CorpusStats& st) {
  std::ostringstream rate;
  rate << std::fixed << std::setprecision(1)
       << 100.0 * static_cast<double>(st.pairs - st.exact_fail) / static_cast<double>(st.pairs);
  report("4", st.cover_fail == 0,
         std::to_string(st.pairs - st.cover_fail) + "/" + std::to_string(st.pairs) +
             " reachable sets covered by the C-tree; reverse inclusion holds for " + rate.str() + "%");
}

void criterion_5(const CorpusStats& st) {
  report("5", st.contradictions == 0 && st.unknown_with_pscr == 0,
         std::to_string(st.contradictions) + " contradicted decisions, " + std::to_string(st.unknown_with_pscr) +
             " unknowns despite a PSCR, over " + std::to_string(st.markings) + " markings");
}

void criterion_6() {
  bool ok = true;
  std::string detail;
  for (const char* name : {"relabel", "xorloop", "swap"}) {
    auto c = compare::run(fixture(std::string(name) + "_old.ecws"), fixture(std::string(name) + "_new.ecws"));
    const auto& structural = c.rows[0];
    const auto& sese = c.rows[1];
    std::ostringstream os;
    os << std::fixed << std::setprecision(0) << name << " " << structural.approach << "="
       << 100 * structural.accuracy() << "% SESE=" << 100 * sese.accuracy() << "%; ";
    detail += os.str();
    if (c.analysis.pscr_exists && structural.correct != structural.total) ok = false;
    if (std::string(name) != "swap" && !(sese.accuracy() < structural.accuracy())) ok = false;
  }
  auto training = regions::analyze(fixture("training_old.ecws"), fixture("training_new.ecws"));
  std::set<Label> track{"p_t7", "p_6", "p_t8", "p_7", "p_t10", "p_8", "p_t9", "p_9"};
  bool training_ok = training.pscr_exists && std::includes(training.pscr->begin(), training.pscr->end(),
                                                           track.begin(), track.end());
  auto claims = regions::analyze(fixture("claims_old.ecws"), fixture("claims_new.ecws"));
  bool claims_ok = claims.pscr_exists && *claims.pscr == std::set<Label>{"PC_enabled", "PC"};
  detail += std::string("training PSCR ") + (training_ok ? "covers" : "misses") + " the concurrent track; claims PSCR=" +
            (claims.pscr ? join(*claims.pscr) : "none");
  report("6", ok && training_ok && claims_ok, detail);
}

void criterion_7() {
  std::mt19937_64 rng(kSeed);
  std::size_t ok = 0;
  for (int i = 0; i < 1000; ++i) {
    auto t = gen::random_tree(rng);
    if (ecws::parse(ecws::format(t)) == t) ++ok;
  }
  const char* captions[] = {
      "p1t1p2t2p3t3p4",
      "p1t1p2t2(p3t3p4t4p5)(p6t5p7)t6p8t7p9",
      "p1[t1p2t2][t3p3t4]p4",
      "p1t1p2t2(p11t8(p3t3p4)(p5t4p6)t5p9)(p7t6p8)t7p10",
      "p1t1{p2t2p3t3p4}{t4p5t5}t6p6",
      "p1t1{p2[t2p3t3][t7p7t8]p4}{t4p5t5}t6p6",
  };
  std::size_t exact = 0;
  for (const char* s : captions) {
    auto t = ecws::parse(s);
    if (ecws::format(t) == s && ecws::parse(ecws::format(t)) == t) ++exact;
  }
  report("7", ok == 1000 && exact == 6,
         std::to_string(ok) + "/1000 random trees round-trip; " + std::to_string(exact) +
             "/6 caption strings reproduced byte-for-byte");
}

// Known pairs where the structural conditions and the oracle disagree. The
// first was found by `migra fuzz --seed 2 --count 20000` (one pair in 20000);
// the others restructure block nesting, which no corpus mutation does.
void informational() {
  std::pair<const char*, const char*> cases[] = {
      {"p1t1(p2)(p3)(p7)t8p9", "p1t1(p2)(p3t2p7)t8p9"},
      {"p0 t0 (a)(b)(c) t9 p9", "p0 t0 (a)(q1 u1 (b)(c) u2 q2) t9 p9"},
      {"p0 t0 (u t1 (p)(s) t2 v)(w) t9 p9", "p0 t0 (u t1 p t2 v)(s)(w) t9 p9"},
  };
  std::size_t disagree = 0, contradictions = 0;
  for (auto [a, b] : cases) {
    auto c = check::check_pair(ecws::parse(a), ecws::parse(b));
    contradictions += c.contradictions;
    if (!c.all()) {
      ++disagree;
      std::cout << "INFO     known disagreement: " << a << " -> " << b << " (" << c.failures() << ")\n";
    }
  }
  std::cout << "INFO     " << disagree << "/" << std::size(cases) << " known pairs disagree with the oracle, "
            << contradictions << " contradicted decisions among them\n";
}

}  // namespace

int main() {
  try {
    criterion_1a();
    criterion_1b();
    criterion_1c();
    criterion_1d();
    auto st = run_corpus();
    criterion_2(st);
    criterion_3(st);
    criterion_4(st);
    criterion_5(st);
    criterion_6();
    criterion_7();
    informational();
  } catch (const std::exception& e) {
    std::cout << "FAIL     aborted: " << e.what() << "\n";
    return 1;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
