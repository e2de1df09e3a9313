#include <doctest.h>

#include <random>

#include "migra/gen.hpp"
#include "support.hpp"

using namespace migra;
using namespace migra::wfnet;
using testing::net;

TEST_CASE("marking text form") {
  CHECK(Marking::parse("p6, p3").str() == "p3,p6");
  CHECK(Marking::parse("").empty());
  CHECK_THROWS(Marking::parse("p1,,p2"));
  CHECK_THROWS(Marking::parse("p1,p1"));
  CHECK(Marking{"b", "a"} == Marking{"a", "b"});
}

TEST_CASE("enabled transitions") {
  CHECK(enabled_transitions(net("p1t1p2"), {"p1"}) == std::set<Label>{"t1"});
  auto b = net(testing::kFig5[1]);
  CHECK(enabled_transitions(b, {"p3", "p6"}) == std::set<Label>{"t3", "t5"});
  CHECK(enabled_transitions(b, {"p5", "p6"}) == std::set<Label>{"t5"});
  CHECK_THROWS_AS(enabled_transitions(b, {"zz"}), UnknownPlaceError);
}

TEST_CASE("firing") {
  CHECK(fire(net("p1t1p2"), {"p1"}, "t1") == Marking{"p2"});
  auto b = net(testing::kFig5[1]);
  CHECK(fire(b, {"p2"}, "t2") == Marking{"p3", "p6"});
  CHECK(fire(b, {"p5", "p7"}, "t6") == Marking{"p8"});
  CHECK_THROWS_AS(fire(b, {"p5", "p6"}, "t6"), NotEnabledError);
  auto e = net(testing::kFig5[4]);
  auto m = fire(e, {"p4"}, "t4");
  CHECK(m == Marking{"p5"});
  CHECK(fire(e, m, "t5") == Marking{"p2"});
}

TEST_CASE("reachable markings of small nets") {
  MarkingSet chain{{"p1"}, {"p2"}, {"p3"}, {"p4"}};
  CHECK(reachable_markings(net(testing::kFig5[0])) == chain);
  CHECK(reachable_markings(net(testing::kFig5[2])) == chain);
  CHECK(reachable_markings(net(testing::kSwapOld)).size() == 6);
  // 4 sequential places, and 6 inner markings alongside either place of the
  // right branch.
  CHECK(reachable_markings(net(testing::kNested)).size() == 16);
}

TEST_CASE("state cap is reported, not truncated") {
  CHECK_THROWS_AS(reachable_markings(net(testing::kNested), 5), StateExplosionError);
}

TEST_CASE("nets from the grammar are sound") {
  for (const char* s : testing::kFig5) {
    CAPTURE(s);
    CHECK(check_soundness(net(s)).ok());
  }
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    auto t = gen::random_tree(rng);
    CHECK(check_soundness(ecws::build_net(t)).ok());
  }
}

TEST_CASE("identity migration") {
  auto r = oracle_classify(net(testing::kFig5[1]), net(testing::kFig5[1]));
  CHECK(r.non_migratable.empty());
  CHECK(r.scr.empty());
  CHECK(r.pscr_exists);
  CHECK(r.pscr->empty());
  for (const auto& [p, c] : r.per_place) CHECK(c == PlaceClass::Safe);
}

TEST_CASE("branch swap: every AND place is an overestimation") {
  auto r = oracle_classify(net(testing::kSwapOld), net(testing::kSwapNew));
  CHECK(r.non_migratable == MarkingSet{{"p2", "p5"}, {"p3", "p4"}});
  for (const char* p : {"p2", "p3", "p4", "p5"}) CHECK(r.per_place.at(p) == PlaceClass::Overestimation);
  CHECK(r.per_place.at("p1") == PlaceClass::Safe);
  CHECK_FALSE(r.pscr_exists);
  CHECK_FALSE(r.pscr.has_value());
}

TEST_CASE("removed branch: the whole AND block is perfect") {
  auto r = oracle_classify(net(testing::kSwapOld), net("p1t1(p2t2p3)(q1t3q2)t4p6"));
  for (const char* p : {"p2", "p3", "p4", "p5"}) CHECK(r.per_place.at(p) == PlaceClass::PerfectMember);
  CHECK(r.pscr_exists);
  CHECK(*r.pscr == std::set<Label>{"p2", "p3", "p4", "p5"});
}

TEST_CASE("oracle invariants") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    auto pair = gen::random_pair(rng);
    auto r = oracle_classify(ecws::build_net(pair.old_net), ecws::build_net(pair.new_net));
    MarkingSet diff;
    std::set_difference(r.reachable_old.begin(), r.reachable_old.end(), r.reachable_new.begin(),
                        r.reachable_new.end(), std::inserter(diff, diff.end()));
    CHECK(diff == r.non_migratable);
    std::set<Label> touched;
    for (const auto& m : r.non_migratable) touched.insert(m.begin(), m.end());
    CHECK(touched == r.scr);
    CHECK(r.per_place.size() == ecws::place_labels(pair.old_net).size());
  }
}
