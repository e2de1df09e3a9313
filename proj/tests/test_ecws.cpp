#include <doctest.h>

#include <random>

#include "migra/gen.hpp"
#include "support.hpp"

using namespace migra;
using namespace migra::ecws;
using testing::tree;

namespace {

std::vector<std::string> kinds(const Sequence& s) {
  std::vector<std::string> out;
  for (const auto& e : s.items) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Place>) out.push_back("P:" + n.label);
          else if constexpr (std::is_same_v<T, Transition>) out.push_back("T:" + n.label);
          else if constexpr (std::is_same_v<T, AndBlock>) out.push_back("AND");
          else if constexpr (std::is_same_v<T, XorBlock>) out.push_back("XOR");
          else out.push_back("LOOP");
        },
        e.node);
  }
  return out;
}

bool has_arc(const WfNet& n, const char* a, const char* b) { return n.arcs.count({a, b}) > 0; }

}  // namespace

TEST_CASE("lexer splits a label where a letter follows digits") {
  auto toks = lex("p1t1p2");
  REQUIRE(toks.size() == 4);
  CHECK(toks[0].text == "p1");
  CHECK(toks[1].text == "t1");
  CHECK(toks[2].text == "p2");
  CHECK(toks[3].kind == TokenKind::End);
}

TEST_CASE("lexer skips whitespace, commas and comments and tracks positions") {
  auto toks = lex("# header\n  p_a , t_b\np_c");
  REQUIRE(toks.size() == 4);
  CHECK(toks[0].text == "p_a");
  CHECK(toks[0].pos.line == 2);
  CHECK(toks[0].pos.column == 3);
  CHECK(toks[2].pos.line == 3);
}

TEST_CASE("lexer rejects stray characters") {
  CHECK_THROWS_AS(lex("p1 t1 ! p2"), LexError);
  try {
    lex("p1\n  t1 $");
  } catch (const LexError& e) {
    CHECK(e.pos().line == 2);
    CHECK(e.pos().column == 6);
  }
}

TEST_CASE("plain sequence") {
  auto t = tree("p1t1p2t2p3t3p4");
  CHECK(kinds(t.root) == std::vector<std::string>{"P:p1", "T:t1", "P:p2", "T:t2", "P:p3", "T:t3", "P:p4"});
}

TEST_CASE("AND block between fork and join") {
  auto t = tree("p1t1p2t2(p3t3p4t4p5)(p6t5p7)t6p8t7p9");
  CHECK(kinds(t.root) ==
        std::vector<std::string>{"P:p1", "T:t1", "P:p2", "T:t2", "AND", "T:t6", "P:p8", "T:t7", "P:p9"});
  const auto& a = std::get<AndBlock>(t.root.items[4].node);
  REQUIRE(a.branches.size() == 2);
  CHECK(kinds(a.branches[0]) == std::vector<std::string>{"P:p3", "T:t3", "P:p4", "T:t4", "P:p5"});
  CHECK(kinds(a.branches[1]) == std::vector<std::string>{"P:p6", "T:t5", "P:p7"});
}

TEST_CASE("loop block with forward and back branch") {
  auto t = tree("p1t1{p2t2p3t3p4}{t4p5t5}t6p6");
  CHECK(kinds(t.root) == std::vector<std::string>{"P:p1", "T:t1", "LOOP", "T:t6", "P:p6"});
  const auto& l = std::get<LoopBlock>(t.root.items[2].node);
  CHECK(kinds(l.forward) == std::vector<std::string>{"P:p2", "T:t2", "P:p3", "T:t3", "P:p4"});
  CHECK(kinds(l.back) == std::vector<std::string>{"T:t4", "P:p5", "T:t5"});
}

TEST_CASE("XOR block between two places") {
  auto t = tree("p1[t1p2t2][t3p3t4]p4");
  CHECK(kinds(t.root) == std::vector<std::string>{"P:p1", "XOR", "P:p4"});
  const auto& x = std::get<XorBlock>(t.root.items[1].node);
  CHECK(kinds(x.branches[0]) == std::vector<std::string>{"T:t1", "P:p2", "T:t2"});
  CHECK(kinds(x.branches[1]) == std::vector<std::string>{"T:t3", "P:p3", "T:t4"});
}

TEST_CASE("blocks may share a transition") {
  auto t = tree(testing::kNested);
  CHECK(kinds(t.root) == std::vector<std::string>{"P:p1", "T:ta", "LOOP", "T:td", "AND", "T:tj", "P:p12"});
}

TEST_CASE("roles follow position, not spelling") {
  auto t = tree("t1 p1 t2");
  CHECK(kinds(t.root) == std::vector<std::string>{"P:t1", "T:p1", "P:t2"});
}

TEST_CASE("grammar violations") {
  CHECK_THROWS_AS(parse("p1[t1p2t2]p3"), ParseError);
  CHECK_THROWS_AS(parse("p1t1(p2)t2p3"), ParseError);
  CHECK_THROWS_AS(parse("p1t1"), ParseError);
  CHECK_THROWS_AS(parse("p1t1(p2)(p3"), ParseError);
  CHECK_THROWS_AS(parse("p1t1{p2}t2p3"), ParseError);
  CHECK_THROWS_AS(parse("p1 t1 p2 )"), ParseError);
  CHECK_THROWS_AS(parse(""), EcwsError);
  CHECK_THROWS_AS(parse("p1t1p1"), DuplicateLabelError);
  CHECK_THROWS_AS(parse("p1t1p2t1p3"), DuplicateLabelError);
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse("p1 t1\n  p2 t2 ]");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.pos().line == 2);
    CHECK(e.pos().column == 6);  // t2 cannot continue the sequence
  }
}

TEST_CASE("format is canonical and minimal") {
  CHECK(format(tree("p1 t1 p2")) == "p1t1p2");
  CHECK(format(tree("p1t1{p2[t2p3t3][t7p7t8]p4}{t4p5t5}t6p6")) == "p1t1{p2[t2p3t3][t7p7t8]p4}{t4p5t5}t6p6");
  // "a" after "b" would merge into one label, so a comma is kept.
  CHECK(format(tree("pa,tb,pc")) == "pa,tb,pc");
  CHECK(parse(format(tree("p_1 t_1 p_2"))) == tree("p_1 t_1 p_2"));
}

TEST_CASE("caption strings survive parse and format unchanged") {
  for (const char* s : testing::kFig5) {
    CAPTURE(s);
    CHECK(format(parse(s)) == s);
  }
}

TEST_CASE("parse after format is the identity on random trees") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    auto t = gen::random_tree(rng);
    CHECK(parse(format(t)) == t);
  }
}

TEST_CASE("validate accepts parsed trees and rejects broken ones") {
  auto t = tree("p1t1p2");
  CHECK_NOTHROW(validate(t));
  auto broken = t;
  broken.root.items.pop_back();
  CHECK_THROWS_AS(validate(broken), ParseError);
}

TEST_CASE("sequence wiring") {
  auto n = testing::net("p1t1p2t2p3t3p4");
  CHECK(n.init == "p1");
  CHECK(n.end == "p4");
  CHECK(n.arcs.size() == 6);
  CHECK(has_arc(n, "p1", "t1"));
  CHECK(has_arc(n, "t3", "p4"));
  CHECK(structural_problems(n).empty());
}

TEST_CASE("fork and join wiring") {
  auto n = testing::net("p1t1p2t2(p3t3p4t4p5)(p6t5p7)t6p8t7p9");
  CHECK(has_arc(n, "t2", "p3"));
  CHECK(has_arc(n, "t2", "p6"));
  CHECK(has_arc(n, "p5", "t6"));
  CHECK(has_arc(n, "p7", "t6"));
}

TEST_CASE("loop wiring") {
  auto n = testing::net("p1t1{p2t2p3t3p4}{t4p5t5}t6p6");
  CHECK(has_arc(n, "p4", "t4"));
  CHECK(has_arc(n, "t4", "p5"));
  CHECK(has_arc(n, "p5", "t5"));
  CHECK(has_arc(n, "t5", "p2"));
  CHECK(has_arc(n, "p4", "t6"));
}

TEST_CASE("choice wiring") {
  auto n = testing::net("p1[t1p2t2][t3p3t4]p4");
  CHECK(has_arc(n, "p1", "t1"));
  CHECK(has_arc(n, "p1", "t3"));
  CHECK(has_arc(n, "t2", "p4"));
  CHECK(has_arc(n, "t4", "p4"));
}

TEST_CASE("single-transition choice branch") {
  auto n = testing::net("p1[t1][t2p2t3]p3");
  CHECK(has_arc(n, "p1", "t1"));
  CHECK(has_arc(n, "t1", "p3"));
}

TEST_CASE("structural checks catch broken nets") {
  WfNet n;
  n.places = {"a", "b", "c"};
  n.transitions = {"t"};
  n.init = "a";
  n.end = "b";
  n.add_arc("a", "t", true);
  n.add_arc("t", "b", false);
  CHECK_FALSE(structural_problems(n).empty());  // c is isolated
}

TEST_CASE("label helpers list places and transitions in order") {
  auto t = tree("p1[t1p2t2][t3p3t4]p4");
  CHECK(place_labels(t) == std::vector<Label>{"p1", "p2", "p3", "p4"});
  CHECK(transition_labels(t) == std::vector<Label>{"t1", "t2", "t3", "t4"});
}
