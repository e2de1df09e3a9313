#pragma once

#include <algorithm>
#include <string>

#include "migra/ctree.hpp"
#include "migra/ecws.hpp"
#include "migra/wfnet.hpp"

namespace testing {

inline migra::ecws::BlockTree tree(const std::string& s) { return migra::ecws::parse(s); }
inline migra::WfNet net(const std::string& s) { return migra::ecws::build_net(tree(s)); }
inline migra::ctree::CTree ctree_of(const std::string& s) { return migra::ctree::build_ctree(tree(s)); }

inline bool subset(const migra::MarkingSet& a, const migra::MarkingSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Fixture texts shared by several suites.
inline const char* kFig5[] = {
    "p1t1p2t2p3t3p4",
    "p1t1p2t2(p3t3p4t4p5)(p6t5p7)t6p8t7p9",
    "p1[t1p2t2][t3p3t4]p4",
    "p1t1p2t2(p11t8(p3t3p4)(p5t4p6)t5p9)(p7t6p8)t7p10",
    "p1t1{p2t2p3t3p4}{t4p5t5}t6p6",
    "p1t1{p2[t2p3t3][t7p7t8]p4}{t4p5t5}t6p6",
};
inline const char* kNested = "p1 ta {p2 tb p3}{tc} td (p4 te (p5 tf p7)(p6 tg p8) th p9)(p10 ti p11) tj p12";
inline const char* kSwapOld = "p1t1(p2t2p3)(p4t3p5)t4p6";
inline const char* kSwapNew = "p1t1(p2t2p5)(p4t3p3)t4p6";
inline const char* kRelabelOld = "p1t1p2t2(p3t3p5)(p4t4p6)t7p7t8p8";
inline const char* kRelabelNew = "p1t0p2t21(p3t3p5)(p4t4p6)t7p7t11p8";
inline const char* kXorOld = "p1[t1p2t2][t3p3t4]p4";
inline const char* kLoopNew = "p1t1{p2t2p3}{t3}t4p4";

}  // namespace testing
