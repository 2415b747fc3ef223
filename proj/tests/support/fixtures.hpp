#pragma once

#include <string>
#include <vector>

#include "spur/abstraction.hpp"
#include "spur/model.hpp"

namespace fixtures {

// Traffic-light controller: a 3-cycle whose go-states collapse when
// color is hidden.
inline const char* TL = R"(
var state : stop go
var color : red green yellow
state red    state=stop color=red
state green  state=go   color=green
state yellow state=go   color=yellow
init red
trans red green
trans green yellow
trans yellow red
)";

// Twelve states in four groups of three. Hiding n leaves the group
// fibers {1,2,3} {4,5,6} {7,8,9} {10,11,12}; the path a,b,c,d breaks at
// c with 9 reachable-but-stuck, 7 forward-capable-but-unreachable, and
// 8 isolated.
inline const char* F12 = R"(
var g : a b c d
var n : 1 2 3
state 1  g=a n=1
state 2  g=a n=2
state 3  g=a n=3
state 4  g=b n=1
state 5  g=b n=2
state 6  g=b n=3
state 7  g=c n=1
state 8  g=c n=2
state 9  g=c n=3
state 10 g=d n=1
state 11 g=d n=2
state 12 g=d n=3
init 1
init 2
trans 1 4
trans 2 5
trans 3 6
trans 4 9
trans 5 9
trans 7 10
trans 7 11
trans 8 9
trans 10 12
trans 11 12
trans 12 12
)";

// Two failure positions with different weights: position 1 (fiber q,
// weight 1) and position 2 (fiber r, weight 2 thanks to the extra
// p1->r1 edge). The first detector stops at q, the heaviest at r.
inline const char* W2 = R"(
var f : p q r t
var n : 1 2
state p1 f=p n=1
state p2 f=p n=2
state q1 f=q n=1
state q2 f=q n=2
state r1 f=r n=1
state r2 f=r n=2
state t1 f=t n=1
state t2 f=t n=2
init p1
trans p1 q1
trans q2 r1
trans p1 r1
trans r2 t1
)";

struct Setup {
    spur::KripkeStructure model;
    spur::AbstractionMap map;
    spur::AbstractModel abstract_model;
};

inline Setup make(const char* text, const std::vector<std::string>& invisible) {
    spur::KripkeStructure K = spur::KripkeStructure::parse(text);
    spur::AbstractionMap map = spur::AbstractionMap::build(K, invisible);
    spur::AbstractModel model = spur::build_abstract_model(K, map);
    return {std::move(K), std::move(map), std::move(model)};
}

inline Setup tl() { return make(TL, {"color"}); }
inline Setup f12() { return make(F12, {"n"}); }
inline Setup w2() { return make(W2, {"n"}); }

} // namespace fixtures
