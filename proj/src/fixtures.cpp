#include "groupoidal/fixtures.hpp"

#include "groupoidal/backends.hpp"

namespace groupoidal::fixtures {

Obj PT() { return terminal(Backend::FinSet); }
Obj S2() { return Obj::finset({"a", "b"}); }
Obj S3() { return Obj::finset({"c", "d", "e"}); }
Mor p2() { return to_terminal(S2(), PT()); }
Mor p3() { return to_terminal(S3(), PT()); }
Groupoid CECH2() { return cech_groupoid(p2()); }
Groupoid CECH3() { return cech_groupoid(p3()); }
Groupoid Z2() { return group_groupoid({"e", "t"}, {{0, 1}, {1, 0}}); }
Groupoid Z4() { return cyclic_group(4); }
Obj SIER() { return sierpinski(); }

Action SWAP() {
  Groupoid z = Z2();
  return make_action(z, Mor::constant(S2(), z.G0, 0), Side::Right, [](int x, int g) { return g == 0 ? x : 1 - x; });
}

Bibundle EQ23() { return cech_equivalence(p2(), p3()); }
Bibundle EX2() { return cover_equivalence(p2()); }

}  // namespace groupoidal::fixtures
