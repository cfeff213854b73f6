#ifndef GROUPOIDAL_FIXTURES_HPP
#define GROUPOIDAL_FIXTURES_HPP

#include "groupoidal/bibundle.hpp"

// Named small objects shared by the tests, the acceptance runner and the CLI.
namespace groupoidal::fixtures {

Obj PT();  // the point {*}
Obj S2();  // {a, b}
Obj S3();  // {c, d, e}
Mor p2();  // S2 -> PT
Mor p3();  // S3 -> PT
Groupoid CECH2();
Groupoid CECH3();
Groupoid Z2();  // {e, t}
Groupoid Z4();  // {0, 1, 2, 3}
Obj SIER();     // {0, 1} with opens {}, {1}, {0, 1}
Action SWAP();  // Z2 on S2 from the right, t swaps
Bibundle EQ23();  // S2 x_PT S3 between CECH2 and CECH3
Bibundle EX2();   // S2 between the point and CECH2

}  // namespace groupoidal::fixtures

#endif
