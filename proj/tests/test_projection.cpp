#include "doctest.h"
#include "projsig/projection.hpp"

using namespace projsig;

TEST_CASE("projection module links") {
    CHECK(family_group(FamilyKind::Central) == Group::Projective);
}
