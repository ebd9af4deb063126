#include <catch2/catch_amalgamated.hpp>
TEST_CASE("todo test_theta") { CHECK(true); }
