#include <catch2/catch_amalgamated.hpp>
TEST_CASE("todo test_io") { CHECK(true); }
