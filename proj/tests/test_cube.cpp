#include "doctest.h"

#include "kdescent/cube.hpp"

using namespace kdescent;

TEST_CASE("cube enumeration") {
  CHECK(build_cube(0, false).vertices().size() == 1);
  CHECK(build_cube(0, false).vertices()[0].str() == "1");

  auto v1 = build_cube(1, false).vertices();
  REQUIRE(v1.size() == 3);
  CHECK(v1[0].str() == "01");
  CHECK(v1[1].str() == "10");
  CHECK(v1[2].str() == "11");
  CHECK(v1[0].weight() == 1);
  CHECK(v1[1].weight() == 1);
  CHECK(v1[2].weight() == 2);

  auto v1a = build_cube(1, true).vertices();
  REQUIRE(v1a.size() == 4);
  CHECK(v1a[0].str() == "00");

  CHECK(build_cube(2, false).vertices().size() == 7);
  CHECK_THROWS_AS(build_cube(-1, false), ValidationError);
}

TEST_CASE("enumeration is deterministic") {
  auto a = build_cube(2, true).vertices();
  auto b = build_cube(2, true).vertices();
  CHECK(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("cofaces with signs") {
  auto c10 = cofaces(CubeVertex::parse("10"));
  REQUIRE(c10.size() == 1);
  CHECK(c10[0].to.str() == "11");
  CHECK(c10[0].position == 1);
  CHECK(c10[0].sign == -1);

  auto c01 = cofaces(CubeVertex::parse("01"));
  REQUIRE(c01.size() == 1);
  CHECK(c01[0].to.str() == "11");
  CHECK(c01[0].position == 0);
  CHECK(c01[0].sign == 1);

  CHECK(cofaces(CubeVertex::parse("11")).empty());
}

TEST_CASE("double cofaces anticommute") {
  /* for every vertex and k < l, the two flip orders reach the same vertex
   * with opposite sign products — this is what makes D∘D vanish */
  for (int n = 0; n <= 3; ++n) {
    for (const auto& v : build_cube(n, true).vertices()) {
      for (const auto& ck : cofaces(v)) {
        for (const auto& cl : cofaces(v)) {
          if (ck.position >= cl.position) continue;
          CubeVertex target = v;
          target.bits[ck.position] = 1;
          target.bits[cl.position] = 1;
          int path1 = 0, path2 = 0;
          for (const auto& second : cofaces(ck.to))
            if (second.to == target) path1 = ck.sign * second.sign;
          for (const auto& second : cofaces(cl.to))
            if (second.to == target) path2 = cl.sign * second.sign;
          REQUIRE(path1 != 0);
          REQUIRE(path2 != 0);
          CHECK(path1 == -path2);
        }
      }
    }
  }
}

TEST_CASE("cube products") {
  auto p00 = cube_product(build_cube(0, false), build_cube(0, false));
  auto v00 = p00.vertices();
  REQUIRE(v00.size() == 1);
  CHECK(v00[0].first.weight() + v00[0].second.weight() == 2);

  auto p10 = cube_product(build_cube(1, false), build_cube(0, false));
  auto v10 = p10.vertices();
  REQUIRE(v10.size() == 3);
  CHECK(v10[0].first.weight() + v10[0].second.weight() == 2);
  CHECK(v10[1].first.weight() + v10[1].second.weight() == 2);
  CHECK(v10[2].first.weight() + v10[2].second.weight() == 3);

  CHECK(cube_product(build_cube(1, false), build_cube(1, false)).vertices().size() == 9);
  CHECK_THROWS_AS(cube_product(build_cube(1, true), build_cube(0, false)), ValidationError);
}
