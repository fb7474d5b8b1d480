#include <doctest.h>

#include <cmath>
#include <fstream>
#include <string>

#include "qelie/algebra.hpp"
#include "qelie/catalog.hpp"
#include "qelie/document.hpp"
#include "qelie/error.hpp"
#include "support.hpp"

using namespace qelie;

namespace {

Errc parse_error(std::string_view text) {
  try {
    parse_algebra(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::BadFlags;
}

std::string message(std::string_view text) {
  try {
    parse_algebra(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

const char* kH3 = R"({"name": "h3", "dim": 3, "basis": ["x", "y", "z"], "brackets": [["x", "y", "z", "1"]]})";

}  // namespace

TEST_SUITE("parse_algebra") {
  TEST_CASE("H3, rational mode") {
    const auto d = parse_algebra(kH3);
    CHECK(d.name == "h3");
    CHECK(d.algebra.dim() == 3);
    CHECK(d.algebra.is_exact());
    CHECK(d.algebra.bracket(1, 0) == -qt::unit(3, 2));
    CHECK(d.algebra.gram().isIdentity(0.0));
  }
  TEST_CASE("float coefficient") {
    const auto d = parse_algebra(
        R"({"name":"n","dim":6,"basis":["x","y","z","w1","w2","w3"],
            "brackets":[["x","y","z","2"],["w1","w2","z","0.7071067811865476"],["w1","w2","w3","1"]]})");
    CHECK_FALSE(d.algebra.is_exact());
    CHECK(d.algebra.bracket(3, 4)(2) == 0.7071067811865476);
  }
  TEST_CASE("numbers as coefficients and reversed pairs") {
    const auto d = parse_algebra(R"({"name":"h","dim":3,"basis":["x","y","z"],"brackets":[["y","x","z",-1.5]]})");
    CHECK(d.algebra.bracket(0, 1)(2) == 1.5);
    REQUIRE(d.brackets.size() == 1);
    CHECK(d.brackets[0].i == "x");
  }
  TEST_CASE("metric completion") {
    const auto d = parse_algebra(
        R"({"name":"h","dim":3,"basis":["x","y","z"],"brackets":[["x","y","z","1"]],"metric":[["x","y",0.5],["z","z",2]]})");
    CHECK(d.algebra.gram()(1, 0) == 0.5);
    CHECK(d.algebra.gram()(0, 1) == 0.5);
    CHECK(d.algebra.gram()(2, 2) == 2.0);
  }
  TEST_CASE("duplicate label") {
    CHECK(parse_error(R"({"name":"h","dim":2,"basis":["x","x"],"brackets":[]})") == Errc::ValidationError);
  }
  TEST_CASE("syntax error has a position") {
    CHECK(parse_error("{\"name\": \"h\",\n  \"dim\": 3,,}") == Errc::ParseError);
    CHECK(message("{\"name\": \"h\",\n  \"dim\": 3,,}").find("line 2") != std::string::npos);
  }
  TEST_CASE("validation errors") {
    // unknown label
    CHECK(parse_error(R"({"name":"h","dim":2,"basis":["x","y"],"brackets":[["x","q","y","1"]]})") ==
          Errc::ValidationError);
    // dim mismatch
    CHECK(parse_error(R"({"name":"h","dim":3,"basis":["x","y"],"brackets":[]})") == Errc::ValidationError);
    // [x,x] != 0
    CHECK(parse_error(R"({"name":"h","dim":2,"basis":["x","y"],"brackets":[["x","x","y","1"]]})") ==
          Errc::ValidationError);
    // conflicting entries
    CHECK(parse_error(R"({"name":"h","dim":2,"basis":["x","y"],"brackets":[["x","y","y","1"],["y","x","y","1"]]})") ==
          Errc::ValidationError);
    // metric not positive definite
    CHECK(parse_error(R"({"name":"h","dim":2,"basis":["x","y"],"brackets":[],"metric":[["x","y",2]]})") ==
          Errc::ValidationError);
    // missing field
    CHECK(parse_error(R"({"name":"h","basis":["x","y"],"brackets":[]})") == Errc::ValidationError);
    // unknown field
    CHECK(parse_error(R"({"name":"h","dim":1,"basis":["x"],"brackets":[],"extra":1})") == Errc::ValidationError);
    // malformed coefficient
    const Errc bad = parse_error(R"({"name":"h","dim":2,"basis":["x","y"],"brackets":[["x","y","y","1/0"]]})");
    CHECK((bad == Errc::ParseError || bad == Errc::ValidationError));
  }
  TEST_CASE("missing file") {
    try {
      load_algebra("/nonexistent/h3.json");
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::FileNotFound);
    }
  }
}

TEST_SUITE("emit_algebra") {
  TEST_CASE("H3 layout") {
    const std::string text = emit_algebra(parse_algebra(kH3));
    CHECK(text ==
          "{\n"
          "  \"name\": \"h3\",\n"
          "  \"dim\": 3,\n"
          "  \"basis\": [\"x\",\"y\",\"z\"],\n"
          "  \"brackets\": [\n"
          "    [\"x\",\"y\",\"z\",\"1\"]\n"
          "  ]\n"
          "}\n");
  }
  TEST_CASE("catalog round trip is byte-identical") {
    qt::Rng rng(17);
    std::vector<CatalogEntry> entries{make_heisenberg(1, 1),
                                      make_heisenberg(3, mpq_class(3, 2)),
                                      make_n6a(1, 2),
                                      make_n7a(1, 2),
                                      make_heisenberg_extension(1, 1, {{1}}),
                                      make_heisenberg_extension(2, 1, {{1, 1}}),
                                      make_heisenberg_extension(2, 1, {{1, 0}, {0, 2}}),
                                      make_almost_abelian({{1, 2}, {0, -1}})};
    for (int t = 0; t < 5; ++t) entries.push_back(qt::random_extension(rng));
    for (const auto& e : entries) {
      INFO(e.name);
      const std::string first = emit_algebra(document_from_entry(e));
      const auto parsed = parse_algebra(first);
      CHECK(emit_algebra(parsed) == first);
      CHECK(structurally_equal(parsed.algebra, e.algebra, 1e-12));
      CHECK(parsed.algebra.is_exact() == e.algebra.is_exact());
      REQUIRE(parsed.family.has_value());
      CHECK(parsed.family->name == e.family);
    }
  }
  TEST_CASE("deterministic") {
    const auto e = make_n7a(1, 2);
    CHECK(emit_algebra(document_from_entry(e)) == emit_algebra(document_from_entry(e)));
  }
}

TEST_SUITE("structurally_equal") {
  TEST_CASE("differences") {
    const auto h = make_heisenberg(1, 1).algebra;
    CHECK(structurally_equal(h, h));
    CHECK_FALSE(structurally_equal(h, make_heisenberg(1, 2).algebra));
    CHECK_FALSE(structurally_equal(h, make_heisenberg(1, 1.0).algebra));  // exactness differs
    CHECK_FALSE(structurally_equal(h, h.with_gram(Vector(Eigen::Vector3d(1, 1, 2)).asDiagonal())));
  }
}
