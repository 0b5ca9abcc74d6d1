#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "entcap/matcore.hpp"
#include "entcap/states.hpp"
#include "entcap/stateio.hpp"

using namespace entcap;

TEST_CASE("numeric formatting is fixed at nine decimals") {
  CHECK(format_value(1.0) == "1.000000000");
  CHECK(format_value(0.1) == "0.100000000");
  CHECK(format_value(-1.5) == "-1.500000000");
  CHECK(format_value(2.0 / 3.0) == "0.666666667");

  // negative zero is normalized after rounding
  CHECK(format_value(-1e-12) == "0.000000000");
  CHECK(format_value(-0.0) == "0.000000000");

  CHECK(format_value(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_value(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_value(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("report records and csv emission") {
  ReportRecord row;
  row.add_text("family", "demo");
  row.add_number("value", 0.25);
  row.add_count("iterations", 12);

  std::ostringstream out;
  write_records(out, {row}, OutputFormat::csv);
  CHECK(out.str() == "family,value,iterations\ndemo,0.250000000,12\n");
}

TEST_CASE("csv rejects mismatched rows") {
  ReportRecord a;
  a.add_text("x", "1");
  ReportRecord b;
  b.add_text("y", "1");
  std::ostringstream out;
  CHECK_THROWS_WITH_AS(write_records(out, {a, b}, OutputFormat::csv),
                       doctest::Contains("ValidationError"), Error);
}

TEST_CASE("jsonl emission quotes text and leaves numbers bare") {
  ReportRecord row;
  row.add_text("family", "demo");
  row.add_number("value", 0.25);
  row.add_count("n", 3);

  std::ostringstream out;
  write_records(out, {row}, OutputFormat::jsonl);
  CHECK(out.str() == "{\"family\":\"demo\",\"value\":0.250000000,\"n\":3}\n");
}

TEST_CASE("state specs for every family") {
  StateSpec me = parse_state_spec(R"({"family":"max_entangled","d":3})");
  CHECK(me.family == "max_entangled");
  REQUIRE(me.state.has_value());
  CHECK(max_abs_diff(me.state->matrix(), max_entangled(3).matrix()) == 0.0);

  StateSpec iso = parse_state_spec(R"({"family":"isotropic","d":2,"F":0.9})");
  REQUIRE(iso.state.has_value());
  CHECK(max_abs_diff(iso.state->matrix(), isotropic(0.9, 2).matrix()) == 0.0);
  // parameters are echoed
  bool saw_f = false;
  for (const auto& field : iso.parameters) {
    if (field.key == "F") saw_f = true;
  }
  CHECK(saw_f);

  StateSpec bell =
      parse_state_spec(R"({"family":"bell_diagonal","p":[0.7,0.3,0,0]})");
  REQUIRE(bell.state.has_value());
  CHECK(max_abs_diff(bell.state->matrix(),
                     bell_diagonal({0.7, 0.3, 0, 0}).matrix()) == 0.0);

  StateSpec mc = parse_state_spec(
      R"({"family":"max_correlated","alpha_re":[[0.5,0.5],[0.5,0.5]]})");
  REQUIRE(mc.state.has_value());
  CHECK(max_abs_diff(mc.state->matrix(), max_entangled(2).matrix()) < 1e-12);

  StateSpec ei = parse_state_spec(R"({"family":"eisert","J":2})");
  CHECK(ei.family == "eisert");
  CHECK(ei.eisert_j == 2);
  CHECK_FALSE(ei.state.has_value());

  StateSpec rnd = parse_state_spec(
      R"({"family":"random","d_a":2,"d_b":2,"rank":3,"seed":7})");
  REQUIRE(rnd.state.has_value());
  CHECK(max_abs_diff(rnd.state->matrix(),
                     random_density(2, 2, 3, 7).matrix()) == 0.0);
}

TEST_CASE("dense specs round-trip the Bell state") {
  const std::string text = R"({
    "family": "dense", "d_a": 2, "d_b": 2,
    "re": [[0.5,0,0,0.5],[0,0,0,0],[0,0,0,0],[0.5,0,0,0.5]],
    "im": [[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]
  })";
  StateSpec spec = parse_state_spec(text);
  REQUIRE(spec.state.has_value());
  CHECK(max_abs_diff(spec.state->matrix(), max_entangled(2).matrix()) <
        1e-10);

  // im is optional for real matrices
  StateSpec real_only = parse_state_spec(
      R"({"family":"dense","d_a":1,"d_b":2,"re":[[0.5,0],[0,0.5]]})");
  REQUIRE(real_only.state.has_value());
  CHECK(real_only.state->dims().d_b == 2);
}

TEST_CASE("dense ingestion snaps small defects and rejects large ones") {
  // trace 1 + 5e-9 is renormalized
  StateSpec near = parse_state_spec(
      R"({"family":"dense","d_a":1,"d_b":2,"re":[[0.6,0],[0,0.400000005]]})");
  REQUIRE(near.state.has_value());
  CHECK(std::abs(near.state->matrix().trace() - cplx{1.0, 0.0}) < 1e-12);

  // tiny asymmetry is hermitized
  StateSpec asym = parse_state_spec(
      R"({"family":"dense","d_a":1,"d_b":2,
          "re":[[0.5,0.100000001],[0.1,0.5]]})");
  REQUIRE(asym.state.has_value());
  CHECK(asym.state->matrix().hermiticity_defect() == 0.0);

  // large asymmetry is an invalid state
  CHECK_THROWS_WITH_AS(
      parse_state_spec(
          R"({"family":"dense","d_a":1,"d_b":2,"re":[[0.5,0.2],[0.1,0.5]]})"),
      doctest::Contains("InvalidState"), Error);

  // significant negative eigenvalue is an invalid state
  CHECK_THROWS_AS(parse_state_spec(R"({"family":"dense","d_a":1,"d_b":2,
                                       "re":[[1.2,0],[0,-0.2]]})"),
                  Error);
}

TEST_CASE("spec validation errors") {
  // malformed JSON
  CHECK_THROWS_WITH_AS(parse_state_spec("{not json"),
                       doctest::Contains("ParseError"), Error);
  // unknown family
  CHECK_THROWS_AS(parse_state_spec(R"({"family":"werner","d":2})"), Error);
  // missing required field
  CHECK_THROWS_AS(parse_state_spec(R"({"family":"isotropic","d":2})"), Error);
  // out-of-range fidelity propagates the constructor error
  CHECK_THROWS_WITH_AS(
      parse_state_spec(R"({"family":"isotropic","d":2,"F":1.5})"),
      doctest::Contains("FidelityOutOfRange"), Error);
  // non-object root
  CHECK_THROWS_AS(parse_state_spec(R"([1,2,3])"), Error);
  // dimension bounds are enforced
  CHECK_THROWS_AS(
      parse_state_spec(R"({"family":"max_entangled","d":100000})"), Error);
}
