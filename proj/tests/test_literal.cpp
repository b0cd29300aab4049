#include <doctest.h>

#include "pconf/json_io.hpp"
#include "pconf/literal.hpp"
#include "support/generators.hpp"

using namespace pconf;

TEST_SUITE("literal") {

TEST_CASE("grammar") {
  auto c = parse_requirement_literal("basket", Polarity::req);
  REQUIRE(c);
  CHECK(*c == UserRequirement{Polarity::req, sym("basket")});

  auto pv = parse_requirement_literal("rear_wheel.size=28", Polarity::nreq);
  REQUIRE(pv);
  CHECK(*pv == UserRequirement{Polarity::nreq, Triple{sym("rear_wheel"), sym("size"), num(28)}});

  auto neg = parse_requirement_literal("a.p=-4", Polarity::req);
  REQUIRE(neg);
  CHECK(std::get<Triple>(neg->target).value == num(-4));

  for (const char* bad : {"", ".", "a.", "a.b", "a.b=", "=c", "A", "a.b=c=d", "a b", "a.(x,y)=c", "a.b=+3", "a.b=C"}) {
    CAPTURE(bad);
    CHECK_FALSE(parse_requirement_literal(bad, Polarity::req));
  }
}

TEST_CASE("property: literal grammar matches the service requirement encoding") {
  testing::Rng rng(41);
  const std::vector<Term> atoms = {sym("a"), sym("front_wheel"), sym("x9_Y"), num(0), num(26), num(-7)};
  std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1);
  for (int i = 0; i < 500; ++i) {
    const Polarity pol = i % 2 ? Polarity::req : Polarity::nreq;
    UserRequirement r;
    if (i % 3 == 0) {
      r = {pol, atoms[pick(rng) % 3]};
    } else {
      r = {pol, Triple{atoms[pick(rng) % 3], atoms[pick(rng) % 3], atoms[pick(rng)]}};
    }
    const std::string text = format_requirement_literal(r);
    const auto parsed = parse_requirement_literal(text, pol);
    REQUIRE_MESSAGE(parsed, text);
    CHECK(*parsed == r);
    // the same requirement through the JSON wire encoding
    const auto wire = json_io::to_json(r);
    CHECK(json_io::requirement_from_json(wire) == *parsed);
    CHECK(json_io::to_json(*parsed) == wire);
  }
}

TEST_CASE("json requirement encoding errors") {
  using nlohmann::json;
  CHECK_THROWS_AS(json_io::requirement_from_json(json{{"polarity", "maybe"}, {"component", "a"}}), json_io::JsonError);
  CHECK_THROWS_AS(json_io::requirement_from_json(json{{"polarity", "req"}}), json_io::JsonError);
  CHECK_THROWS_AS(json_io::requirement_from_json(json{{"polarity", "req"}, {"component", "a"}, {"property", "p"}}),
                  json_io::JsonError);
  CHECK_THROWS_AS(json_io::requirement_from_json(json{{"polarity", "req"}, {"component", "Bad"}}), json_io::JsonError);
  CHECK_THROWS_AS(json_io::requirements_from_json(json::object()), json_io::JsonError);
}

}  // TEST_SUITE
