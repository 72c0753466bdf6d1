#include <doctest.h>

#include "fdga/dga.hpp"
#include "fdga/document.hpp"
#include "support/random_dga.hpp"

using namespace fdga;
using fdga::testing::fixture;
using fdga::testing::Rng;

TEST_CASE("Leibniz rule on the NC1 fixture") {
  const auto doc = fixture("NC1");
  const auto& dga = doc.free();
  const auto& sig = dga.signature();
  CHECK(leibniz_extend(dga, parse_poly(sig, "b1bc")) == parse_poly(sig, "bcbc"));
  CHECK(leibniz_extend(dga, parse_poly(sig, "b1b2")) == parse_poly(sig, "bcb2 - b1bc"));
  CHECK(leibniz_extend(dga, parse_poly(sig, "bb1")) == parse_poly(sig, "-bbc"));
  CHECK(leibniz_extend(dga, parse_poly(sig, "cb1")) == parse_poly(sig, "-cbc"));
  CHECK(leibniz_extend(dga, parse_poly(sig, "bc")).is_zero());
  CHECK(leibniz_extend(dga, dga.one()).is_zero());
}

TEST_CASE("fixtures validate; the broken fixture reports the filtration violation") {
  for (const char* name : {"NC1", "AC1", "AC2", "S1", "AN1"}) {
    INFO(name);
    CHECK(validate_dga(fixture(name).free()).ok());
  }
  const auto report = validate_dga(fixture("NC1-broken").free());
  CHECK_FALSE(report.ok());
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].kind == Violation::Kind::Filtration);
  CHECK(report.violations[0].generator == "b1");
}

TEST_CASE("validation detects degree and d^2 violations") {
  const auto sig = Signature::create(Field::rational(), 0,
                                     {{"x", 0, Rational(1)}, {"y", 1, Rational(2)}, {"z", 2, Rational(5)}});
  // d z = y has degree 1 = |z| - 1, but d y = x has degree 0 = |y| - 1, so d d z = x != 0
  DGAPresentation square(sig, {Poly(sig), parse_poly(sig, "x"), parse_poly(sig, "y")});
  auto report = validate_dga(square);
  CHECK(report.has(Violation::Kind::DifferentialSquare));
  CHECK_FALSE(report.has(Violation::Kind::Degree));

  // d z = x has degree 0, not 1
  DGAPresentation degree(sig, {Poly(sig), Poly(sig), parse_poly(sig, "x")});
  report = validate_dga(degree);
  CHECK(report.has(Violation::Kind::Degree));

  CHECK_THROWS_AS(DGAPresentation(sig, {Poly(sig)}), Error);
}

TEST_CASE("random DGAs are valid, satisfy d^2 = 0 and the Leibniz rule") {
  Rng rng(2024);
  for (int trial = 0; trial < 80; ++trial) {
    const auto dga = fdga::testing::random_dga(rng, {.allow_prime_field = true});
    const auto& sig = dga.signature();
    REQUIRE(validate_dga(dga).ok());
    const Poly x = fdga::testing::random_poly(rng, sig, 3, 6);
    const Poly y = fdga::testing::random_poly(rng, sig, 3, 6);
    CHECK(leibniz_extend(dga, leibniz_extend(dga, x)).is_zero());
    CHECK(leibniz_extend(dga, x * y) == leibniz_extend(dga, x) * y + signed_product(x, leibniz_extend(dga, y)));
    CHECK(leibniz_extend(dga, x + y) == leibniz_extend(dga, x) + leibniz_extend(dga, y));
  }
}

TEST_CASE("nu strictly decreases on fixtures and random elements") {
  Rng rng(7);
  for (const char* name : {"NC1", "AC1", "AC2", "S1", "AN1"}) {
    const auto doc = fixture(name);
    std::vector<Poly> samples;
    for (int k = 0; k < 20; ++k) samples.push_back(fdga::testing::random_poly(rng, doc.signature(), 3, 7));
    CHECK(check_nu_decrease(doc.free(), doc.signature()->degree_function(), samples).ok());
  }
  const auto broken = fixture("NC1-broken");
  const auto report = check_nu_decrease(broken.free(), broken.signature()->degree_function(), {});
  CHECK(report.generator_failures == std::vector<GenIndex>{2});
}

TEST_CASE("acyclic example: explicit primitive of the unit and the evaluation map") {
  const auto doc = fixture("AC2");
  const auto& dga = doc.free();
  const auto& sig = dga.signature();
  const Poly y = parse_poly(sig, "b1 - a1b1a2 + b2a2^2");
  CHECK(leibniz_extend(dga, y) == dga.one());

  auto eval = AlgebraMorphism::identity(sig);
  eval.images[0] = dga.one();
  eval.images[1] = dga.one();
  CHECK(apply_morphism(eval, y) == dga.gen("b2"));
}

TEST_CASE("elementary automorphisms") {
  const auto doc = fixture("AN1");
  const auto& dga = doc.free();
  const auto& sig = dga.signature();
  const ElementaryAuto move(2, Scalar(1), parse_poly(sig, "be"));
  CHECK(elementary_auto_apply(move, parse_poly(sig, "f")) == parse_poly(sig, "f + be"));
  const auto pushed = pushforward_differential(dga, move);
  CHECK(pushed.differential(2).is_zero());
  CHECK(pushed.differential(0) == dga.one());
  CHECK(validate_dga(pushed).ok());

  CHECK_THROWS_AS(ElementaryAuto(2, Scalar(0), Poly(sig)), Error);
  CHECK_THROWS_AS(ElementaryAuto(2, Scalar(1), parse_poly(sig, "fb")), Error);
  CHECK_THROWS_AS(ElementaryAuto(2, Scalar(1), parse_poly(sig, "e")), Error);

  Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const auto tail = homogeneous_components(fdga::testing::random_poly(rng, sig, 3, 5));
    auto it = tail.find(sig->degree(1));
    Poly t = it == tail.end() ? Poly(sig) : it->second;
    // drop terms involving the pivot e
    Poly clean(sig);
    for (const auto& [w, c] : t.terms())
      if (std::find(w.letters().begin(), w.letters().end(), 1U) == w.letters().end()) clean.add_term(w, c);
    const ElementaryAuto e(1, Scalar(Rational(2, 3)), clean);
    const auto inv = elementary_auto_inverse(e);
    const Poly x = fdga::testing::random_poly(rng, sig, 3, 6);
    CHECK(elementary_auto_apply(inv, elementary_auto_apply(e, x)) == x);
    CHECK(elementary_auto_apply(e, elementary_auto_apply(inv, x)) == x);
  }
}

TEST_CASE("strict pushforward rejects a filtration break; reassignment repairs it") {
  const auto sig = Signature::create(Field::rational(), 0,
                                     {{"a", 0, Rational(1)}, {"b", 1, Rational(2)}, {"c", 0, Rational(3)}});
  DGAPresentation dga(sig, {Poly(sig), parse_poly(sig, "a"), Poly(sig)});
  // a -> a + c makes d b = a + c, whose action 3 is not below 2
  const ElementaryAuto move(0, Scalar(1), parse_poly(sig, "c"));
  CHECK_THROWS_AS(pushforward_differential(dga, move, FiltrationPolicy::Strict), Error);
  const auto repaired = pushforward_differential(dga, move, FiltrationPolicy::Reassign);
  CHECK(validate_dga(repaired).ok());
  CHECK(*repaired.signature()->generator(1).action == Rational(4));
}

TEST_CASE("normal forms of acyclic presentations") {
  const auto an1 = fixture("AN1");
  const auto nf = normalize_acyclic(an1.free(), 0);
  CHECK(nf.presentation.differential(0) == nf.presentation.one());
  CHECK(nf.presentation.differential(1).is_zero());
  CHECK(nf.presentation.differential(2).is_zero());
  CHECK(validate_dga(nf.presentation).ok());
  CHECK(euler_invariant(an1.free()) == euler_invariant(nf.presentation));
  CHECK_THROWS_AS(normalize_acyclic(an1.free(), 2), Error);

  for (const char* name : {"AC1", "AC2"}) {
    INFO(name);
    const auto doc = fixture(name);
    const Poly x = std::string(name) == "AC1" ? doc.free().gen("b1") : parse_poly(doc.signature(), "b1 - a1b1a2 + b2a2^2");
    const auto sf = acyclic_stable_normal_form(doc.free(), x);
    const auto& p = sf.presentation;
    CHECK(p.size() == doc.free().size() + 2);
    std::size_t cycles = 0;
    for (GenIndex g = 0; g < p.size(); ++g) cycles += p.differential(g).is_zero() ? 1 : 0;
    CHECK(cycles == p.size() - 1);
    CHECK(p.differential(sf.pivot) == p.one());
    CHECK(validate_dga(p).ok());
    CHECK(euler_invariant(p) == 0);
  }
}

TEST_CASE("stabilisations and free products") {
  const auto s = stabilization(1, Rational(1), Rational(2));
  CHECK(validate_dga(s).ok());
  CHECK(leibniz_extend(s, s.gen("b")) == s.gen("a"));
  CHECK(euler_invariant(s) == 0);
  CHECK_THROWS_AS(stabilization(1, Rational(2), Rational(2)), Error);
  CHECK_THROWS_AS(stabilization(1, Rational(0), Rational(2)), Error);

  const auto nc1 = fixture("NC1");
  CHECK_THROWS_AS(free_product(nc1.free(), nc1.free()), Error);
  const auto product = free_product(nc1.free(), stabilization(1, Rational(1), Rational(2), Field::rational(), 0, "p", "q"));
  CHECK(product.size() == 6);
  CHECK(validate_dga(product).ok());
  CHECK(euler_invariant(product) == euler_invariant(nc1.free()));
  CHECK_THROWS_AS(free_product(nc1.free(), stabilization(1, Rational(1), Rational(2), Field::prime(3), 0, "p", "q")),
                  Error);
}
