#include <doctest.h>

#include <algorithm>

#include "fdga/document.hpp"
#include "fdga/supercomm.hpp"
#include "support/random_dga.hpp"

using namespace fdga;
using fdga::testing::fixture;
using fdga::testing::Rng;

namespace {

const SCDGA& ex14() {
  static const DGADocument doc = fixture("EX14");
  return doc.supercommutative();
}

SCPoly S(const char* text) { return parse_sc_poly(ex14().signature(), text); }

SCPoly random_sc(Rng& rng, const SignaturePtr& sig, int terms, int max_len) {
  SCPoly p(sig);
  for (int t = 0; t < terms; ++t) {
    std::vector<GenIndex> letters;
    for (int k = fdga::testing::uniform(rng, 0, max_len); k > 0; --k)
      letters.push_back(static_cast<GenIndex>(fdga::testing::uniform(rng, 0, static_cast<int>(sig->size()) - 1)));
    p += SCPoly::product(sig, letters, fdga::testing::random_scalar(rng));
  }
  return p;
}

/// single-degree part of p
SCPoly degree_part(const SCPoly& p, std::int64_t d) {
  SCPoly out(p.signature());
  for (const auto& [w, c] : p.terms())
    if (sc_word_degree(*p.signature(), w) == d) out.add_term(w, c);
  return out;
}

}  // namespace

TEST_CASE("super-commutative normal forms") {
  CHECK(S("cb") == -S("bc"));
  CHECK(S("b1b1").is_zero());
  CHECK(S("b1 b b1").is_zero());
  CHECK(S("b2b1") == -S("b1b2"));
  CHECK(sc_pow(S("b + c"), 2) == S("bc + cb"));
  CHECK(sc_pow(S("b + c"), 2).is_zero());

  const auto f2 = Signature::create(Field::prime(2), 0, {{"x", 1, std::nullopt}, {"y", 0, std::nullopt}});
  CHECK_FALSE(parse_sc_poly(f2, "xx").is_zero());
  CHECK(parse_sc_poly(f2, "yx") == parse_sc_poly(f2, "xy"));

  const auto even = Signature::create(Field::rational(), 0, {{"p", 0, std::nullopt}, {"q", 2, std::nullopt}});
  CHECK(parse_sc_poly(even, "qp") == parse_sc_poly(even, "pq"));
  CHECK(format_sc_poly(parse_sc_poly(even, "qp + 2 pp")) == "2 pp + pq");
}

TEST_CASE("normalization is confluent under permutation") {
  Rng rng(17);
  const auto& sig = *ex14().signature();
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<GenIndex> letters;
    for (int k = fdga::testing::uniform(rng, 0, 4); k > 0; --k)
      letters.push_back(static_cast<GenIndex>(fdga::testing::uniform(rng, 0, 3)));
    const auto base = sc_normalize(sig, letters);
    auto shuffled = letters;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto other = sc_normalize(sig, shuffled);
    REQUIRE(base.has_value() == other.has_value());
    if (!base) continue;
    CHECK(base->first == other->first);
    CHECK(std::is_sorted(base->first.letters().begin(), base->first.letters().end()));
    // relative sign is the parity of the permutation restricted to odd letters
    int inversions = 0;
    std::vector<GenIndex> odd_a, odd_b;
    for (GenIndex g : letters)
      if (sig.odd(sig.degree(g))) odd_a.push_back(g);
    for (GenIndex g : shuffled)
      if (sig.odd(sig.degree(g))) odd_b.push_back(g);
    // odd letters are distinct here, so the permutation is well defined
    for (std::size_t i = 0; i < odd_b.size(); ++i)
      for (std::size_t j = i + 1; j < odd_b.size(); ++j) {
        const auto pi = std::find(odd_a.begin(), odd_a.end(), odd_b[i]) - odd_a.begin();
        const auto pj = std::find(odd_a.begin(), odd_a.end(), odd_b[j]) - odd_a.begin();
        inversions += pi > pj ? 1 : 0;
      }
    CHECK(base->second * (inversions % 2 ? -1 : 1) == other->second);
  }
}

TEST_CASE("ring laws, graded commutativity and the Leibniz rule") {
  Rng rng(23);
  const auto& dga = ex14();
  const auto& sig = dga.signature();
  for (int trial = 0; trial < 100; ++trial) {
    const SCPoly p = random_sc(rng, sig, 3, 3);
    const SCPoly q = random_sc(rng, sig, 3, 3);
    const SCPoly r = random_sc(rng, sig, 2, 2);
    CHECK(sc_mul(sc_mul(p, q), r) == sc_mul(p, sc_mul(q, r)));
    CHECK(sc_mul(p, sc_add(q, r)) == sc_add(sc_mul(p, q), sc_mul(p, r)));
    CHECK(sc_leibniz(dga, sc_leibniz(dga, p)).is_zero());
    for (std::int64_t dp : sc_degrees(p)) {
      const SCPoly hp = degree_part(p, dp);
      for (std::int64_t dq : sc_degrees(q)) {
        const SCPoly hq = degree_part(q, dq);
        const Scalar sign((dp * dq) % 2 == 0 ? 1 : -1);
        CHECK(sc_mul(hp, hq) == sign * sc_mul(hq, hp));
      }
      const Scalar s(dp % 2 == 0 ? 1 : -1);
      CHECK(sc_leibniz(dga, hp * q) == sc_leibniz(dga, hp) * q + s * (hp * sc_leibniz(dga, q)));
    }
  }
}

TEST_CASE("the displayed differentials recompute exactly") {
  const auto table = counterexample_table(ex14());
  CHECK(table.size() == 21);
  for (const auto& line : table) {
    INFO(line.label);
    CHECK(line.ok);
  }
  CHECK(sc_leibniz(ex14(), S("b1b2")) == S("bcb2 - b1bc"));
  CHECK(sc_validate(ex14()).ok());
}

TEST_CASE("bcb2 is a cycle in the boundary ideal but not a boundary") {
  const auto& dga = ex14();
  const SCPoly x = S("bcb2");
  CHECK(sc_leibniz(dga, x).is_zero());
  const auto cert = sc_char_vanishing(dga, x, 2);
  REQUIRE(cert);
  CHECK_FALSE(sc_is_boundary_bruteforce(dga, x, 4));
  CHECK_FALSE(sc_is_boundary_bruteforce(dga, x, 6));
  // the difference with b1bc is a boundary
  const auto y = sc_is_boundary_bruteforce(dga, S("bcb2 - b1bc"), 2);
  REQUIRE(y);
  CHECK(sc_leibniz(dga, *y) == S("bcb2 - b1bc"));
  CHECK_FALSE(sc_char_vanishing(dga, S("b"), 4));
  CHECK_THROWS_AS(SCCertificate(dga, x, {{dga.one(), dga.gen("b1"), dga.one()}}), Error);
}

TEST_CASE("length enumeration") {
  const auto& sig = *ex14().signature();
  const auto words = sc_words_up_to(sig, 5);
  // four distinct odd letters: subsets of size <= 4
  CHECK(words.size() == 16);
  CHECK(std::is_sorted(words.begin(), words.end()));
}

TEST_CASE("acyclicity witnesses from triviality certificates") {
  Rng rng(8);
  SUBCASE("degenerate certificate gives w = b") {
    const auto t = fdga::testing::random_triviality(rng, Field::rational(), 0);
    const TrivialityCertificate cert(t.dga, {{t.dga.one(), t.dga.gen("b")}});
    const auto w = acyclicity_witness_char_ne2(t.dga, cert);
    CHECK(w.w == t.dga.gen("b"));
    CHECK(w.nilpotency == 1);
    const auto t2 = fdga::testing::random_triviality(rng, Field::prime(2), 0);
    const TrivialityCertificate cert2(t2.dga, {{t2.dga.one(), t2.dga.gen("b")}});
    CHECK(acyclicity_witness_char2(t2.dga, cert2) == t2.dga.gen("b"));
  }
  SUBCASE("(1 - d w)^2 need not vanish") {
    const auto t = fdga::testing::random_triviality(rng, Field::rational(), 2);
    const TrivialityCertificate cert(t.dga, t.pairs);
    const auto w = acyclicity_witness_char_ne2(t.dga, cert);
    CHECK(sc_leibniz(t.dga, w.w) == t.dga.one());
    const SCPoly s = t.dga.one() - sc_leibniz(t.dga, w.w0);
    CHECK_FALSE(sc_pow(s, 2).is_zero());
    CHECK(w.nilpotency == 3);
  }
  SUBCASE("random certificates") {
    for (int trial = 0; trial < 40; ++trial) {
      const Field f = trial % 4 == 0 ? Field::prime(7) : Field::rational();
      const auto t = fdga::testing::random_triviality(rng, f, fdga::testing::uniform(rng, 0, 3));
      REQUIRE(sc_validate(t.dga).ok());
      const auto w = acyclicity_witness_char_ne2(t.dga, TrivialityCertificate(t.dga, t.pairs));
      CHECK(sc_leibniz(t.dga, w.w) == t.dga.one());
      const auto t2 = fdga::testing::random_triviality(rng, Field::prime(2), fdga::testing::uniform(rng, 0, 3));
      const TrivialityCertificate c2(t2.dga, t2.pairs);
      CHECK(sc_leibniz(t2.dga, acyclicity_witness_char2(t2.dga, c2)) == t2.dga.one());
      // squares are cycles in characteristic two
      for (GenIndex g = 0; g < t2.dga.size(); ++g) CHECK(sc_leibniz(t2.dga, sc_pow(t2.dga.gen(g), 2)).is_zero());
    }
  }
  SUBCASE("errors") {
    const auto q = fdga::testing::random_triviality(rng, Field::rational(), 1);
    const auto f2 = fdga::testing::random_triviality(rng, Field::prime(2), 1);
    CHECK_THROWS_AS(TrivialityCertificate(q.dga, {{q.dga.one(), q.dga.gen("u0")}}), Error);
    CHECK_THROWS_AS(acyclicity_witness_char_ne2(f2.dga, TrivialityCertificate(f2.dga, f2.pairs)), Error);
    CHECK_THROWS_AS(acyclicity_witness_char2(q.dga, TrivialityCertificate(q.dga, q.pairs)), Error);
  }
}
