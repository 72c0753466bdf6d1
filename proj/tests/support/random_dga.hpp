#pragma once

// Hand-rolled generators for property tests: random valid filtered DGAs,
// random elements, and certificates read off the Leibniz expansion.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fdga/charalg.hpp"
#include "fdga/cli.hpp"
#include "fdga/dga.hpp"
#include "fdga/document.hpp"
#include "fdga/supercomm.hpp"

namespace fdga::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline DGADocument fixture(const std::string& name) { return load_document(fixtures_dir() / (name + ".json")); }

inline Scalar random_scalar(Rng& rng) {
  int v = 0;
  while (v == 0) v = uniform(rng, -3, 3);
  return Scalar(v);
}

/// Random word over the generators with nu <= max_nu (possibly empty).
inline std::vector<GenIndex> random_letters(Rng& rng, const Signature& sig, std::uint64_t max_nu, int max_len = 3) {
  const auto& df = sig.degree_function();
  std::vector<GenIndex> letters;
  std::uint64_t nu = 0;
  const int len = uniform(rng, 0, max_len);
  for (int k = 0; k < len; ++k) {
    const auto g = static_cast<GenIndex>(uniform(rng, 0, static_cast<int>(sig.size()) - 1));
    if (nu + df.weight(g) > max_nu) continue;
    nu += df.weight(g);
    letters.push_back(g);
  }
  return letters;
}

inline Poly random_poly(Rng& rng, const SignaturePtr& sig, int terms, std::uint64_t max_nu, int max_len = 3) {
  Poly p(sig);
  for (int t = 0; t < terms; ++t) p += Poly::monomial(sig, random_letters(rng, *sig, max_nu, max_len), random_scalar(rng));
  return p;
}

struct RandomDGAOptions {
  int min_generators = 2;
  int max_generators = 4;
  std::uint64_t max_weight = 4;
  bool allow_unit_boundary = true;
  bool allow_prime_field = false;
};

/// Generators are added one at a time.  Each is a cycle or gets as boundary a
/// random homogeneous cycle assembled from cycle generators, boundaries of
/// earlier words, and scalars; its action is then chosen strictly above.
inline DGAPresentation random_dga(Rng& rng, const RandomDGAOptions& opt = {}) {
  const int n = uniform(rng, opt.min_generators, opt.max_generators);
  const std::int64_t mu = coin(rng) ? 0 : 2;
  const Field field = opt.allow_prime_field && coin(rng, 0.25) ? Field::prime(7) : Field::rational();

  struct Draft {
    std::int64_t degree;
    std::uint64_t weight;
    // terms of the boundary as (coefficient, letters)
    std::vector<std::pair<Scalar, std::vector<GenIndex>>> image;
  };
  std::vector<Draft> drafts;

  auto build = [&](std::size_t count) {
    std::vector<GeneratorInfo> infos;
    for (std::size_t i = 0; i < count; ++i)
      infos.push_back({"g" + std::to_string(i), drafts[i].degree, Rational(static_cast<long>(drafts[i].weight))});
    auto sig = Signature::create(field, mu, infos);
    std::vector<Poly> diff;
    for (std::size_t i = 0; i < count; ++i) {
      Poly p(sig);
      for (const auto& [c, letters] : drafts[i].image) p += Poly::monomial(sig, letters, c);
      diff.push_back(std::move(p));
    }
    return DGAPresentation(sig, std::move(diff));
  };

  for (int i = 0; i < n; ++i) {
    Draft d{uniform(rng, -1, 2), static_cast<std::uint64_t>(uniform(rng, 1, 2)), {}};
    if (i > 0 && coin(rng, 0.6)) {
      const auto partial = build(drafts.size());
      const auto& sig = *partial.signature();
      const auto& df = sig.degree_function();
      Poly image(partial.signature());
      std::optional<std::int64_t> target;
      const int attempts = uniform(rng, 1, 3);
      for (int a = 0; a < attempts; ++a) {
        Poly candidate(partial.signature());
        const int kind = uniform(rng, 0, 2);
        if (kind == 0 && opt.allow_unit_boundary && coin(rng, 0.3)) {
          candidate = Poly::constant(partial.signature(), random_scalar(rng));
        } else if (kind == 1) {
          // product of cycle generators
          std::vector<GenIndex> letters;
          for (int k = uniform(rng, 1, 2); k > 0; --k) {
            const auto g = static_cast<GenIndex>(uniform(rng, 0, static_cast<int>(sig.size()) - 1));
            if (partial.differential(g).is_zero()) letters.push_back(g);
          }
          if (!letters.empty()) candidate = Poly::monomial(partial.signature(), letters, random_scalar(rng));
        } else {
          // a boundary of an earlier word
          const auto letters = random_letters(rng, sig, opt.max_weight - 1, 2);
          candidate = random_scalar(rng) * leibniz_extend(partial, Poly::monomial(partial.signature(), letters));
        }
        if (candidate.is_zero()) continue;
        if (grading_of(candidate).kind != Grading::Kind::Homogeneous) continue;
        const auto deg = grading_of(candidate).degree;
        if (target && *target != deg) continue;
        if (*nu_of(candidate, df) + 1 > opt.max_weight) continue;
        target = deg;
        image += candidate;
      }
      if (!image.is_zero()) {
        d.degree = sig.normalize_degree(*target + 1);
        const auto floor = *nu_of(image) + 1;
        d.weight = std::min<std::uint64_t>(opt.max_weight, floor + static_cast<std::uint64_t>(uniform(rng, 0, 1)));
        for (const auto& [w, c] : image.terms()) d.image.emplace_back(c, w.letters());
      }
    }
    drafts.push_back(std::move(d));
  }
  return build(drafts.size());
}

/// Triples (c * prefix, a_j, suffix) from expanding d on every monomial of z.
inline std::vector<CertificateTriple> leibniz_certificate(const DGAPresentation& dga, const Poly& z) {
  const auto& sig = dga.signature();
  std::vector<CertificateTriple> out;
  for (const auto& [w, c] : z.terms()) {
    const auto& letters = w.letters();
    std::int64_t prefix_degree = 0;
    for (std::size_t j = 0; j < letters.size(); ++j) {
      if (!dga.differential(letters[j]).is_zero()) {
        const Scalar coeff = sig->sign(prefix_degree) == 1 ? c : -c;
        out.push_back({Poly::monomial(sig, std::vector<GenIndex>(letters.begin(), letters.begin() + j), coeff),
                       dga.gen(letters[j]),
                       Poly::monomial(sig, std::vector<GenIndex>(letters.begin() + j + 1, letters.end()))});
      }
      prefix_degree += sig->degree(letters[j]);
    }
  }
  return out;
}

struct WitnessTrial {
  DGAPresentation dga;
  Poly z;
  Poly x;
  std::optional<BoundaryWitness> witness;
  /// nullopt when skipped (x = 0)
  std::optional<bool> oracle_agrees;
  std::string failure;
};

/// One randomized round: x = d(z) with the Leibniz certificate, the
/// boundary witness, and the truncated oracle at cap nu(y).
inline WitnessTrial witness_trial(Rng& rng, std::uint64_t z_nu = 5) {
  auto dga = random_dga(rng);
  const auto& sig = dga.signature();
  Poly z(sig);
  while (z.is_zero() || leibniz_extend(dga, z).is_zero()) {
    z = random_poly(rng, sig, uniform(rng, 1, 3), z_nu);
    if (z.is_zero()) continue;
    // resample the presentation when it has no non-cycle generator
    bool any = false;
    for (const auto& d : dga.differential()) any = any || !d.is_zero();
    if (!any) {
      dga = random_dga(rng);
      z = Poly(dga.signature());
    }
  }
  const Poly x = leibniz_extend(dga, z);
  WitnessTrial t{dga, z, x, std::nullopt, std::nullopt, {}};
  try {
    const TwoSidedCertificate cert(dga, x, leibniz_certificate(dga, z));
    t.witness.emplace(boundary_witness(dga, x, cert));
    const std::uint64_t cap = *nu_of(t.witness->y);
    const auto tc = truncated_complex(dga, cap);
    const auto y = is_boundary_bruteforce(tc, x);
    t.oracle_agrees = y.has_value() && leibniz_extend(dga, *y) == x;
  } catch (const Error& e) {
    t.failure = e.what();
  }
  return t;
}

struct RandomTriviality {
  SCDGA dga;
  std::vector<TrivialityPair> pairs;
};

/// Super-commutative DGA with generators b (odd, d b = 1 - sum c_i u_i t_i),
/// odd cycles u_i, t_i, even v_i with d v_i = t_i, and spare cycles; the
/// certificate is (1, b) and (c_i u_i, v_i), with (1, b) optionally split.
/// k = 0 gives the degenerate certificate {(1, b)}.
inline RandomTriviality random_triviality(Rng& rng, const Field& field, int k) {
  std::vector<GeneratorInfo> infos{{"b", 1, std::nullopt}};
  for (int i = 0; i < k; ++i) {
    infos.push_back({"u" + std::to_string(i), 1, std::nullopt});
    infos.push_back({"t" + std::to_string(i), -1, std::nullopt});
    infos.push_back({"v" + std::to_string(i), 0, std::nullopt});
  }
  const int spare = uniform(rng, 0, 2);
  for (int i = 0; i < spare; ++i) infos.push_back({"e" + std::to_string(i), uniform(rng, -1, 2), std::nullopt});
  const auto sig = Signature::create(field, field.characteristic() == 2 ? 0 : (coin(rng) ? 0 : 2), infos);

  auto gen = [&](GenIndex g) { return SCPoly::generator(sig, g); };
  std::vector<SCPoly> diff(sig->size(), SCPoly(sig));
  std::vector<TrivialityPair> pairs;
  SCPoly db = SCPoly::constant(sig, Scalar(1));
  for (int i = 0; i < k; ++i) {
    const auto u = static_cast<GenIndex>(1 + 3 * i);
    Scalar c = field.make(random_scalar(rng));
    if (c.is_zero()) c = Scalar(1);
    diff[u + 2] = gen(u + 1);
    db -= c * (gen(u) * gen(u + 1));
    pairs.push_back({c * gen(u), gen(u + 2)});
  }
  diff[0] = db;
  const SCPoly b = gen(0);
  const SCPoly one = SCPoly::constant(sig, Scalar(1));
  if (field.characteristic() != 2 && coin(rng)) {
    const Scalar lambda = field.make(random_scalar(rng));
    pairs.push_back({lambda * one, b});
    pairs.push_back({one - lambda * one, b});
  } else {
    pairs.push_back({one, b});
  }
  std::shuffle(pairs.begin(), pairs.end(), rng);
  // drop pieces that became zero (a split with lambda = 1)
  std::erase_if(pairs, [](const TrivialityPair& p) { return p.x.is_zero(); });
  return {SCDGA(sig, std::move(diff)), std::move(pairs)};
}

}  // namespace fdga::testing
