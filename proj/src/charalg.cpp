#include "fdga/charalg.hpp"

#include <algorithm>
#include <set>

namespace fdga {

namespace {

void check_member(const DGAPresentation& dga, const Poly& p, const char* what) {
  if (!same_signature(p.signature(), dga.signature()))
    fail(ErrorKind::Structure, std::string(what) + " does not belong to the presentation's algebra");
}

std::set<std::int64_t> degrees_of(const Poly& x) {
  std::set<std::int64_t> out;
  for (const auto& [w, c] : x.terms()) out.insert(word_degree(*x.signature(), w.letters()));
  return out;
}

}  // namespace

Poly TwoSidedCertificate::expand(const DGAPresentation& dga, const std::vector<CertificateTriple>& triples,
                                 const SignaturePtr& sig) {
  Poly sum(sig);
  for (const auto& t : triples) {
    check_member(dga, t.u, "certificate factor");
    check_member(dga, t.v, "certificate factor");
    check_member(dga, t.w, "certificate factor");
    sum += t.u * leibniz_extend(dga, t.v) * t.w;
  }
  return sum;
}

TwoSidedCertificate::TwoSidedCertificate(const DGAPresentation& dga, const Poly& x,
                                         std::vector<CertificateTriple> triples)
    : x_(x), triples_(std::move(triples)) {
  check_member(dga, x, "certified element");
  if (!(expand(dga, triples_, dga.signature()) == x))
    fail(ErrorKind::Certificate, "sum u d(v) w does not reproduce the element");
}

LeftIdealRewrite certificate_to_left_ideal(const DGAPresentation& dga, const Poly& x,
                                           const TwoSidedCertificate& cert) {
  if (!(TwoSidedCertificate::expand(dga, cert.triples(), dga.signature()) == x))
    fail(ErrorKind::Certificate, "certificate does not reproduce the element");
  LeftIdealRewrite out;
  auto push = [&](Poly preimage, Poly coefficient) {
    if (coefficient.is_zero()) return;
    Poly boundary = leibniz_extend(dga, preimage);
    if (boundary.is_zero()) return;
    out.pairs.push_back({std::move(preimage), std::move(boundary)});
    out.coefficients.push_back(std::move(coefficient));
  };
  for (const auto& [u, v, w] : cert.triples()) {
    push(v * w, u);
    push(w, -(u * signed_product(v, dga.one())));
  }
  Poly check = dga.zero();
  for (std::size_t k = 0; k < out.pairs.size(); ++k) check += out.coefficients[k] * out.pairs[k].boundary;
  if (!(check == x)) fail(ErrorKind::InternalAssertion, "left-ideal rewrite does not reproduce the element");
  return out;
}

BoundaryWitness::BoundaryWitness(const DGAPresentation& dga, Poly y_, Poly x_) : y(std::move(y_)), x(std::move(x_)) {
  if (!(leibniz_extend(dga, y) == x)) fail(ErrorKind::InternalAssertion, "witness does not satisfy d(y) = x");
}

BoundaryWitness boundary_witness(const DGAPresentation& dga, const Poly& x, const TwoSidedCertificate& cert) {
  check_member(dga, x, "element");
  if (x.is_zero()) return BoundaryWitness(dga, dga.zero(), x);
  if (!leibniz_extend(dga, x).is_zero()) fail(ErrorKind::Precondition, "element is not a cycle");
  const auto rewrite = certificate_to_left_ideal(dga, x, cert);
  if (rewrite.pairs.empty()) fail(ErrorKind::Certificate, "certificate has no nonzero boundaries");
  const auto completion = boundary_basis(dga, rewrite.pairs);
  const auto coefficients = ideal_member(x, completion);
  if (!coefficients) fail(ErrorKind::Certificate, "element is not in the left ideal of the rewritten certificate");
  Poly y = dga.zero();
  for (std::size_t i = 0; i < coefficients->size(); ++i) {
    const Poly& xi = (*coefficients)[i];
    if (xi.is_zero()) continue;
    if (!leibniz_extend(dga, xi).is_zero())
      fail(ErrorKind::InternalAssertion, "coefficient over the free boundary family is not a cycle");
    y += signed_product(xi, completion.pairs[i].preimage);
  }
  return BoundaryWitness(dga, std::move(y), x);
}

std::optional<TwoSidedCertificate> two_sided_member_bounded(const DGAPresentation& dga, const Poly& x,
                                                            std::uint64_t cap) {
  check_member(dga, x, "element");
  if (x.is_zero()) return TwoSidedCertificate(dga, x, {});
  if (*nu_of(x) > cap) return std::nullopt;
  const auto& sig = *dga.signature();
  const auto& df = sig.degree_function();
  const auto targets = degrees_of(x);
  const auto words = words_up_to(df, cap);

  struct Column {
    GenIndex generator;
    std::size_t u;
    std::size_t w;
  };
  std::vector<Column> columns;
  std::map<Word, std::size_t> row_of;
  std::vector<LinearSystem::Row> rows;
  auto row = [&](const Word& m) {
    auto [it, inserted] = row_of.emplace(m, rows.size());
    if (inserted) rows.emplace_back();
    return it->second;
  };
  for (const auto& [m, c] : x.terms()) row(m);

  std::vector<GenIndex> letters;
  for (GenIndex a = 0; a < sig.size(); ++a) {
    const Poly& g = dga.differential(a);
    if (g.is_zero()) continue;
    const std::uint64_t ng = *nu_of(g);
    if (ng > cap) continue;
    for (std::size_t iu = 0; iu < words.size() && words[iu].nu() + ng <= cap; ++iu) {
      for (std::size_t iw = 0; iw < words.size() && words[iu].nu() + ng + words[iw].nu() <= cap; ++iw) {
        const auto& u = words[iu].letters();
        const auto& w = words[iw].letters();
        const std::int64_t deg = sig.normalize_degree(word_degree(sig, u) + sig.degree(a) - 1 + word_degree(sig, w));
        if (!targets.count(deg)) continue;
        const std::size_t col = columns.size();
        columns.push_back({a, iu, iw});
        for (const auto& [m, c] : g.terms()) {
          letters.assign(u.begin(), u.end());
          letters.insert(letters.end(), m.letters().begin(), m.letters().end());
          letters.insert(letters.end(), w.begin(), w.end());
          rows[row(Word(letters, df))].emplace_back(col, c);
        }
      }
    }
  }

  LinearSystem sys;
  sys.field = sig.field();
  sys.columns = columns.size();
  std::vector<Scalar> rhs(rows.size(), sys.field.make(Scalar(0)));
  for (const auto& [m, c] : x.terms()) rhs[row_of.at(m)] = c;
  for (std::size_t r = 0; r < rows.size(); ++r) sys.add_row(std::move(rows[r]), rhs[r]);
  const auto solution = solve_linear(sys);
  if (!solution) return std::nullopt;

  // group the left factors of equal (generator, right word)
  std::map<std::pair<GenIndex, std::size_t>, Poly> grouped;
  for (std::size_t col = 0; col < columns.size(); ++col) {
    const Scalar& c = (*solution)[col];
    if (c.is_zero()) continue;
    const auto& [a, iu, iw] = columns[col];
    grouped.try_emplace({a, iw}, dga.signature()).first->second.add_term(words[iu], c);
  }
  std::vector<CertificateTriple> triples;
  for (auto& [key, u] : grouped)
    triples.push_back({std::move(u), dga.gen(key.first), Poly::monomial(dga.signature(), words[key.second])});
  return TwoSidedCertificate(dga, x, std::move(triples));
}

std::optional<BoundaryWitness> is_acyclic_bounded(const DGAPresentation& dga, std::uint64_t cap) {
  auto cert = two_sided_member_bounded(dga, dga.one(), cap);
  if (!cert) return std::nullopt;
  return boundary_witness(dga, dga.one(), *cert);
}

TruncatedComplex truncated_complex(const DGAPresentation& dga, std::uint64_t cap) {
  const auto& sig = *dga.signature();
  TruncatedComplex tc;
  tc.signature = dga.signature();
  tc.cap = cap;
  tc.basis = words_up_to(sig.degree_function(), cap);
  for (std::size_t j = 0; j < tc.basis.size(); ++j) {
    tc.index.emplace(tc.basis[j], j);
    tc.by_degree[word_degree(sig, tc.basis[j].letters())].push_back(j);
  }
  tc.columns.resize(tc.basis.size());
  for (std::size_t j = 0; j < tc.basis.size(); ++j) {
    const Poly image = leibniz_extend(dga, Poly::monomial(dga.signature(), tc.basis[j]));
    for (const auto& [m, c] : image.terms()) {
      auto it = tc.index.find(m);
      if (it == tc.index.end()) fail(ErrorKind::Filtration, "differential leaves the truncation");
      tc.columns[j].emplace_back(it->second, c);
    }
  }
  return tc;
}

std::optional<Poly> is_boundary_bruteforce(const TruncatedComplex& tc, const Poly& x) {
  if (!same_signature(x.signature(), tc.signature)) fail(ErrorKind::Structure, "element outside the truncation's algebra");
  if (x.is_zero()) return Poly(tc.signature);
  if (*nu_of(x) > tc.cap) fail(ErrorKind::Precondition, "nu(x) exceeds the truncation cap");
  const auto& sig = *tc.signature;

  std::vector<std::size_t> unknowns;
  for (auto d : degrees_of(x)) {
    auto it = tc.by_degree.find(sig.normalize_degree(d + 1));
    if (it == tc.by_degree.end()) continue;
    for (auto j : it->second)
      if (std::find(unknowns.begin(), unknowns.end(), j) == unknowns.end()) unknowns.push_back(j);
  }

  std::map<std::size_t, std::size_t> row_of;
  std::vector<LinearSystem::Row> rows;
  auto row = [&](std::size_t basis_index) {
    auto [it, inserted] = row_of.emplace(basis_index, rows.size());
    if (inserted) rows.emplace_back();
    return it->second;
  };
  for (const auto& [m, c] : x.terms()) row(tc.index.at(m));
  for (std::size_t k = 0; k < unknowns.size(); ++k)
    for (const auto& [r, c] : tc.columns[unknowns[k]]) rows[row(r)].emplace_back(k, c);

  LinearSystem sys;
  sys.field = sig.field();
  sys.columns = unknowns.size();
  std::vector<Scalar> rhs(rows.size(), sys.field.make(Scalar(0)));
  for (const auto& [m, c] : x.terms()) rhs[row_of.at(tc.index.at(m))] = c;
  for (std::size_t r = 0; r < rows.size(); ++r) sys.add_row(std::move(rows[r]), rhs[r]);
  const auto solution = solve_linear(sys);
  if (!solution) return std::nullopt;
  Poly y(tc.signature);
  for (std::size_t k = 0; k < unknowns.size(); ++k) y.add_term(tc.basis[unknowns[k]], (*solution)[k]);
  return y;
}

bool differential_squares_to_zero(const TruncatedComplex& tc) {
  for (const auto& column : tc.columns) {
    std::map<std::size_t, Scalar> acc;
    for (const auto& [r, c] : column)
      for (const auto& [r2, c2] : tc.columns[r]) {
        auto [it, inserted] = acc.try_emplace(r2, c * c2);
        if (!inserted) it->second += c * c2;
      }
    for (const auto& [r, v] : acc)
      if (!v.is_zero()) return false;
  }
  return true;
}

}  // namespace fdga
