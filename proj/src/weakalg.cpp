#include "fdga/weakalg.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace fdga {

NuFamily::NuFamily(std::vector<Poly> members) : members_(std::move(members)) {
  for (const auto& p : members_)
    if (p.is_zero()) fail(ErrorKind::Precondition, "nu-family with a zero member");
  std::stable_sort(members_.begin(), members_.end(),
                   [](const Poly& a, const Poly& b) { return nu_of(a) < nu_of(b); });
}

std::size_t NuFamily::insert(Poly p) {
  if (p.is_zero()) fail(ErrorKind::Precondition, "nu-family with a zero member");
  const auto nu = nu_of(p);
  auto pos = std::upper_bound(members_.begin(), members_.end(), nu,
                              [](const NuValue& v, const Poly& m) { return v < nu_of(m); });
  const auto index = static_cast<std::size_t>(pos - members_.begin());
  members_.insert(pos, std::move(p));
  return index;
}

namespace {

bool has_suffix(const Word& u, const Word& m) {
  if (m.length() > u.length()) return false;
  return std::equal(m.letters().begin(), m.letters().end(), u.letters().end() - static_cast<std::ptrdiff_t>(m.length()));
}

std::vector<Poly> zeros(const SignaturePtr& sig, std::size_t n) { return std::vector<Poly>(n, Poly(sig)); }

}  // namespace

std::optional<std::vector<Poly>> nu_dependent_on(const Poly& x, const std::vector<Poly>& family, std::size_t prefix) {
  if (x.is_zero()) fail(ErrorKind::Precondition, "nu-dependence of zero");
  const auto& sig = x.signature();
  const auto& df = sig->degree_function();
  const std::size_t n = std::min(prefix, family.size());
  const std::uint64_t target = *nu_of(x);

  // Only the nu-top slices matter: top(x) = sum_i top(y_i) * lead(x_i).  The
  // unknowns are coefficients of words w with nu(w) = nu(x) - nu(x_i); we
  // collect the connected component of the incidence graph between unknowns
  // and monomials that contains the monomials of top(x).
  std::vector<std::optional<Poly>> leads(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto nu = nu_of(family[i]);
    if (!same_signature(family[i].signature(), sig)) fail(ErrorKind::Structure, "family member in a foreign algebra");
    if (nu && *nu <= target) leads[i] = leading_part(family[i]);
  }

  std::map<Word, std::size_t> row_of;
  std::vector<Word> queue;
  std::map<std::pair<std::size_t, Word>, std::size_t> column_of;
  std::vector<std::pair<std::size_t, Word>> columns;
  auto register_row = [&](const Word& u) {
    if (row_of.emplace(u, row_of.size()).second) queue.push_back(u);
  };
  for (auto it = x.terms().rbegin(); it != x.terms().rend() && it->first.nu() == target; ++it) register_row(it->first);

  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Word u = queue[head];
    for (std::size_t i = 0; i < n; ++i) {
      if (!leads[i]) continue;
      for (const auto& [m, c] : leads[i]->terms()) {
        if (!has_suffix(u, m)) continue;
        Word w = u.slice(0, u.length() - m.length(), df);
        auto key = std::make_pair(i, w);
        if (column_of.count(key)) continue;
        column_of.emplace(key, columns.size());
        columns.push_back(key);
        for (const auto& [m2, c2] : leads[i]->terms()) register_row(w * m2);
      }
    }
  }

  LinearSystem sys;
  sys.field = sig->field();
  sys.columns = columns.size();
  std::vector<LinearSystem::Row> rows(row_of.size());
  for (std::size_t col = 0; col < columns.size(); ++col) {
    const auto& [i, w] = columns[col];
    for (const auto& [m2, c2] : leads[i]->terms()) rows[row_of.at(w * m2)].emplace_back(col, c2);
  }
  std::vector<Scalar> rhs(row_of.size(), sys.field.make(Scalar(0)));
  for (const auto& [u, r] : row_of) rhs[r] = x.coefficient(u);
  for (std::size_t r = 0; r < rows.size(); ++r) sys.add_row(std::move(rows[r]), rhs[r]);

  auto solution = solve_linear(sys);
  if (!solution) return std::nullopt;
  auto quotients = zeros(sig, n);
  for (std::size_t col = 0; col < columns.size(); ++col) {
    const auto& [i, w] = columns[col];
    quotients[i].add_term(w, (*solution)[col]);
  }
  return quotients;
}

std::optional<std::vector<Poly>> nu_dependent_on(const Poly& x, const NuFamily& family) {
  return nu_dependent_on(x, family.members());
}

std::optional<DependenceWitness> nu_dependent(const NuFamily& family) {
  for (std::size_t i = 1; i < family.size(); ++i) {
    if (auto q = nu_dependent_on(family[i], family.members(), i)) return DependenceWitness{i, std::move(*q)};
  }
  return std::nullopt;
}

DivisionResult weak_divide(const Poly& x, const NuFamily& family) {
  DivisionResult result{zeros(x.signature(), family.size()), x, 0};
  while (!result.remainder.is_zero()) {
    auto step = nu_dependent_on(result.remainder, family);
    if (!step) break;
    for (std::size_t i = 0; i < family.size(); ++i) {
      if ((*step)[i].is_zero()) continue;
      result.remainder -= (*step)[i] * family[i];
      result.quotients[i] += (*step)[i];
    }
    ++result.rounds;
  }
#ifndef NDEBUG
  if (!division_identity_holds(x, family, result)) fail(ErrorKind::InternalAssertion, "division identity violated");
#endif
  return result;
}

bool division_identity_holds(const Poly& x, const NuFamily& family, const DivisionResult& d) {
  if (d.quotients.size() != family.size()) return false;
  Poly sum = d.remainder;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (nu_of(d.quotients[i] * family[i]) > nu_of(x)) return false;
    sum += d.quotients[i] * family[i];
  }
  return sum == x;
}

BasisCompletion complete_basis(const std::vector<Poly>& generators) {
  if (generators.empty()) fail(ErrorKind::EmptyIdeal, "no generators");
  const auto sig = generators.front().signature();
  const std::size_t n_in = generators.size();
  struct Member {
    Poly value;
    std::vector<Poly> over_inputs;
  };
  std::vector<Member> members;
  for (std::size_t j = 0; j < n_in; ++j) {
    if (generators[j].is_zero()) continue;
    auto unit = zeros(sig, n_in);
    unit[j] = Poly::constant(sig, Scalar(1));
    members.push_back({generators[j], std::move(unit)});
  }
  if (members.empty()) fail(ErrorKind::EmptyIdeal, "every generator is zero");

  auto by_nu = [](const Member& a, const Member& b) { return nu_of(a.value) < nu_of(b.value); };
  for (;;) {
    std::stable_sort(members.begin(), members.end(), by_nu);
    std::vector<Poly> values;
    for (const auto& m : members) values.push_back(m.value);
    auto dep = nu_dependent(NuFamily(values));
    if (!dep) break;
    Member& target = members[dep->index];
    for (std::size_t j = 0; j < dep->index; ++j) {
      const Poly& q = dep->quotients[j];
      if (q.is_zero()) continue;
      target.value -= q * members[j].value;
      for (std::size_t t = 0; t < n_in; ++t) target.over_inputs[t] -= q * members[j].over_inputs[t];
    }
    if (target.value.is_zero()) members.erase(members.begin() + static_cast<std::ptrdiff_t>(dep->index));
  }

  BasisCompletion out;
  std::vector<Poly> values;
  for (auto& m : members) {
    values.push_back(m.value);
    out.family_from_inputs.push_back(std::move(m.over_inputs));
  }
  out.family = NuFamily(std::move(values));
  for (const auto& g : generators) {
    auto d = weak_divide(g, out.family);
    if (!d.remainder.is_zero()) fail(ErrorKind::InternalAssertion, "input generator not recovered by completed basis");
    out.inputs_from_family.push_back(std::move(d.quotients));
  }
  return out;
}

// --- boundary completion ------------------------------------------------------

namespace {

// Convert coefficients over the b-family into coefficients over the
// boundaries d(y_i) using b_i = d(y_i) - sum_{j<i} u^i_j b_j.
std::vector<Poly> basis_to_pairs(std::vector<Poly> c, const std::vector<std::vector<Poly>>& triangular) {
  std::vector<Poly> out = c;
  for (std::size_t i = c.size(); i-- > 0;) {
    out[i] = c[i];
    if (c[i].is_zero()) continue;
    for (std::size_t j = 0; j < i; ++j)
      if (!triangular[i][j].is_zero()) c[j] -= c[i] * triangular[i][j];
  }
  return out;
}

struct Tracked {
  Poly y;
  Poly g;
  std::vector<Poly> over_inputs;
};

constexpr std::size_t kIterationLimit = 200000;

}  // namespace

CompletionResult boundary_basis(const DGAPresentation& dga, const std::vector<BoundaryPair>& pairs) {
  const auto& sig = dga.signature();
  const std::size_t n_in = pairs.size();
  std::vector<Tracked> pending;
  CompletionResult result{{}, NuFamily(), {}, 0, {}, {}, {}, 0, 0};
  for (std::size_t k = 0; k < n_in; ++k) {
    const auto& [y, g] = pairs[k];
    if (!same_signature(y.signature(), sig) || !same_signature(g.signature(), sig))
      fail(ErrorKind::Structure, "boundary pair outside the presentation's algebra");
    if (!(leibniz_extend(dga, y) == g)) fail(ErrorKind::Precondition, "pair " + std::to_string(k) + " has d(y) != boundary");
    if (g.is_zero()) continue;
    result.max_input_nu = std::max(result.max_input_nu, *nu_of(g));
    auto unit = zeros(sig, n_in);
    unit[k] = Poly::constant(sig, Scalar(1));
    pending.push_back({y, g, std::move(unit)});
  }
  if (pending.empty()) fail(ErrorKind::EmptyIdeal, "every boundary vanishes");

  std::vector<Tracked> accepted;
  auto& basis = result.basis;
  auto& triangular = result.triangular;

  auto absorb = [&](const Tracked& p, const std::vector<Poly>& quotients) {
    const auto coeffs = basis_to_pairs(quotients, triangular);
    Poly relation = p.y;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i].is_zero()) continue;
      if (!leibniz_extend(dga, coeffs[i]).is_zero()) return;
      relation -= signed_product(coeffs[i], accepted[i].y);
    }
    if (!relation.is_zero()) result.cycle_relations.push_back(std::move(relation));
  };

  auto accept = [&](Tracked p, Poly remainder, std::vector<Poly> coefficients) {
    const auto pos = basis.insert(std::move(remainder));
    if (pos != accepted.size()) fail(ErrorKind::InternalAssertion, "accepted element out of nu order");
    coefficients.resize(pos, Poly(sig));
    triangular.push_back(std::move(coefficients));
    accepted.push_back(std::move(p));
  };

  for (std::size_t iteration = 0; !pending.empty(); ++iteration) {
    if (iteration > kIterationLimit) fail(ErrorKind::InternalAssertion, "boundary completion did not terminate");

    // reduce every pending boundary; keep the one with the smallest remainder
    std::optional<std::size_t> best;
    std::optional<DivisionResult> best_division;
    for (std::size_t idx = 0; idx < pending.size();) {
      auto d = weak_divide(pending[idx].g, basis);
      if (d.remainder.is_zero()) {
        absorb(pending[idx], d.quotients);
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(idx));
        continue;
      }
      const bool better = !best_division || std::make_tuple(nu_of(d.remainder), d.remainder.top_word()) <
                                                std::make_tuple(nu_of(best_division->remainder),
                                                                best_division->remainder.top_word());
      if (better) {
        best = idx;
        best_division = std::move(d);
      }
      ++idx;
    }
    if (!best) break;

    Tracked chosen = std::move(pending[*best]);
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(*best));
    Poly remainder = std::move(best_division->remainder);
    std::vector<Poly> v = std::move(best_division->quotients);
    const NuValue m = nu_of(remainder);

    if (basis.empty() || m >= nu_of(basis[basis.size() - 1])) {
      accept(std::move(chosen), std::move(remainder), std::move(v));
      continue;
    }

    // The remainder dropped below an accepted element: peel the top quotient
    // v_k against d(y_k).  d(v_k) = 0 is forced by nu(d x) < nu(x).
    for (;;) {
      std::optional<std::size_t> k;
      for (std::size_t j = v.size(); j-- > 0;)
        if (!v[j].is_zero()) {
          k = j;
          break;
        }
      if (!k || nu_of(basis[*k]) <= m) break;
      const Poly vk = v[*k];
      if (!leibniz_extend(dga, vk).is_zero())
        fail(ErrorKind::Filtration, "peeling quotient is not a cycle; the input violates the filtration hypotheses");
      const Tracked& top = accepted[*k];
      chosen.y -= signed_product(vk, top.y);
      chosen.g -= vk * top.g;
      for (std::size_t t = 0; t < n_in; ++t) chosen.over_inputs[t] -= vk * top.over_inputs[t];
      for (std::size_t j = 0; j < *k; ++j)
        if (!triangular[*k][j].is_zero()) v[j] -= vk * triangular[*k][j];
      v[*k] = Poly(sig);
      ++result.peel_steps;
    }

    std::size_t keep = 0;
    while (keep < basis.size() && nu_of(basis[keep]) <= m) ++keep;
    for (std::size_t j = keep; j < v.size(); ++j)
      if (!v[j].is_zero()) fail(ErrorKind::InternalAssertion, "peeled quotient above the insertion point");
    for (std::size_t j = keep; j < accepted.size(); ++j) pending.push_back(std::move(accepted[j]));
    accepted.erase(accepted.begin() + static_cast<std::ptrdiff_t>(keep), accepted.end());
    basis.truncate(keep);
    triangular.resize(keep);
    v.resize(keep, Poly(sig));
    accept(std::move(chosen), std::move(remainder), std::move(v));
    ++result.rebuilds;
  }

  for (auto& t : accepted) {
    result.pairs.push_back({std::move(t.y), std::move(t.g)});
    result.pairs_from_inputs.push_back(std::move(t.over_inputs));
  }
  for (const auto& p : pairs) {
    if (p.boundary.is_zero()) {
      result.inputs_from_pairs.push_back(zeros(sig, result.pairs.size()));
      continue;
    }
    auto coeffs = ideal_member(p.boundary, result);
    if (!coeffs) fail(ErrorKind::InternalAssertion, "input boundary not recovered by the completed family");
    result.inputs_from_pairs.push_back(std::move(*coeffs));
  }
#ifndef NDEBUG
  std::string why;
  if (!completion_invariants_hold(dga, result, pairs, &why)) fail(ErrorKind::InternalAssertion, why);
#endif
  return result;
}

std::optional<std::vector<Poly>> ideal_member(const Poly& x, const CompletionResult& cr) {
  if (x.is_zero()) return zeros(x.signature(), cr.pairs.size());
  auto d = weak_divide(x, cr.basis);
  if (!d.remainder.is_zero()) return std::nullopt;
  return basis_to_pairs(std::move(d.quotients), cr.triangular);
}

bool completion_invariants_hold(const DGAPresentation& dga, const CompletionResult& cr,
                                const std::vector<BoundaryPair>& inputs, std::string* why) {
  auto bad = [&](const std::string& reason) {
    if (why) *why = reason;
    return false;
  };
  const std::size_t m = cr.pairs.size();
  if (cr.basis.size() != m || cr.triangular.size() != m) return bad("size mismatch");
  const auto& sig = dga.signature();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& g = cr.pairs[i].boundary;
    if (!(leibniz_extend(dga, cr.pairs[i].preimage) == g)) return bad("pair " + std::to_string(i) + " has d(y) != g");
    Poly expected = g;
    for (std::size_t j = 0; j < i; ++j) {
      const Poly term = cr.triangular[i][j] * cr.basis[j];
      if (nu_of(term) > nu_of(g)) return bad("triangular term exceeds nu(g) at " + std::to_string(i));
      expected -= term;
    }
    if (!(expected == cr.basis[i])) return bad("triangular relation fails at " + std::to_string(i));
    if (nu_of(cr.basis[i]) > nu_of(g)) return bad("nu(b) > nu(g) at " + std::to_string(i));
    if (i > 0 && nu_of(cr.basis[i - 1]) > nu_of(cr.basis[i])) return bad("basis not sorted by nu");
  }
  if (m > 0 && nu_of(cr.basis[m - 1]) > NuValue(cr.max_input_nu)) return bad("basis exceeds max input nu");
  if (nu_dependent(cr.basis)) return bad("basis is nu-dependent");
  if (cr.inputs_from_pairs.size() != inputs.size()) return bad("missing input witnesses");
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    Poly sum(sig);
    for (std::size_t i = 0; i < m; ++i) sum += cr.inputs_from_pairs[k][i] * cr.pairs[i].boundary;
    if (!(sum == inputs[k].boundary)) return bad("input " + std::to_string(k) + " not reproduced");
  }
  for (std::size_t i = 0; i < m; ++i) {
    Poly sum(sig);
    for (std::size_t k = 0; k < inputs.size(); ++k) sum += cr.pairs_from_inputs[i][k] * inputs[k].boundary;
    if (!(sum == cr.pairs[i].boundary)) return bad("pair " + std::to_string(i) + " not expressed by inputs");
  }
  for (const auto& c : cr.cycle_relations)
    if (!leibniz_extend(dga, c).is_zero()) return bad("recorded cycle relation is not a cycle");
  return true;
}

}  // namespace fdga
