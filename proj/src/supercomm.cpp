#include "fdga/supercomm.hpp"

#include <algorithm>
#include <set>

#include "fdga/linsolve.hpp"

namespace fdga {

namespace {

bool char2(const Signature& sig) { return sig.field().characteristic() == 2; }

bool odd_gen(const Signature& sig, GenIndex g) { return Signature::odd(sig.degree(g)); }

}  // namespace

std::strong_ordering operator<=>(const SCWord& a, const SCWord& b) {
  if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
  return a.letters_ <=> b.letters_;
}

std::optional<std::pair<SCWord, int>> sc_word_mul(const Signature& sig, const SCWord& a, const SCWord& b) {
  const auto& x = a.letters();
  const auto& y = b.letters();
  std::vector<GenIndex> merged;
  merged.reserve(x.size() + y.size());
  // moving y_j to the left past every strictly larger odd letter of x
  int parity = 0;
  std::size_t i = 0;
  std::size_t odd_remaining = 0;
  for (GenIndex g : x) odd_remaining += odd_gen(sig, g) ? 1 : 0;
  for (GenIndex g : y) {
    while (i < x.size() && x[i] <= g) {
      if (odd_gen(sig, x[i])) --odd_remaining;
      merged.push_back(x[i++]);
    }
    if (odd_gen(sig, g)) parity ^= static_cast<int>(odd_remaining & 1U);
    merged.push_back(g);
  }
  merged.insert(merged.end(), x.begin() + static_cast<std::ptrdiff_t>(i), x.end());
  if (!char2(sig)) {
    for (std::size_t k = 1; k < merged.size(); ++k)
      if (merged[k] == merged[k - 1] && odd_gen(sig, merged[k])) return std::nullopt;
  }
  const int sign = char2(sig) || parity == 0 ? 1 : -1;
  return std::make_pair(SCWord(std::move(merged)), sign);
}

std::optional<std::pair<SCWord, int>> sc_normalize(const Signature& sig, const std::vector<GenIndex>& letters) {
  std::pair<SCWord, int> acc{SCWord(), 1};
  for (GenIndex g : letters) {
    if (g >= sig.size()) fail(ErrorKind::Structure, "generator index out of range");
    auto next = sc_word_mul(sig, acc.first, SCWord({g}));
    if (!next) return std::nullopt;
    acc = {std::move(next->first), acc.second * next->second};
  }
  return acc;
}

// --- SCPoly ------------------------------------------------------------------

SCPoly::SCPoly(SignaturePtr sig) : sig_(std::move(sig)) {
  if (!sig_) fail(ErrorKind::Structure, "polynomial without signature");
}

SCPoly SCPoly::constant(SignaturePtr sig, const Scalar& c) {
  SCPoly p(std::move(sig));
  p.add_term(SCWord(), c);
  return p;
}

SCPoly SCPoly::generator(SignaturePtr sig, GenIndex g) { return product(std::move(sig), {g}); }

SCPoly SCPoly::product(SignaturePtr sig, const std::vector<GenIndex>& letters, const Scalar& c) {
  SCPoly p(sig);
  if (auto n = sc_normalize(*sig, letters)) p.add_term(n->first, n->second == 1 ? c : -c);
  return p;
}

Scalar SCPoly::coefficient(const SCWord& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? sig_->field().make(Scalar(0)) : it->second;
}

void SCPoly::add_term(const SCWord& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, sig_->field().make(c));
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void SCPoly::check_compatible(const SCPoly& other) const {
  if (!same_signature(sig_, other.sig_)) fail(ErrorKind::Structure, "operands live in different algebras");
}

SCPoly& SCPoly::operator+=(const SCPoly& other) {
  check_compatible(other);
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

SCPoly& SCPoly::operator-=(const SCPoly& other) {
  check_compatible(other);
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

SCPoly SCPoly::operator-() const { return Scalar(-1) * *this; }

SCPoly operator*(const SCPoly& a, const SCPoly& b) {
  a.check_compatible(b);
  SCPoly r(a.sig_);
  for (const auto& [u, x] : a.terms_)
    for (const auto& [v, y] : b.terms_)
      if (auto m = sc_word_mul(*a.sig_, u, v)) r.add_term(m->first, m->second == 1 ? x * y : -(x * y));
  return r;
}

SCPoly operator*(const Scalar& c, const SCPoly& p) {
  SCPoly r(p.sig_);
  for (const auto& [w, a] : p.terms_) r.add_term(w, a * c);
  return r;
}

bool operator==(const SCPoly& a, const SCPoly& b) { return same_signature(a.sig_, b.sig_) && a.terms_ == b.terms_; }

SCPoly sc_add(const SCPoly& p, const SCPoly& q) { return p + q; }
SCPoly sc_mul(const SCPoly& p, const SCPoly& q) { return p * q; }

SCPoly sc_pow(const SCPoly& p, unsigned exponent) {
  SCPoly r = SCPoly::constant(p.signature(), Scalar(1));
  for (unsigned i = 0; i < exponent; ++i) r = r * p;
  return r;
}

std::int64_t sc_word_degree(const Signature& sig, const SCWord& w) { return word_degree(sig, w.letters()); }

std::vector<std::int64_t> sc_degrees(const SCPoly& p) {
  std::set<std::int64_t> out;
  for (const auto& [w, c] : p.terms()) out.insert(sc_word_degree(*p.signature(), w));
  return {out.begin(), out.end()};
}

// --- SCDGA -------------------------------------------------------------------

SCDGA::SCDGA(SignaturePtr sig, std::vector<SCPoly> differential) : sig_(std::move(sig)), diff_(std::move(differential)) {
  if (!sig_) fail(ErrorKind::Structure, "presentation without signature");
  if (diff_.size() != sig_->size()) fail(ErrorKind::Structure, "differential must list one image per generator");
  for (const auto& p : diff_)
    if (!same_signature(p.signature(), sig_)) fail(ErrorKind::Structure, "differential image in a foreign algebra");
}

SCPoly SCDGA::gen(std::string_view name) const {
  auto idx = sig_->index_of(name);
  if (!idx) fail(ErrorKind::Structure, "unknown generator '" + std::string(name) + "'");
  return gen(*idx);
}

SCPoly sc_leibniz(const SCDGA& dga, const SCPoly& p) {
  const auto& sig = *dga.signature();
  if (!same_signature(p.signature(), dga.signature()))
    fail(ErrorKind::Structure, "element does not belong to the presentation's algebra");
  SCPoly out(dga.signature());
  for (const auto& [w, c] : p.terms()) {
    const auto& ws = w.letters();
    std::int64_t prefix_degree = 0;
    for (std::size_t j = 0; j < ws.size(); ++j) {
      const SCPoly& image = dga.differential(ws[j]);
      if (!image.is_zero()) {
        const SCPoly prefix = SCPoly::product(dga.signature(), {ws.begin(), ws.begin() + static_cast<std::ptrdiff_t>(j)});
        const SCPoly suffix =
            SCPoly::product(dga.signature(), {ws.begin() + static_cast<std::ptrdiff_t>(j) + 1, ws.end()});
        const Scalar coeff = sig.sign(prefix_degree) == 1 ? c : -c;
        out += coeff * (prefix * image * suffix);
      }
      prefix_degree += sig.degree(ws[j]);
    }
  }
  return out;
}

ValidationReport sc_validate(const SCDGA& dga) {
  const auto& sig = *dga.signature();
  ValidationReport report;
  for (GenIndex g = 0; g < sig.size(); ++g) {
    const auto& name = sig.generator(g).name;
    const auto& image = dga.differential(g);
    const auto expected = sig.normalize_degree(sig.degree(g) - 1);
    for (const auto& [w, c] : image.terms()) {
      if (sc_word_degree(sig, w) != expected)
        report.violations.push_back({Violation::Kind::Degree, name, std::nullopt,
                                     "image of '" + name + "' is not of degree |" + name + "| - 1"});
    }
    if (!sc_leibniz(dga, image).is_zero())
      report.violations.push_back(
          {Violation::Kind::DifferentialSquare, name, std::nullopt, "d(d(" + name + ")) != 0"});
  }
  return report;
}

// --- the four-generator counterexample ---------------------------------------

std::vector<TableLine> counterexample_table(const SCDGA& dga) {
  const auto& sig = dga.signature();
  auto idx = [&](const char* name) {
    auto g = sig->index_of(name);
    if (!g) fail(ErrorKind::Structure, std::string("fixture lacks generator '") + name + "'");
    return *g;
  };
  const GenIndex b = idx("b");
  const GenIndex c = idx("c");
  const GenIndex bi[2] = {idx("b1"), idx("b2")};
  const std::string names[2] = {"b1", "b2"};
  auto word = [&](std::vector<GenIndex> letters) { return SCPoly::product(sig, letters); };

  std::vector<TableLine> out;
  auto line = [&](std::string label, const SCPoly& element, SCPoly expected) {
    SCPoly computed = sc_leibniz(dga, element);
    const bool ok = computed == expected;
    out.push_back({"d(" + label + ")", std::move(computed), std::move(expected), ok});
  };
  line("b1b2", word({bi[0], bi[1]}), word({b, c, bi[1]}) - word({bi[0], b, c}));
  for (int i = 0; i < 2; ++i) line(names[i] + names[i], word({bi[i], bi[i]}), dga.zero());
  for (int i = 0; i < 2; ++i) line(names[i] + "b", word({bi[i], b}), dga.zero());
  for (int i = 0; i < 2; ++i) line(names[i] + "c", word({bi[i], c}), dga.zero());
  line("bc", word({b, c}), dga.zero());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) line(names[i] + names[j] + "b", word({bi[i], bi[j], b}), dga.zero());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) line(names[i] + names[j] + "c", word({bi[i], bi[j], c}), dga.zero());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) line(names[i] + names[j] + "bc", word({bi[i], bi[j], b, c}), dga.zero());

  // every ordered product of five generators
  bool vanish = true;
  const auto n = static_cast<GenIndex>(sig->size());
  std::vector<GenIndex> letters(5, 0);
  for (;;) {
    if (!word(letters).is_zero()) vanish = false;
    std::size_t k = 0;
    while (k < letters.size() && ++letters[k] == n) letters[k++] = 0;
    if (k == letters.size()) break;
  }
  out.push_back({"words of length 5 vanish", dga.zero(), dga.zero(), vanish});
  return out;
}

// --- brute force ---------------------------------------------------------------

std::vector<SCWord> sc_words_up_to(const Signature& sig, std::size_t length_cap) {
  std::vector<SCWord> out;
  std::vector<GenIndex> letters;
  const auto n = static_cast<GenIndex>(sig.size());
  auto extend = [&](auto&& self, GenIndex from) -> void {
    out.emplace_back(letters);
    if (letters.size() == length_cap) return;
    for (GenIndex g = from; g < n; ++g) {
      if (!char2(sig) && odd_gen(sig, g) && !letters.empty() && letters.back() == g) continue;
      letters.push_back(g);
      self(self, g);
      letters.pop_back();
    }
  };
  extend(extend, 0);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Solve x = sum_k c_k columns[k]; returns the coefficients or nullopt.
std::optional<std::vector<Scalar>> solve_columns(const SCPoly& x, const std::vector<SCPoly>& columns) {
  std::map<SCWord, std::size_t> row_of;
  std::vector<LinearSystem::Row> rows;
  auto row = [&](const SCWord& w) {
    auto [it, inserted] = row_of.emplace(w, rows.size());
    if (inserted) rows.emplace_back();
    return it->second;
  };
  for (const auto& [w, c] : x.terms()) row(w);
  for (std::size_t k = 0; k < columns.size(); ++k)
    for (const auto& [w, c] : columns[k].terms()) rows[row(w)].emplace_back(k, c);
  LinearSystem sys;
  sys.field = x.signature()->field();
  sys.columns = columns.size();
  std::vector<Scalar> rhs(rows.size(), sys.field.make(Scalar(0)));
  for (const auto& [w, c] : x.terms()) rhs[row_of.at(w)] = c;
  for (std::size_t r = 0; r < rows.size(); ++r) sys.add_row(std::move(rows[r]), rhs[r]);
  return solve_linear(sys);
}

}  // namespace

std::optional<SCPoly> sc_is_boundary_bruteforce(const SCDGA& dga, const SCPoly& x, std::size_t length_cap) {
  const auto& sig = *dga.signature();
  if (!same_signature(x.signature(), dga.signature())) fail(ErrorKind::Structure, "element in a foreign algebra");
  if (x.is_zero()) return dga.zero();
  std::set<std::int64_t> wanted;
  for (auto d : sc_degrees(x)) wanted.insert(sig.normalize_degree(d + 1));
  std::vector<SCWord> unknowns;
  std::vector<SCPoly> columns;
  for (auto& w : sc_words_up_to(sig, length_cap)) {
    if (!wanted.count(sc_word_degree(sig, w))) continue;
    SCPoly word(dga.signature());
    word.add_term(w, Scalar(1));
    columns.push_back(sc_leibniz(dga, word));
    unknowns.push_back(std::move(w));
  }
  const auto solution = solve_columns(x, columns);
  if (!solution) return std::nullopt;
  SCPoly y(dga.signature());
  for (std::size_t k = 0; k < unknowns.size(); ++k) y.add_term(unknowns[k], (*solution)[k]);
  if (!(sc_leibniz(dga, y) == x)) fail(ErrorKind::InternalAssertion, "brute-force witness failed verification");
  return y;
}

SCCertificate::SCCertificate(const SCDGA& dga, const SCPoly& x, std::vector<SCTriple> triples)
    : triples_(std::move(triples)) {
  SCPoly sum = dga.zero();
  for (const auto& t : triples_) sum += t.u * sc_leibniz(dga, t.v) * t.w;
  if (!(sum == x)) fail(ErrorKind::Certificate, "sum u d(v) w does not reproduce the element");
}

std::optional<SCCertificate> sc_char_vanishing(const SCDGA& dga, const SCPoly& x, std::size_t length_cap) {
  const auto& sig = *dga.signature();
  if (!same_signature(x.signature(), dga.signature())) fail(ErrorKind::Structure, "element in a foreign algebra");
  if (x.is_zero()) return SCCertificate(dga, x, {});
  const auto degrees = sc_degrees(x);
  const std::set<std::int64_t> targets(degrees.begin(), degrees.end());
  // by commutativity u d(a) w = +-d(a) (u w), so right factors suffice
  struct Column {
    GenIndex generator;
    SCWord w;
  };
  std::vector<Column> meta;
  std::vector<SCPoly> columns;
  const auto words = sc_words_up_to(sig, length_cap);
  for (GenIndex a = 0; a < sig.size(); ++a) {
    const SCPoly& image = dga.differential(a);
    if (image.is_zero()) continue;
    for (const auto& w : words) {
      const auto deg = sig.normalize_degree(sig.degree(a) - 1 + sc_word_degree(sig, w));
      if (!targets.count(deg)) continue;
      SCPoly right(dga.signature());
      right.add_term(w, Scalar(1));
      SCPoly col = image * right;
      if (col.is_zero()) continue;
      meta.push_back({a, w});
      columns.push_back(std::move(col));
    }
  }
  const auto solution = solve_columns(x, columns);
  if (!solution) return std::nullopt;
  std::map<GenIndex, SCPoly> grouped;
  for (std::size_t k = 0; k < meta.size(); ++k) {
    if ((*solution)[k].is_zero()) continue;
    grouped.try_emplace(meta[k].generator, dga.signature()).first->second.add_term(meta[k].w, (*solution)[k]);
  }
  std::vector<SCTriple> triples;
  for (auto& [a, w] : grouped) triples.push_back({dga.one(), dga.gen(a), std::move(w)});
  return SCCertificate(dga, x, std::move(triples));
}

// --- acyclicity witnesses ----------------------------------------------------------

TrivialityCertificate::TrivialityCertificate(const SCDGA& dga, std::vector<TrivialityPair> pairs)
    : pairs_(std::move(pairs)) {
  SCPoly sum = dga.zero();
  for (const auto& [x, y] : pairs_) {
    if (sc_degrees(x).size() > 1 || sc_degrees(y).size() > 1)
      fail(ErrorKind::Certificate, "triviality certificate entries must be homogeneous");
    sum += x * sc_leibniz(dga, y);
  }
  if (!(sum == dga.one())) fail(ErrorKind::Certificate, "sum x_i d(y_i) is not 1");
}

namespace {

std::int64_t degree_or_zero(const SCPoly& p) {
  const auto d = sc_degrees(p);
  return d.empty() ? 0 : d.front();
}

}  // namespace

AcyclicityWitness acyclicity_witness_char_ne2(const SCDGA& dga, const TrivialityCertificate& cert) {
  const auto& sig = *dga.signature();
  if (char2(sig)) fail(ErrorKind::Precondition, "characteristic 2 needs the squaring construction");
  if (sig.mu() % 2 != 0) fail(ErrorKind::Precondition, "grading must reduce to Z/2");

  // Only the pairs of total degree 0 contribute to 1; the others cancel among
  // themselves.  x even, y odd: x d(y) = d(x y) + y d(x) moves the term to an
  // odd left factor.
  SCPoly w0 = dga.zero();
  std::vector<std::pair<SCPoly, SCPoly>> odd_terms;
  for (const auto& [x, y] : cert.pairs()) {
    if (x.is_zero() || y.is_zero()) continue;
    const auto dx = degree_or_zero(x);
    const auto dy = degree_or_zero(y);
    if (sig.normalize_degree(dx + dy - 1) != 0) continue;
    if (Signature::odd(dx)) {
      odd_terms.emplace_back(x, y);
    } else {
      w0 += x * y;
      odd_terms.emplace_back(y, x);
    }
  }
  const SCPoly s = dga.one() - sc_leibniz(dga, w0);
  if (!(s == [&] {
        SCPoly t = dga.zero();
        for (const auto& [u, v] : odd_terms) t += u * sc_leibniz(dga, v);
        return t;
      }()))
    fail(ErrorKind::InternalAssertion, "odd rewrite of the certificate does not reproduce 1 - d(w0)");

  // s is a sum of square-zero commuting even terms, hence nilpotent
  AcyclicityWitness out{dga.zero(), w0, 0};
  SCPoly power = dga.one();
  SCPoly series = dga.zero();
  const auto limit = static_cast<unsigned>(odd_terms.size()) + 1;
  for (unsigned k = 0; k <= limit; ++k) {
    if (power.is_zero()) {
      out.nilpotency = k;
      break;
    }
    series += power;
    power = power * s;
  }
  if (out.nilpotency == 0) fail(ErrorKind::InternalAssertion, "1 - d(w0) is not nilpotent");
  out.w = w0 * series;
  if (!(sc_leibniz(dga, out.w) == dga.one())) fail(ErrorKind::InternalAssertion, "witness does not satisfy d(w) = 1");
  return out;
}

SCPoly acyclicity_witness_char2(const SCDGA& dga, const TrivialityCertificate& cert) {
  if (!char2(*dga.signature())) fail(ErrorKind::Precondition, "the squaring construction needs characteristic 2");
  SCPoly w = dga.zero();
  for (const auto& [x, y] : cert.pairs()) w += x * x * y * sc_leibniz(dga, y);
  if (!(sc_leibniz(dga, w) == dga.one())) fail(ErrorKind::InternalAssertion, "witness does not satisfy d(w) = 1");
  return w;
}

}  // namespace fdga
