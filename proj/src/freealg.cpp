#include "fdga/freealg.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace fdga {

std::uint64_t DegreeFunction::operator()(std::span<const GenIndex> letters) const {
  std::uint64_t total = 0;
  for (GenIndex g : letters) total += weights.at(g);
  return total;
}

DegreeFunction build_degree_function(std::span<const GeneratorInfo> generators) {
  mpz_class scale = 1;
  for (const auto& g : generators) {
    if (!g.action) fail(ErrorKind::Validation, "generator '" + g.name + "' has no action");
    if (sgn(*g.action) <= 0) fail(ErrorKind::Validation, "generator '" + g.name + "' has non-positive action");
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), g.action->get_den_mpz_t());
  }
  if (!scale.fits_ulong_p()) fail(ErrorKind::Validation, "action denominators too large");
  DegreeFunction df;
  df.scale = scale.get_ui();
  for (const auto& g : generators) {
    const Rational w = Rational(scale) * *g.action;
    if (!w.get_num().fits_ulong_p()) fail(ErrorKind::Validation, "action of '" + g.name + "' too large");
    df.weights.push_back(w.get_num().get_ui());
  }
  return df;
}

// --- Signature ---------------------------------------------------------------

SignaturePtr Signature::create(Field field, std::int64_t mu, std::vector<GeneratorInfo> generators) {
  if (mu < 0) fail(ErrorKind::Validation, "grading modulus must be nonnegative");
  if (field.characteristic() != 2 && mu % 2 != 0)
    fail(ErrorKind::Validation, "odd grading modulus " + std::to_string(mu) + " needs characteristic 2");
  std::set<std::string> names;
  bool all_actions = true;
  for (auto& g : generators) {
    if (g.name.empty()) fail(ErrorKind::Validation, "empty generator name");
    if (!names.insert(g.name).second) fail(ErrorKind::Validation, "duplicate generator '" + g.name + "'");
    if (g.action && sgn(*g.action) <= 0)
      fail(ErrorKind::Validation, "generator '" + g.name + "' has non-positive action");
    all_actions = all_actions && g.action.has_value();
    if (mu > 0) g.degree = ((g.degree % mu) + mu) % mu;
  }
  auto sig = std::shared_ptr<Signature>(new Signature());
  sig->field_ = field;
  sig->mu_ = mu;
  sig->generators_ = std::move(generators);
  if (all_actions) sig->degree_function_ = build_degree_function(sig->generators_);
  return sig;
}

std::optional<GenIndex> Signature::index_of(std::string_view name) const {
  for (GenIndex i = 0; i < generators_.size(); ++i)
    if (generators_[i].name == name) return i;
  return std::nullopt;
}

std::int64_t Signature::normalize_degree(std::int64_t d) const {
  return mu_ > 0 ? ((d % mu_) + mu_) % mu_ : d;
}

const DegreeFunction& Signature::degree_function() const {
  if (!degree_function_) fail(ErrorKind::Validation, "signature lacks actions for some generator");
  return *degree_function_;
}

bool Signature::same_as(const Signature& other) const {
  if (this == &other) return true;
  if (!(field_ == other.field_) || mu_ != other.mu_ || generators_.size() != other.generators_.size()) return false;
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const auto& a = generators_[i];
    const auto& b = other.generators_[i];
    if (a.name != b.name || a.degree != b.degree || a.action != b.action) return false;
  }
  return true;
}

bool same_signature(const SignaturePtr& a, const SignaturePtr& b) {
  return a == b || (a && b && a->same_as(*b));
}

// --- Word --------------------------------------------------------------------

Word::Word(std::vector<GenIndex> letters, const DegreeFunction& df)
    : letters_(std::move(letters)), nu_(df(letters_)) {}

Word operator*(const Word& a, const Word& b) {
  Word w;
  w.letters_.reserve(a.letters_.size() + b.letters_.size());
  w.letters_.insert(w.letters_.end(), a.letters_.begin(), a.letters_.end());
  w.letters_.insert(w.letters_.end(), b.letters_.begin(), b.letters_.end());
  w.nu_ = a.nu_ + b.nu_;
  return w;
}

Word Word::slice(std::size_t pos, std::size_t count, const DegreeFunction& df) const {
  return Word(std::vector<GenIndex>(letters_.begin() + pos, letters_.begin() + pos + count), df);
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.nu_ <=> b.nu_; c != 0) return c;
  if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
  return a.letters_ <=> b.letters_;
}

// --- Poly --------------------------------------------------------------------

Poly::Poly(SignaturePtr sig) : sig_(std::move(sig)) {
  if (!sig_) fail(ErrorKind::Structure, "polynomial without signature");
  sig_->degree_function();
}

Poly Poly::constant(SignaturePtr sig, const Scalar& c) {
  Poly p(std::move(sig));
  p.add_term(Word(), c);
  return p;
}

Poly Poly::generator(SignaturePtr sig, GenIndex g) { return monomial(std::move(sig), std::vector<GenIndex>{g}); }

Poly Poly::monomial(SignaturePtr sig, const std::vector<GenIndex>& letters, const Scalar& c) {
  for (GenIndex g : letters)
    if (g >= sig->size()) fail(ErrorKind::Structure, "generator index out of range");
  Word w(letters, sig->degree_function());
  return monomial(std::move(sig), w, c);
}

Poly Poly::monomial(SignaturePtr sig, const Word& w, const Scalar& c) {
  Poly p(std::move(sig));
  p.add_term(w, c);
  return p;
}

Scalar Poly::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? sig_->field().make(Scalar(0)) : it->second;
}

void Poly::add_term(const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, sig_->field().make(c));
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Poly::check_compatible(const Poly& other) const {
  if (!same_signature(sig_, other.sig_)) fail(ErrorKind::Structure, "operands live in different algebras");
}

Poly& Poly::operator+=(const Poly& other) {
  check_compatible(other);
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  check_compatible(other);
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

Poly Poly::operator-() const { return poly_scale(Scalar(-1), *this); }

bool operator==(const Poly& a, const Poly& b) {
  return same_signature(a.sig_, b.sig_) && a.terms_ == b.terms_;
}

Poly poly_add(const Poly& p, const Poly& q) { return p + q; }

Poly poly_mul(const Poly& p, const Poly& q) {
  p.check_compatible(q);
  Poly r(p.sig_);
  for (const auto& [u, a] : p.terms_)
    for (const auto& [v, b] : q.terms_) r.add_term(u * v, a * b);
  return r;
}

Poly poly_scale(const Scalar& c, const Poly& p) {
  Poly r(p.sig_);
  if (c.is_zero()) return r;
  for (const auto& [w, a] : p.terms_) r.terms_.emplace_hint(r.terms_.end(), w, a * c);
  return r;
}

Poly poly_pow(const Poly& p, unsigned exponent) {
  Poly r = Poly::constant(p.signature(), Scalar(1));
  for (unsigned i = 0; i < exponent; ++i) r = r * p;
  return r;
}

// --- grading, action, nu -----------------------------------------------------

std::int64_t word_degree(const Signature& sig, std::span<const GenIndex> letters) {
  std::int64_t d = 0;
  for (GenIndex g : letters) d += sig.degree(g);
  return sig.normalize_degree(d);
}

Grading grading_of(const Poly& p) {
  if (p.is_zero()) return Grading::any();
  std::optional<std::int64_t> degree;
  for (const auto& [w, c] : p.terms()) {
    const auto d = word_degree(*p.signature(), w.letters());
    if (degree && *degree != d) return Grading::mixed();
    degree = d;
  }
  return Grading::of(*degree);
}

std::map<std::int64_t, Poly> homogeneous_components(const Poly& p) {
  std::map<std::int64_t, Poly> parts;
  for (const auto& [w, c] : p.terms()) {
    const auto d = word_degree(*p.signature(), w.letters());
    parts.try_emplace(d, p.signature()).first->second.add_term(w, c);
  }
  return parts;
}

Rational word_action(const Signature& sig, std::span<const GenIndex> letters) {
  Rational total = 0;
  for (GenIndex g : letters) {
    const auto& a = sig.generator(g).action;
    if (!a) fail(ErrorKind::Validation, "generator '" + sig.generator(g).name + "' has no action");
    total += *a;
  }
  return total;
}

ActionValue action_of(const Poly& p) {
  ActionValue best;
  for (const auto& [w, c] : p.terms()) {
    Rational a = word_action(*p.signature(), w.letters());
    if (!best || a > *best) best = a;
  }
  return best;
}

NuValue nu_of(const Poly& p) {
  if (p.is_zero()) return kMinusInfinity;
  return p.top_word().nu();
}

NuValue nu_of(const Poly& p, const DegreeFunction& df) {
  NuValue best;
  for (const auto& [w, c] : p.terms()) best = std::max(best, NuValue(df(w.letters())));
  return best;
}

Poly leading_part(const Poly& p) {
  if (p.is_zero()) fail(ErrorKind::EmptyInput, "leading part of zero");
  const auto top = p.top_word().nu();
  Poly r(p.signature());
  for (auto it = p.terms().rbegin(); it != p.terms().rend() && it->first.nu() == top; ++it)
    r.add_term(it->first, it->second);
  return r;
}

Poly leading_part(const Poly& p, const DegreeFunction& df) {
  const auto top = nu_of(p, df);
  if (!top) fail(ErrorKind::EmptyInput, "leading part of zero");
  Poly r(p.signature());
  for (const auto& [w, c] : p.terms())
    if (df(w.letters()) == *top) r.add_term(w, c);
  return r;
}

std::vector<Word> words_up_to(const DegreeFunction& df, std::uint64_t cap) {
  for (auto w : df.weights)
    if (w == 0) fail(ErrorKind::Validation, "zero weight makes the truncation infinite");
  std::vector<Word> out;
  std::vector<GenIndex> letters;
  // depth-first over prefixes; every extension strictly increases nu
  auto extend = [&](auto&& self, std::uint64_t nu) -> void {
    out.emplace_back(letters, df);
    for (GenIndex g = 0; g < df.weights.size(); ++g) {
      if (nu + df.weights[g] > cap) continue;
      letters.push_back(g);
      self(self, nu + df.weights[g]);
      letters.pop_back();
    }
  };
  extend(extend, 0);
  std::sort(out.begin(), out.end());
  return out;
}

bool involves(const Poly& p, GenIndex g) {
  for (const auto& [w, c] : p.terms())
    if (std::find(w.letters().begin(), w.letters().end(), g) != w.letters().end()) return true;
  return false;
}

Poly transport(const Poly& p, const SignaturePtr& target, std::span<const GenIndex> index_map) {
  const auto& df = target->degree_function();
  Poly r(target);
  for (const auto& [w, c] : p.terms()) {
    std::vector<GenIndex> letters;
    letters.reserve(w.length());
    for (GenIndex g : w.letters()) letters.push_back(index_map[g]);
    r.add_term(Word(std::move(letters), df), target->field().make(c));
  }
  return r;
}

}  // namespace fdga
