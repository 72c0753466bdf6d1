#pragma once

// Free unital associative algebra k<a_1, ..., a_m> with a grading, an action
// per generator, and the integer degree function nu induced by the actions.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fdga/error.hpp"
#include "fdga/scalar.hpp"

namespace fdga {

using GenIndex = std::uint32_t;

/// nu-value in N u {-inf}; std::nullopt is -inf and compares below every value.
using NuValue = std::optional<std::uint64_t>;
inline constexpr NuValue kMinusInfinity = std::nullopt;

/// Action in Q_{>0} u {-inf}; std::nullopt is -inf.
using ActionValue = std::optional<Rational>;

struct GeneratorInfo {
  std::string name;
  std::int64_t degree = 0;
  /// Required by the free engine; the super-commutative engine ignores it.
  std::optional<Rational> action;
};

/// Integer weights N * action(a_i) with N the least common multiple of the
/// action denominators.
struct DegreeFunction {
  std::uint64_t scale = 1;
  std::vector<std::uint64_t> weights;

  std::uint64_t weight(GenIndex g) const { return weights.at(g); }
  std::uint64_t operator()(std::span<const GenIndex> letters) const;
  friend bool operator==(const DegreeFunction&, const DegreeFunction&) = default;
};

/// Throws Validation on a missing or non-positive action.
DegreeFunction build_degree_function(std::span<const GeneratorInfo> generators);

class Signature;
using SignaturePtr = std::shared_ptr<const Signature>;

/// Field, grading modulus and generator list.  Immutable; shared by every
/// polynomial that lives in the algebra.
class Signature {
 public:
  /// Validates: unique nonempty names, mu >= 0, mu = 0 or even when char != 2,
  /// positive actions where present.  Degrees are reduced into [0, mu) when
  /// mu > 0.
  static SignaturePtr create(Field field, std::int64_t mu, std::vector<GeneratorInfo> generators);

  const Field& field() const noexcept { return field_; }
  std::int64_t mu() const noexcept { return mu_; }
  std::size_t size() const noexcept { return generators_.size(); }
  const std::vector<GeneratorInfo>& generators() const noexcept { return generators_; }
  const GeneratorInfo& generator(GenIndex g) const { return generators_.at(g); }
  std::optional<GenIndex> index_of(std::string_view name) const;

  std::int64_t degree(GenIndex g) const { return generators_[g].degree; }
  std::int64_t normalize_degree(std::int64_t d) const;
  static bool odd(std::int64_t degree) { return degree % 2 != 0; }
  /// (-1)^degree in this field (always +1 in characteristic 2).
  int sign(std::int64_t degree) const { return field_.characteristic() == 2 || !odd(degree) ? 1 : -1; }

  bool has_actions() const noexcept { return degree_function_.has_value(); }
  /// Throws Validation when some generator carries no action.
  const DegreeFunction& degree_function() const;

  bool same_as(const Signature& other) const;

 private:
  Signature() = default;
  Field field_ = Field::rational();
  std::int64_t mu_ = 0;
  std::vector<GeneratorInfo> generators_;
  std::optional<DegreeFunction> degree_function_;
};

/// True when both pointers designate the same algebra (identical or equal).
bool same_signature(const SignaturePtr& a, const SignaturePtr& b);

/// Monomial: a sequence of generator indices with its nu-value cached.
/// Ordered by (nu, length, lexicographic on indices).
class Word {
 public:
  Word() = default;
  Word(std::vector<GenIndex> letters, const DegreeFunction& df);

  const std::vector<GenIndex>& letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  std::uint64_t nu() const noexcept { return nu_; }

  /// Concatenation.
  friend Word operator*(const Word& a, const Word& b);
  /// Subword [pos, pos + count).
  Word slice(std::size_t pos, std::size_t count, const DegreeFunction& df) const;

  friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  std::vector<GenIndex> letters_;
  std::uint64_t nu_ = 0;
};

struct Grading {
  enum class Kind { Any, Mixed, Homogeneous };
  Kind kind = Kind::Any;
  std::int64_t degree = 0;

  static Grading any() { return {Kind::Any, 0}; }
  static Grading mixed() { return {Kind::Mixed, 0}; }
  static Grading of(std::int64_t d) { return {Kind::Homogeneous, d}; }
  friend bool operator==(const Grading&, const Grading&) = default;
};

/// Element of the free algebra: a finite map Word -> nonzero Scalar kept in
/// canonical order.  The zero polynomial has no terms.
class Poly {
 public:
  using Terms = std::map<Word, Scalar>;

  explicit Poly(SignaturePtr sig);
  static Poly constant(SignaturePtr sig, const Scalar& c);
  static Poly generator(SignaturePtr sig, GenIndex g);
  static Poly monomial(SignaturePtr sig, const std::vector<GenIndex>& letters, const Scalar& c = Scalar(1));
  static Poly monomial(SignaturePtr sig, const Word& w, const Scalar& c = Scalar(1));

  const SignaturePtr& signature() const noexcept { return sig_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  Scalar coefficient(const Word& w) const;
  /// Highest word in canonical order; requires a nonzero polynomial.
  const Word& top_word() const { return terms_.rbegin()->first; }

  /// Adds c * w in place, dropping the term if it cancels.
  void add_term(const Word& w, const Scalar& c);

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) { return poly_mul(a, b); }
  friend Poly operator*(const Scalar& c, const Poly& p) { return poly_scale(c, p); }
  friend bool operator==(const Poly& a, const Poly& b);

  friend Poly poly_add(const Poly& p, const Poly& q);
  friend Poly poly_mul(const Poly& p, const Poly& q);
  friend Poly poly_scale(const Scalar& c, const Poly& p);

 private:
  void check_compatible(const Poly& other) const;

  SignaturePtr sig_;
  Terms terms_;
};

Poly poly_add(const Poly& p, const Poly& q);
Poly poly_mul(const Poly& p, const Poly& q);
Poly poly_scale(const Scalar& c, const Poly& p);
Poly poly_pow(const Poly& p, unsigned exponent);

/// Degree of a word in Z/muZ (or Z when mu = 0).
std::int64_t word_degree(const Signature& sig, std::span<const GenIndex> letters);
Grading grading_of(const Poly& p);
/// Split into homogeneous components keyed by normalized degree.
std::map<std::int64_t, Poly> homogeneous_components(const Poly& p);

Rational word_action(const Signature& sig, std::span<const GenIndex> letters);
ActionValue action_of(const Poly& p);

NuValue nu_of(const Poly& p);
/// nu recomputed from explicit weights rather than the cached word values.
NuValue nu_of(const Poly& p, const DegreeFunction& df);

/// Monomials of p whose nu equals nu(p).  Throws EmptyInput on zero.
Poly leading_part(const Poly& p);
Poly leading_part(const Poly& p, const DegreeFunction& df);

/// All words with nu <= cap, in canonical order.
std::vector<Word> words_up_to(const DegreeFunction& df, std::uint64_t cap);

/// True when some monomial of p contains generator g.
bool involves(const Poly& p, GenIndex g);

/// Rewrite p into another signature, sending generator i to index_map[i].
Poly transport(const Poly& p, const SignaturePtr& target, std::span<const GenIndex> index_map);

}  // namespace fdga
