#pragma once

// Super-commutative DGAs: ab = (-1)^{|a||b|} ba, odd squares vanish outside
// characteristic two.  Elements live in a separate normal-form algebra (sorted
// multisets of generators), not in a quotient of the free engine.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fdga/dga.hpp"
#include "fdga/freealg.hpp"

namespace fdga {

/// Sorted multiset of generator indices, ordered by (length, lexicographic).
class SCWord {
 public:
  SCWord() = default;
  /// `letters` must already be sorted.
  explicit SCWord(std::vector<GenIndex> letters) : letters_(std::move(letters)) {}

  const std::vector<GenIndex>& letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  friend bool operator==(const SCWord&, const SCWord&) = default;
  friend std::strong_ordering operator<=>(const SCWord& a, const SCWord& b);

 private:
  std::vector<GenIndex> letters_;
};

/// Normal form of the product a * b: the merged word and its sign, or
/// std::nullopt when the product vanishes (a repeated odd generator outside
/// characteristic two).
std::optional<std::pair<SCWord, int>> sc_word_mul(const Signature& sig, const SCWord& a, const SCWord& b);

/// Normal form of the product of generators in the given order.
std::optional<std::pair<SCWord, int>> sc_normalize(const Signature& sig, const std::vector<GenIndex>& letters);

class SCPoly {
 public:
  using Terms = std::map<SCWord, Scalar>;

  explicit SCPoly(SignaturePtr sig);
  static SCPoly constant(SignaturePtr sig, const Scalar& c);
  static SCPoly generator(SignaturePtr sig, GenIndex g);
  /// Product of the generators in the given order, normalized.
  static SCPoly product(SignaturePtr sig, const std::vector<GenIndex>& letters, const Scalar& c = Scalar(1));

  const SignaturePtr& signature() const noexcept { return sig_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  Scalar coefficient(const SCWord& w) const;

  void add_term(const SCWord& w, const Scalar& c);

  SCPoly& operator+=(const SCPoly& other);
  SCPoly& operator-=(const SCPoly& other);
  SCPoly operator-() const;
  friend SCPoly operator+(SCPoly a, const SCPoly& b) { return a += b; }
  friend SCPoly operator-(SCPoly a, const SCPoly& b) { return a -= b; }
  friend SCPoly operator*(const SCPoly& a, const SCPoly& b);
  friend SCPoly operator*(const Scalar& c, const SCPoly& p);
  friend bool operator==(const SCPoly& a, const SCPoly& b);

 private:
  void check_compatible(const SCPoly& other) const;

  SignaturePtr sig_;
  Terms terms_;
};

SCPoly sc_add(const SCPoly& p, const SCPoly& q);
SCPoly sc_mul(const SCPoly& p, const SCPoly& q);
SCPoly sc_pow(const SCPoly& p, unsigned exponent);

std::int64_t sc_word_degree(const Signature& sig, const SCWord& w);
/// Degrees present in p (normalized).
std::vector<std::int64_t> sc_degrees(const SCPoly& p);

/// Super-commutative DGA; actions are optional.
class SCDGA {
 public:
  /// Throws Structure when the image list does not match the signature.
  SCDGA(SignaturePtr sig, std::vector<SCPoly> differential);

  const SignaturePtr& signature() const noexcept { return sig_; }
  const std::vector<SCPoly>& differential() const noexcept { return diff_; }
  const SCPoly& differential(GenIndex g) const { return diff_.at(g); }
  std::size_t size() const noexcept { return diff_.size(); }

  SCPoly zero() const { return SCPoly(sig_); }
  SCPoly one() const { return SCPoly::constant(sig_, Scalar(1)); }
  SCPoly gen(GenIndex g) const { return SCPoly::generator(sig_, g); }
  SCPoly gen(std::string_view name) const;

 private:
  SignaturePtr sig_;
  std::vector<SCPoly> diff_;
};

SCPoly sc_leibniz(const SCDGA& dga, const SCPoly& p);

/// Degree -1 images and d^2 = 0 on generators.
ValidationReport sc_validate(const SCDGA& dga);

struct TableLine {
  std::string label;
  SCPoly computed;
  SCPoly expected;
  bool ok;
};

/// The displayed differentials of the four-generator counterexample
/// (generators b, c, b1, b2), instantiated for every i, j in {1, 2}, plus one
/// line asserting that every product of five generators vanishes.
/// Throws Structure when one of the names is missing.
std::vector<TableLine> counterexample_table(const SCDGA& dga);

/// Normal words up to the given length, sorted.
std::vector<SCWord> sc_words_up_to(const Signature& sig, std::size_t length_cap);

/// y with d(y) = x among words of length <= length_cap, or std::nullopt.
std::optional<SCPoly> sc_is_boundary_bruteforce(const SCDGA& dga, const SCPoly& x, std::size_t length_cap);

struct SCTriple {
  SCPoly u;
  SCPoly v;
  SCPoly w;
};

/// x = sum u_i d(v_i) w_i, validated on construction (Certificate otherwise).
class SCCertificate {
 public:
  SCCertificate(const SCDGA& dga, const SCPoly& x, std::vector<SCTriple> triples);
  const std::vector<SCTriple>& triples() const noexcept { return triples_; }

 private:
  std::vector<SCTriple> triples_;
};

/// Search over d(a_i) * w with length(w) <= length_cap; std::nullopt means
/// unknown at cap.
std::optional<SCCertificate> sc_char_vanishing(const SCDGA& dga, const SCPoly& x, std::size_t length_cap);

struct TrivialityPair {
  SCPoly x;
  SCPoly y;
};

/// 1 = sum x_i d(y_i) with every x_i, y_i homogeneous (Certificate otherwise).
class TrivialityCertificate {
 public:
  TrivialityCertificate(const SCDGA& dga, std::vector<TrivialityPair> pairs);
  const std::vector<TrivialityPair>& pairs() const noexcept { return pairs_; }

 private:
  std::vector<TrivialityPair> pairs_;
};

struct AcyclicityWitness {
  SCPoly w;
  /// odd element with 1 = d(w0) + sum u_i d(v_i), every u_i odd
  SCPoly w0;
  /// least N with (1 - d(w0))^N = 0
  unsigned nilpotency = 0;
};

/// Characteristic != 2: rewrites the certificate so that every left factor is
/// odd, then w = w0 * sum_{k<N} (1 - d w0)^k.  For N <= 2 this is
/// 2 w0 - w0 d(w0).  Verified d(w) = 1.
AcyclicityWitness acyclicity_witness_char_ne2(const SCDGA& dga, const TrivialityCertificate& cert);

/// Characteristic 2: w = sum x_i^2 y_i d(y_i).  Verified d(w) = 1.
SCPoly acyclicity_witness_char2(const SCDGA& dga, const TrivialityCertificate& cert);

}  // namespace fdga
