#include "fdga/scalar.hpp"

#include <ostream>

#include "fdga/error.hpp"

namespace fdga {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "PARSE_ERROR";
    case ErrorKind::Structure: return "STRUCTURE_ERROR";
    case ErrorKind::Validation: return "VALIDATION_ERROR";
    case ErrorKind::EmptyInput: return "EMPTY_INPUT";
    case ErrorKind::Precondition: return "PRECONDITION_ERROR";
    case ErrorKind::Filtration: return "FILTRATION_ERROR";
    case ErrorKind::EmptyIdeal: return "EMPTY_IDEAL";
    case ErrorKind::Certificate: return "CERTIFICATE_ERROR";
    case ErrorKind::InternalAssertion: return "INTERNAL_ASSERTION";
  }
  return "UNKNOWN_ERROR";
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t reduce_integer(const mpz_class& z, std::uint64_t m) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), m);
  return r.get_ui();
}

}  // namespace

Scalar Scalar::residue(std::uint64_t value, std::uint64_t modulus) {
  Scalar s;
  s.modulus_ = modulus;
  s.residue_ = value % modulus;
  return s;
}

Scalar Scalar::reduced(std::uint64_t modulus) const {
  if (modulus_ != 0) {
    if (modulus_ != modulus) fail(ErrorKind::Structure, "scalars from different prime fields");
    return *this;
  }
  std::uint64_t num = reduce_integer(value_.get_num(), modulus);
  std::uint64_t den = reduce_integer(value_.get_den(), modulus);
  if (den == 0) fail(ErrorKind::Validation, "denominator of " + to_string() + " vanishes mod " + std::to_string(modulus));
  return residue(mul_mod(num, pow_mod(den, modulus - 2, modulus), modulus), modulus);
}

void Scalar::align_with(const Scalar& other) {
  if (modulus_ == other.modulus_) return;
  if (modulus_ == 0) {
    *this = reduced(other.modulus_);
  } else if (other.modulus_ != 0) {
    fail(ErrorKind::Structure, "scalars from different prime fields");
  }
}

Scalar Scalar::inverse() const {
  if (is_zero()) fail(ErrorKind::Precondition, "division by zero");
  if (modulus_ == 0) return Scalar(Rational(1) / value_);
  return residue(pow_mod(residue_, modulus_ - 2, modulus_), modulus_);
}

Scalar Scalar::operator-() const {
  if (modulus_ == 0) return Scalar(Rational(-value_));
  return residue(residue_ == 0 ? 0 : modulus_ - residue_, modulus_);
}

Scalar& Scalar::operator+=(const Scalar& other) {
  align_with(other);
  if (modulus_ == 0) {
    value_ += other.value_;
  } else {
    const Scalar o = other.modulus_ ? other : other.reduced(modulus_);
    residue_ = static_cast<std::uint64_t>((static_cast<u128>(residue_) + o.residue_) % modulus_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) { return *this += -other; }

Scalar& Scalar::operator*=(const Scalar& other) {
  align_with(other);
  if (modulus_ == 0) {
    value_ *= other.value_;
  } else {
    const Scalar o = other.modulus_ ? other : other.reduced(modulus_);
    residue_ = mul_mod(residue_, o.residue_, modulus_);
  }
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.modulus_ == b.modulus_) return a.modulus_ == 0 ? a.value_ == b.value_ : a.residue_ == b.residue_;
  if (a.modulus_ == 0) return a.reduced(b.modulus_).residue_ == b.residue_;
  if (b.modulus_ == 0) return b.reduced(a.modulus_).residue_ == a.residue_;
  return false;
}

std::string Scalar::to_string() const {
  return modulus_ == 0 ? rational_to_string(value_) : std::to_string(residue_);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

std::string rational_to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  const auto slash = body.find('/');
  const bool ok = slash == std::string_view::npos
                      ? digits(body)
                      : digits(body.substr(0, slash)) && digits(body.substr(slash + 1));
  if (!ok) fail(ErrorKind::Parse, "malformed scalar '" + std::string(text) + "'");
  std::string normalized(text);
  if (normalized.front() == '+') normalized.erase(0, 1);
  Rational q;
  if (q.set_str(normalized, 10) != 0 || q.get_den() == 0)
    fail(ErrorKind::Parse, "malformed scalar '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

Field Field::prime(std::uint64_t p) {
  mpz_class z(std::to_string(p));
  if (p < 2 || mpz_probab_prime_p(z.get_mpz_t(), 30) == 0)
    fail(ErrorKind::Validation, std::to_string(p) + " is not prime");
  if (p >= (std::uint64_t{1} << 62)) fail(ErrorKind::Validation, "prime modulus too large");
  return Field(p);
}

Scalar Field::parse(std::string_view text) const { return make(Scalar(parse_rational(text))); }

std::string Field::to_string() const {
  return modulus_ == 0 ? "Q" : "F_" + std::to_string(modulus_);
}

}  // namespace fdga
