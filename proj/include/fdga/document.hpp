#pragma once

// Text format for presentations, polynomials and certificates.
//
// A document is a JSON object:
//   {"field": "rational" | {"prime": p}, "mu": 0, "kind": "supercommutative" (optional),
//    "description": "..." (optional),
//    "generators": [{"name": "b1", "degree": 1, "action": "3"}, ...],
//    "differential": {"b1": [["1", ["b", "c"]]], "b2": "bc", ...}}
// Polynomials are lists of [coefficient-string, [generator names]] or
// expression strings ("b1 - a1b1a2 + b2a2^2", "3/4 b(c + 1)").

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fdga/charalg.hpp"
#include "fdga/dga.hpp"
#include "fdga/supercomm.hpp"

namespace fdga {

enum class AlgebraKind { Free, Supercommutative };

struct DGADocument {
  AlgebraKind kind = AlgebraKind::Free;
  std::string description;
  std::variant<DGAPresentation, SCDGA> algebra;

  const SignaturePtr& signature() const;
  /// Throw Structure when the document is of the other kind.
  const DGAPresentation& free() const;
  const SCDGA& supercommutative() const;
};

/// Throws Parse on malformed JSON or scalars, Structure on unknown keys,
/// missing fields or unknown generators, Validation on bad signatures.
DGADocument parse_document(std::string_view text);
DGADocument load_document(const std::filesystem::path& path);
/// Canonical form: fixed key order, every generator listed in the
/// differential, terms in canonical monomial order, two-space indentation.
std::string print_document(const DGADocument& doc);

/// Expression grammar: sums and differences of products; juxtaposition or
/// `*` multiplies, `^n` raises to a power, parentheses group, numbers are
/// rationals "p" or "p/q".  Generator names match longest-first.
Poly parse_poly(const SignaturePtr& sig, std::string_view text);
SCPoly parse_sc_poly(const SignaturePtr& sig, std::string_view text);

/// Either an expression string or a structured term list.
Poly poly_from_json(const SignaturePtr& sig, const nlohmann::json& j);
SCPoly sc_poly_from_json(const SignaturePtr& sig, const nlohmann::json& j);
nlohmann::json poly_to_json(const Poly& p);
nlohmann::json sc_poly_to_json(const SCPoly& p);

/// "bcb2 - b1bc", "2 b1b", "0"; names are joined with `*` only when plain
/// concatenation would re-parse differently.
std::string format_poly(const Poly& p);
std::string format_sc_poly(const SCPoly& p);
std::string format_word(const Signature& sig, const std::vector<GenIndex>& letters);

/// {"triples": [[u, v, w], ...]} with polynomial entries as above.
std::vector<CertificateTriple> parse_certificate(const SignaturePtr& sig, std::string_view text);
/// {"pairs": [[x, y], ...]} asserting 1 = sum x d(y) in a super-commutative algebra.
std::vector<TrivialityPair> parse_triviality_pairs(const SignaturePtr& sig, std::string_view text);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace fdga
