#include "fdga/document.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace fdga {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

const SignaturePtr& DGADocument::signature() const {
  return std::visit([](const auto& a) -> const SignaturePtr& { return a.signature(); }, algebra);
}

const DGAPresentation& DGADocument::free() const {
  if (kind != AlgebraKind::Free) fail(ErrorKind::Structure, "document describes a super-commutative algebra");
  return std::get<DGAPresentation>(algebra);
}

const SCDGA& DGADocument::supercommutative() const {
  if (kind != AlgebraKind::Supercommutative) fail(ErrorKind::Structure, "document describes a free algebra");
  return std::get<SCDGA>(algebra);
}

// --- expressions ---------------------------------------------------------------

namespace {

template <class P>
class ExpressionParser {
 public:
  ExpressionParser(const SignaturePtr& sig, std::string_view text) : sig_(sig), text_(text) {}

  P parse() {
    P value = expr();
    skip_space();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::Parse, "expression \"" + std::string(text_) + "\" at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool at_factor_start() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == '(' || std::isdigit(static_cast<unsigned char>(c)) || match_generator().has_value();
  }

  std::optional<std::pair<GenIndex, std::size_t>> match_generator() const {
    std::optional<std::pair<GenIndex, std::size_t>> best;
    for (GenIndex g = 0; g < sig_->size(); ++g) {
      const auto& name = sig_->generator(g).name;
      if (text_.substr(pos_, name.size()) == name && (!best || name.size() > best->second)) best = {{g, name.size()}};
    }
    return best;
  }

  P expr() {
    P value(sig_);
    bool negate = false;
    if (peek('+')) {
      ++pos_;
    } else if (peek('-')) {
      ++pos_;
      negate = true;
    }
    P first = term();
    value = negate ? -first : first;
    for (;;) {
      if (peek('+')) {
        ++pos_;
        value += term();
      } else if (peek('-')) {
        ++pos_;
        value -= term();
      } else {
        return value;
      }
    }
  }

  P term() {
    if (!at_factor_start()) error("expected a factor");
    P value = factor();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        if (!at_factor_start()) error("expected a factor after '*'");
        value = value * factor();
      } else if (at_factor_start()) {
        value = value * factor();
      } else {
        return value;
      }
    }
  }

  P factor() {
    P base = primary();
    if (peek('^')) {
      ++pos_;
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) error("expected an exponent");
      if (pos_ - start > 3) error("exponent too large");
      const unsigned e = static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
      P r = P::constant(sig_, Scalar(1));
      for (unsigned i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }

  P primary() {
    skip_space();
    if (peek('(')) {
      ++pos_;
      P inner = expr();
      if (!peek(')')) error("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
      return P::constant(sig_, sig_->field().parse(text_.substr(start, pos_ - start)));
    }
    auto g = match_generator();
    if (!g) error("unknown generator");
    pos_ += g->second;
    return P::generator(sig_, g->first);
  }

  SignaturePtr sig_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

// Longest-match tokenization of a concatenated word.
std::optional<std::vector<GenIndex>> tokenize_word(const Signature& sig, std::string_view text) {
  std::vector<GenIndex> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::optional<GenIndex> best;
    std::size_t len = 0;
    for (GenIndex g = 0; g < sig.size(); ++g) {
      const auto& name = sig.generator(g).name;
      if (name.size() > len && text.substr(pos, name.size()) == name) {
        best = g;
        len = name.size();
      }
    }
    if (!best) return std::nullopt;
    out.push_back(*best);
    pos += len;
  }
  return out;
}

template <class Terms, class Letters>
std::string format_terms(const Signature& sig, const Terms& terms, Letters letters_of) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : terms) {
    const auto& letters = letters_of(w);
    std::string coeff = c.to_string();
    bool negative = !coeff.empty() && coeff[0] == '-';
    if (negative) coeff.erase(0, 1);
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    if (letters.empty()) {
      out += coeff;
      continue;
    }
    if (coeff != "1") out += coeff + " ";
    out += format_word(sig, letters);
  }
  return out;
}

std::vector<GenIndex> names_to_letters(const Signature& sig, const json& names) {
  if (!names.is_array()) fail(ErrorKind::Structure, "a monomial must be a list of generator names");
  std::vector<GenIndex> letters;
  for (const auto& n : names) {
    if (!n.is_string()) fail(ErrorKind::Structure, "generator names must be strings");
    auto idx = sig.index_of(n.get<std::string>());
    if (!idx) fail(ErrorKind::Structure, "unknown generator '" + n.get<std::string>() + "'");
    letters.push_back(*idx);
  }
  return letters;
}

Scalar scalar_from_json(const Signature& sig, const json& j) {
  if (j.is_string()) return sig.field().parse(j.get<std::string>());
  if (j.is_number_integer()) return sig.field().make(Scalar(Rational(j.dump())));
  fail(ErrorKind::Parse, "coefficients must be strings such as \"3/4\" or integers");
}

template <class P>
P from_json_impl(const SignaturePtr& sig, const json& j) {
  if (j.is_string()) return ExpressionParser<P>(sig, j.get<std::string>()).parse();
  if (!j.is_array()) fail(ErrorKind::Structure, "a polynomial must be an expression string or a term list");
  P out(sig);
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 2) fail(ErrorKind::Structure, "a term must be [coefficient, [names]]");
    const Scalar c = scalar_from_json(*sig, term[0]);
    if constexpr (std::is_same_v<P, Poly>) {
      out += Poly::monomial(sig, names_to_letters(*sig, term[1]), c);
    } else {
      out += SCPoly::product(sig, names_to_letters(*sig, term[1]), c);
    }
  }
  return out;
}

template <class Terms, class Letters>
json terms_to_json(const Signature& sig, const Terms& terms, Letters letters_of) {
  json out = json::array();
  for (const auto& [w, c] : terms) {
    json names = json::array();
    for (GenIndex g : letters_of(w)) names.push_back(sig.generator(g).name);
    out.push_back(json::array({c.to_string(), names}));
  }
  return out;
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) fail(ErrorKind::Structure, where + " must be an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) fail(ErrorKind::Structure, "unknown key '" + key + "' in " + where);
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(ErrorKind::Structure, std::string("missing key '") + key + "' in " + where);
  return *it;
}

bool valid_name(const std::string& name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Parse, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

Poly parse_poly(const SignaturePtr& sig, std::string_view text) { return ExpressionParser<Poly>(sig, text).parse(); }

SCPoly parse_sc_poly(const SignaturePtr& sig, std::string_view text) {
  return ExpressionParser<SCPoly>(sig, text).parse();
}

Poly poly_from_json(const SignaturePtr& sig, const json& j) { return from_json_impl<Poly>(sig, j); }
SCPoly sc_poly_from_json(const SignaturePtr& sig, const json& j) { return from_json_impl<SCPoly>(sig, j); }

json poly_to_json(const Poly& p) {
  return terms_to_json(*p.signature(), p.terms(), [](const Word& w) -> const auto& { return w.letters(); });
}

json sc_poly_to_json(const SCPoly& p) {
  return terms_to_json(*p.signature(), p.terms(), [](const SCWord& w) -> const auto& { return w.letters(); });
}

std::string format_word(const Signature& sig, const std::vector<GenIndex>& letters) {
  std::string plain;
  for (GenIndex g : letters) plain += sig.generator(g).name;
  if (auto back = tokenize_word(sig, plain); back && *back == letters) return plain;
  std::string joined;
  for (std::size_t k = 0; k < letters.size(); ++k) joined += (k ? "*" : "") + sig.generator(letters[k]).name;
  return joined;
}

std::string format_poly(const Poly& p) {
  return format_terms(*p.signature(), p.terms(), [](const Word& w) -> const auto& { return w.letters(); });
}

std::string format_sc_poly(const SCPoly& p) {
  return format_terms(*p.signature(), p.terms(), [](const SCWord& w) -> const auto& { return w.letters(); });
}

// --- documents -------------------------------------------------------------------

DGADocument parse_document(std::string_view text) {
  const json doc = parse_json(text);
  check_keys(doc, {"field", "mu", "kind", "description", "generators", "differential"}, "document");

  const json& field_j = require(doc, "field", "document");
  Field field = Field::rational();
  if (field_j.is_string()) {
    if (field_j.get<std::string>() != "rational") fail(ErrorKind::Structure, "field must be \"rational\" or {\"prime\": p}");
  } else if (field_j.is_object()) {
    check_keys(field_j, {"prime"}, "field");
    const json& p = require(field_j, "prime", "field");
    if (!p.is_number_unsigned()) fail(ErrorKind::Parse, "prime must be a positive integer");
    field = Field::prime(p.get<std::uint64_t>());
  } else {
    fail(ErrorKind::Structure, "field must be \"rational\" or {\"prime\": p}");
  }

  const json& mu_j = require(doc, "mu", "document");
  if (!mu_j.is_number_integer()) fail(ErrorKind::Parse, "mu must be an integer");
  const auto mu = mu_j.get<std::int64_t>();

  AlgebraKind kind = AlgebraKind::Free;
  if (auto it = doc.find("kind"); it != doc.end()) {
    if (*it == "supercommutative")
      kind = AlgebraKind::Supercommutative;
    else if (*it != "free")
      fail(ErrorKind::Structure, "kind must be \"free\" or \"supercommutative\"");
  }
  std::string description;
  if (auto it = doc.find("description"); it != doc.end()) {
    if (!it->is_string()) fail(ErrorKind::Structure, "description must be a string");
    description = it->get<std::string>();
  }

  const json& gens_j = require(doc, "generators", "document");
  if (!gens_j.is_array()) fail(ErrorKind::Structure, "generators must be a list");
  std::vector<GeneratorInfo> gens;
  std::set<std::string> seen;
  for (const auto& g : gens_j) {
    check_keys(g, {"name", "degree", "action"}, "generator");
    const json& name = require(g, "name", "generator");
    if (!name.is_string() || !valid_name(name.get<std::string>()))
      fail(ErrorKind::Structure, "generator names must be identifiers");
    if (!seen.insert(name.get<std::string>()).second)
      fail(ErrorKind::Structure, "duplicate generator '" + name.get<std::string>() + "'");
    const json& degree = require(g, "degree", "generator");
    if (!degree.is_number_integer()) fail(ErrorKind::Parse, "degree must be an integer");
    GeneratorInfo info{name.get<std::string>(), degree.get<std::int64_t>(), std::nullopt};
    if (auto it = g.find("action"); it != g.end()) {
      if (!it->is_string()) fail(ErrorKind::Parse, "action must be a string such as \"3/2\"");
      info.action = parse_rational(it->get<std::string>());
    }
    gens.push_back(std::move(info));
  }
  if (kind == AlgebraKind::Free)
    for (const auto& g : gens)
      if (!g.action) fail(ErrorKind::Structure, "generator '" + g.name + "' needs an action");
  auto sig = Signature::create(field, mu, std::move(gens));

  json diff_j = json::object();
  if (auto it = doc.find("differential"); it != doc.end()) diff_j = *it;
  if (!diff_j.is_object()) fail(ErrorKind::Structure, "differential must map generator names to polynomials");
  for (const auto& [key, value] : diff_j.items())
    if (!sig->index_of(key)) fail(ErrorKind::Structure, "differential of unknown generator '" + key + "'");

  auto image = [&](GenIndex g) -> const json* {
    auto it = diff_j.find(sig->generator(g).name);
    return it == diff_j.end() ? nullptr : &*it;
  };
  if (kind == AlgebraKind::Free) {
    std::vector<Poly> diff;
    for (GenIndex g = 0; g < sig->size(); ++g) diff.push_back(image(g) ? poly_from_json(sig, *image(g)) : Poly(sig));
    return {kind, description, DGAPresentation(sig, std::move(diff))};
  }
  std::vector<SCPoly> diff;
  for (GenIndex g = 0; g < sig->size(); ++g) diff.push_back(image(g) ? sc_poly_from_json(sig, *image(g)) : SCPoly(sig));
  return {kind, description, SCDGA(sig, std::move(diff))};
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Parse, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DGADocument load_document(const std::filesystem::path& path) { return parse_document(read_text_file(path)); }

std::string print_document(const DGADocument& doc) {
  const auto& sig = *doc.signature();
  ordered_json out;
  if (sig.field().is_rational())
    out["field"] = "rational";
  else
    out["field"] = ordered_json{{"prime", sig.field().modulus()}};
  out["mu"] = sig.mu();
  if (doc.kind == AlgebraKind::Supercommutative) out["kind"] = "supercommutative";
  if (!doc.description.empty()) out["description"] = doc.description;
  ordered_json gens = ordered_json::array();
  for (const auto& g : sig.generators()) {
    ordered_json entry{{"name", g.name}, {"degree", g.degree}};
    if (g.action) entry["action"] = rational_to_string(*g.action);
    gens.push_back(std::move(entry));
  }
  out["generators"] = std::move(gens);
  ordered_json diff = ordered_json::object();
  for (GenIndex g = 0; g < sig.size(); ++g) {
    const json image = doc.kind == AlgebraKind::Free ? poly_to_json(doc.free().differential(g))
                                                     : sc_poly_to_json(doc.supercommutative().differential(g));
    diff[sig.generator(g).name] = ordered_json::parse(image.dump());
  }
  out["differential"] = std::move(diff);
  return out.dump(2) + "\n";
}

// --- certificates -------------------------------------------------------------------

std::vector<CertificateTriple> parse_certificate(const SignaturePtr& sig, std::string_view text) {
  const json doc = parse_json(text);
  check_keys(doc, {"triples"}, "certificate");
  const json& triples = require(doc, "triples", "certificate");
  if (!triples.is_array()) fail(ErrorKind::Structure, "triples must be a list");
  std::vector<CertificateTriple> out;
  for (const auto& t : triples) {
    if (!t.is_array() || t.size() != 3) fail(ErrorKind::Structure, "a triple must be [u, v, w]");
    out.push_back({poly_from_json(sig, t[0]), poly_from_json(sig, t[1]), poly_from_json(sig, t[2])});
  }
  return out;
}

std::vector<TrivialityPair> parse_triviality_pairs(const SignaturePtr& sig, std::string_view text) {
  const json doc = parse_json(text);
  check_keys(doc, {"pairs"}, "triviality certificate");
  const json& pairs = require(doc, "pairs", "triviality certificate");
  if (!pairs.is_array()) fail(ErrorKind::Structure, "pairs must be a list");
  std::vector<TrivialityPair> out;
  for (const auto& p : pairs) {
    if (!p.is_array() || p.size() != 2) fail(ErrorKind::Structure, "a pair must be [x, y]");
    out.push_back({sc_poly_from_json(sig, p[0]), sc_poly_from_json(sig, p[1])});
  }
  return out;
}

}  // namespace fdga
