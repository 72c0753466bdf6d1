#include "fdga/dga.hpp"

#include <algorithm>
#include <functional>

namespace fdga {

DGAPresentation::DGAPresentation(SignaturePtr sig, std::vector<Poly> differential)
    : sig_(std::move(sig)), diff_(std::move(differential)) {
  if (!sig_) fail(ErrorKind::Structure, "presentation without signature");
  if (diff_.size() != sig_->size())
    fail(ErrorKind::Structure, "differential lists " + std::to_string(diff_.size()) + " images for " +
                                   std::to_string(sig_->size()) + " generators");
  for (const auto& p : diff_)
    if (!same_signature(p.signature(), sig_)) fail(ErrorKind::Structure, "differential image in a foreign algebra");
}

Poly DGAPresentation::gen(std::string_view name) const {
  auto g = sig_->index_of(name);
  if (!g) fail(ErrorKind::Structure, "unknown generator '" + std::string(name) + "'");
  return gen(*g);
}

Poly signed_product(const Poly& x, const Poly& y) {
  const auto& sig = *x.signature();
  Poly out(x.signature());
  for (const auto& [d, part] : homogeneous_components(x)) {
    if (sig.sign(d) == 1)
      out += part * y;
    else
      out -= part * y;
  }
  return out;
}

Poly leibniz_extend(const DGAPresentation& dga, const Poly& p) {
  const auto& sig = *dga.signature();
  if (!same_signature(p.signature(), dga.signature()))
    fail(ErrorKind::Structure, "element does not belong to the presentation's algebra");
  const auto& df = sig.degree_function();
  Poly out(dga.signature());
  std::vector<GenIndex> letters;
  for (const auto& [w, c] : p.terms()) {
    const auto& ws = w.letters();
    std::int64_t prefix_degree = 0;
    for (std::size_t j = 0; j < ws.size(); ++j) {
      const Poly& image = dga.differential(ws[j]);
      if (!image.is_zero()) {
        const Scalar coeff = sig.sign(prefix_degree) == 1 ? c : -c;
        for (const auto& [m, d] : image.terms()) {
          letters.assign(ws.begin(), ws.begin() + j);
          letters.insert(letters.end(), m.letters().begin(), m.letters().end());
          letters.insert(letters.end(), ws.begin() + j + 1, ws.end());
          out.add_term(Word(letters, df), coeff * d);
        }
      }
      prefix_degree += sig.degree(ws[j]);
    }
  }
  return out;
}

bool ValidationReport::has(Violation::Kind kind) const {
  return std::any_of(violations.begin(), violations.end(), [&](const auto& v) { return v.kind == kind; });
}

namespace {

std::vector<Violation> filtration_violations(const DGAPresentation& dga) {
  const auto& sig = *dga.signature();
  std::vector<Violation> out;
  for (GenIndex g = 0; g < sig.size(); ++g) {
    const Rational& bound = *sig.generator(g).action;
    for (const auto& [m, c] : dga.differential(g).terms()) {
      const Rational a = word_action(sig, m.letters());
      if (a >= bound)
        out.push_back({Violation::Kind::Filtration, sig.generator(g).name, m,
                       "monomial action " + rational_to_string(a) + " is not below " + rational_to_string(bound)});
    }
  }
  return out;
}

}  // namespace

ValidationReport validate_dga(const DGAPresentation& dga) {
  const auto& sig = *dga.signature();
  ValidationReport report;
  if (sig.field().characteristic() != 2 && sig.mu() % 2 != 0)
    report.violations.push_back({Violation::Kind::Parity, "", std::nullopt, "odd grading modulus outside characteristic 2"});
  for (GenIndex g = 0; g < sig.size(); ++g) {
    const auto& info = sig.generator(g);
    const auto want = sig.normalize_degree(info.degree - 1);
    for (const auto& [m, c] : dga.differential(g).terms()) {
      const auto d = word_degree(sig, m.letters());
      if (d != want)
        report.violations.push_back({Violation::Kind::Degree, info.name, m,
                                     "monomial has degree " + std::to_string(d) + ", expected " + std::to_string(want)});
    }
  }
  auto filtration = filtration_violations(dga);
  report.violations.insert(report.violations.end(), filtration.begin(), filtration.end());
  for (GenIndex g = 0; g < sig.size(); ++g) {
    const Poly dd = leibniz_extend(dga, dga.differential(g));
    if (!dd.is_zero())
      report.violations.push_back({Violation::Kind::DifferentialSquare, sig.generator(g).name, dd.top_word(),
                                   "d(d(" + sig.generator(g).name + ")) is nonzero"});
  }
  return report;
}

NuDecreaseReport check_nu_decrease(const DGAPresentation& dga, const DegreeFunction& df,
                                   const std::vector<Poly>& samples) {
  NuDecreaseReport report;
  for (GenIndex g = 0; g < dga.size(); ++g) {
    const NuValue image = nu_of(dga.differential(g), df);
    if (!(image < NuValue(df.weight(g)))) report.generator_failures.push_back(g);
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].is_zero()) continue;
    if (!(nu_of(leibniz_extend(dga, samples[i]), df) < nu_of(samples[i], df))) report.sample_failures.push_back(i);
  }
  return report;
}

AlgebraMorphism AlgebraMorphism::identity(const SignaturePtr& sig) {
  AlgebraMorphism m{sig, sig, {}};
  for (GenIndex g = 0; g < sig->size(); ++g) m.images.push_back(Poly::generator(sig, g));
  return m;
}

Poly apply_morphism(const AlgebraMorphism& m, const Poly& p) {
  if (!same_signature(p.signature(), m.source)) fail(ErrorKind::Structure, "element is not in the morphism's source");
  if (m.images.size() != m.source->size()) fail(ErrorKind::Structure, "morphism image count mismatch");
  for (const auto& image : m.images)
    if (!same_signature(image.signature(), m.target)) fail(ErrorKind::Structure, "morphism image outside target");
  Poly out(m.target);
  for (const auto& [w, c] : p.terms()) {
    Poly term = Poly::constant(m.target, c);
    for (GenIndex g : w.letters()) {
      term = term * m.images[g];
      if (term.is_zero()) break;
    }
    out += term;
  }
  return out;
}

ElementaryAuto::ElementaryAuto(GenIndex pivot_, Scalar scale_, Poly tail_)
    : pivot(pivot_), scale(std::move(scale_)), tail(std::move(tail_)) {
  const auto& sig = *tail.signature();
  if (pivot >= sig.size()) fail(ErrorKind::Validation, "pivot generator out of range");
  if (scale.is_zero()) fail(ErrorKind::Validation, "elementary automorphism with zero scale");
  if (involves(tail, pivot)) fail(ErrorKind::Validation, "tail involves the pivot generator");
  const auto grading = grading_of(tail);
  if (grading.kind == Grading::Kind::Mixed ||
      (grading.kind == Grading::Kind::Homogeneous && grading.degree != sig.degree(pivot)))
    fail(ErrorKind::Validation, "tail is not homogeneous of the pivot's degree");
}

namespace {

AlgebraMorphism as_morphism(const ElementaryAuto& e) {
  auto m = AlgebraMorphism::identity(e.tail.signature());
  m.images[e.pivot] = e.scale * m.images[e.pivot] + e.tail;
  return m;
}

}  // namespace

Poly elementary_auto_apply(const ElementaryAuto& e, const Poly& p) { return apply_morphism(as_morphism(e), p); }

ElementaryAuto elementary_auto_inverse(const ElementaryAuto& e) {
  const Scalar inv = e.scale.inverse();
  return ElementaryAuto(e.pivot, inv, -(inv * e.tail));
}

DGAPresentation reassign_actions(const DGAPresentation& dga) {
  const auto& sig = *dga.signature();
  const std::size_t n = sig.size();
  std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<GenIndex> order;
  std::function<void(GenIndex)> visit = [&](GenIndex g) {
    if (state[g] == 2) return;
    if (state[g] == 1) fail(ErrorKind::Filtration, "differential dependency cycle through '" + sig.generator(g).name + "'");
    state[g] = 1;
    for (const auto& [m, c] : dga.differential(g).terms())
      for (GenIndex h : m.letters()) visit(h);
    state[g] = 2;
    order.push_back(g);
  };
  for (GenIndex g = 0; g < n; ++g) visit(g);

  auto generators = sig.generators();
  for (GenIndex g : order) {
    std::optional<Rational> needed;
    for (const auto& [m, c] : dga.differential(g).terms()) {
      Rational a = 0;
      for (GenIndex h : m.letters()) a += *generators[h].action;
      if (!needed || a > *needed) needed = a;
    }
    if (needed && *generators[g].action <= *needed) generators[g].action = *needed + 1;
  }
  auto target = Signature::create(sig.field(), sig.mu(), std::move(generators));
  std::vector<GenIndex> same(n);
  for (GenIndex g = 0; g < n; ++g) same[g] = g;
  std::vector<Poly> diff;
  for (const auto& p : dga.differential()) diff.push_back(transport(p, target, same));
  return DGAPresentation(target, std::move(diff));
}

DGAPresentation pushforward_differential(const DGAPresentation& dga, const ElementaryAuto& e, FiltrationPolicy policy) {
  if (!same_signature(e.tail.signature(), dga.signature()))
    fail(ErrorKind::Structure, "automorphism and presentation live in different algebras");
  const auto forward = as_morphism(e);
  const auto inverse = as_morphism(elementary_auto_inverse(e));
  std::vector<Poly> diff;
  for (GenIndex g = 0; g < dga.size(); ++g) {
    if (g == e.pivot)
      diff.push_back(apply_morphism(forward, leibniz_extend(dga, inverse.images[g])));
    else
      diff.push_back(apply_morphism(forward, dga.differential(g)));
  }
  DGAPresentation out(dga.signature(), std::move(diff));
  if (filtration_violations(out).empty()) return out;
  if (policy == FiltrationPolicy::Strict)
    fail(ErrorKind::Filtration, "transported differential violates strict action decrease at '" +
                                    dga.signature()->generator(e.pivot).name + "'");
  return reassign_actions(out);
}

AcyclicNormalForm normalize_acyclic(const DGAPresentation& dga, GenIndex pivot) {
  if (pivot >= dga.size()) fail(ErrorKind::Precondition, "pivot generator out of range");
  if (!(dga.differential(pivot) == dga.one()))
    fail(ErrorKind::Precondition, "d(" + dga.signature()->generator(pivot).name + ") is not the unit");
  DGAPresentation current = dga;
  std::vector<ElementaryAuto> moves;
  for (GenIndex g = 0; g < current.size(); ++g) {
    if (g == pivot) continue;
    const Poly& image = current.differential(g);
    if (image.is_zero()) continue;
    if (involves(image, g))
      fail(ErrorKind::Precondition, "d(" + current.signature()->generator(g).name + ") involves the generator itself");
    ElementaryAuto move(g, Scalar(1), current.gen(pivot) * image);
    current = pushforward_differential(current, move, FiltrationPolicy::Reassign);
    moves.push_back(std::move(move));
  }
  for (GenIndex g = 0; g < current.size(); ++g) {
    const bool ok = g == pivot ? current.differential(g) == current.one() : current.differential(g).is_zero();
    if (!ok) fail(ErrorKind::InternalAssertion, "normal form sweep left a non-cycle generator");
  }
  return {std::move(current), std::move(moves), pivot};
}

DGAPresentation free_product(const DGAPresentation& a, const DGAPresentation& b) {
  const auto& sa = *a.signature();
  const auto& sb = *b.signature();
  if (!(sa.field() == sb.field())) fail(ErrorKind::Structure, "free product of algebras over different fields");
  if (sa.mu() != sb.mu()) fail(ErrorKind::Structure, "free product with different grading moduli");
  auto generators = sa.generators();
  for (const auto& g : sb.generators()) {
    if (sa.index_of(g.name)) fail(ErrorKind::Structure, "generator name clash on '" + g.name + "'");
    generators.push_back(g);
  }
  auto target = Signature::create(sa.field(), sa.mu(), std::move(generators));
  std::vector<GenIndex> map_a(sa.size()), map_b(sb.size());
  for (GenIndex g = 0; g < sa.size(); ++g) map_a[g] = g;
  for (GenIndex g = 0; g < sb.size(); ++g) map_b[g] = static_cast<GenIndex>(sa.size() + g);
  std::vector<Poly> diff;
  for (const auto& p : a.differential()) diff.push_back(transport(p, target, map_a));
  for (const auto& p : b.differential()) diff.push_back(transport(p, target, map_b));
  return DGAPresentation(target, std::move(diff));
}

DGAPresentation stabilization(std::int64_t degree, const Rational& la, const Rational& lb, Field field,
                              std::int64_t mu, const std::string& name_a, const std::string& name_b) {
  if (sgn(la) <= 0 || lb <= la)
    fail(ErrorKind::Filtration, "stabilisation needs actions lb > la > 0, got la = " + rational_to_string(la) +
                                    ", lb = " + rational_to_string(lb));
  auto sig = Signature::create(field, mu, {{name_a, degree, la}, {name_b, degree + 1, lb}});
  return DGAPresentation(sig, {Poly(sig), Poly::generator(sig, 0)});
}

namespace {

std::string fresh_name(const Signature& sig, const std::string& base) {
  if (!sig.index_of(base)) return base;
  for (int k = 1;; ++k) {
    std::string candidate = base + std::to_string(k);
    if (!sig.index_of(candidate)) return candidate;
  }
}

}  // namespace

AcyclicNormalForm acyclic_stable_normal_form(const DGAPresentation& dga, const Poly& x) {
  const auto& sig = *dga.signature();
  if (!(leibniz_extend(dga, x) == dga.one())) fail(ErrorKind::Precondition, "d(x) is not the unit");
  if (!(grading_of(x) == Grading::of(sig.normalize_degree(1)))) fail(ErrorKind::Precondition, "x is not of degree 1");
  Rational lb = *action_of(x) + 1;
  if (lb < 2) lb = 2;
  const auto stab = stabilization(1, Rational(1), lb, sig.field(), sig.mu(), fresh_name(sig, "sa"), fresh_name(sig, "sb"));
  const DGAPresentation product = free_product(dga, stab);
  const GenIndex a = static_cast<GenIndex>(sig.size());
  std::vector<GenIndex> same(sig.size());
  for (GenIndex g = 0; g < sig.size(); ++g) same[g] = g;
  const Poly moved_x = transport(x, product.signature(), same);
  const ElementaryAuto shift(a, Scalar(1), -moved_x);
  const DGAPresentation shifted = pushforward_differential(product, shift, FiltrationPolicy::Reassign);
  auto normal = normalize_acyclic(shifted, a);
  normal.moves.insert(normal.moves.begin(), shift);
  return normal;
}

std::int64_t euler_invariant(const DGAPresentation& dga) {
  const auto& sig = *dga.signature();
  if (sig.mu() % 2 != 0) fail(ErrorKind::Precondition, "degree parity undefined for odd grading modulus");
  std::int64_t odd = 0, even = 0;
  for (const auto& g : sig.generators()) (Signature::odd(g.degree) ? odd : even) += 1;
  return odd - even;
}

}  // namespace fdga
