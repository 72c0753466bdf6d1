#pragma once

// Semifree DGA presentations: the Leibniz extension of the differential,
// validation, algebra morphisms, elementary automorphisms, stabilisations,
// free products and the normal forms of acyclic DGAs.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fdga/freealg.hpp"

namespace fdga {

/// Signature plus the images of the generators under the differential.
class DGAPresentation {
 public:
  /// Throws Structure when the image list does not match the signature.
  DGAPresentation(SignaturePtr sig, std::vector<Poly> differential);

  const SignaturePtr& signature() const noexcept { return sig_; }
  const std::vector<Poly>& differential() const noexcept { return diff_; }
  const Poly& differential(GenIndex g) const { return diff_.at(g); }
  std::size_t size() const noexcept { return diff_.size(); }

  Poly zero() const { return Poly(sig_); }
  Poly one() const { return Poly::constant(sig_, Scalar(1)); }
  Poly gen(GenIndex g) const { return Poly::generator(sig_, g); }
  Poly gen(std::string_view name) const;

 private:
  SignaturePtr sig_;
  std::vector<Poly> diff_;
};

/// Linear extension of the differential by the graded Leibniz rule.
Poly leibniz_extend(const DGAPresentation& dga, const Poly& p);

/// sum over homogeneous parts x^(d) of (-1)^d x^(d) * y
Poly signed_product(const Poly& x, const Poly& y);

struct Violation {
  enum class Kind { Degree, Filtration, DifferentialSquare, Parity };
  Kind kind;
  std::string generator;
  std::optional<Word> monomial;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
  bool has(Violation::Kind kind) const;
};

/// Degree -1, strict action decrease on every monomial of every generator
/// image, d^2 = 0 on generators, and grading/characteristic compatibility.
ValidationReport validate_dga(const DGAPresentation& dga);

struct NuDecreaseReport {
  std::vector<GenIndex> generator_failures;
  std::vector<std::size_t> sample_failures;
  bool ok() const noexcept { return generator_failures.empty() && sample_failures.empty(); }
};

/// nu(d a) < nu(a) on every generator, and nu(d x) < nu(x) on each nonzero sample.
NuDecreaseReport check_nu_decrease(const DGAPresentation& dga, const DegreeFunction& df,
                                   const std::vector<Poly>& samples);

/// Unital algebra map determined by generator images.
struct AlgebraMorphism {
  SignaturePtr source;
  SignaturePtr target;
  std::vector<Poly> images;

  static AlgebraMorphism identity(const SignaturePtr& sig);
};

Poly apply_morphism(const AlgebraMorphism& m, const Poly& p);

/// a_pivot -> scale * a_pivot + tail, every other generator fixed.
struct ElementaryAuto {
  GenIndex pivot = 0;
  Scalar scale = Scalar(1);
  Poly tail;

  /// Throws Validation when scale = 0, the tail involves the pivot, or the
  /// tail is not homogeneous of the pivot's degree.
  ElementaryAuto(GenIndex pivot, Scalar scale, Poly tail);
};

Poly elementary_auto_apply(const ElementaryAuto& e, const Poly& p);
ElementaryAuto elementary_auto_inverse(const ElementaryAuto& e);

enum class FiltrationPolicy {
  /// Throw Filtration if the transported differential breaks strict action decrease.
  Strict,
  /// Raise actions along the dependency order until the condition holds again.
  Reassign,
};

/// Differential Phi o d o Phi^{-1}, expressed on the generators.
DGAPresentation pushforward_differential(const DGAPresentation& dga, const ElementaryAuto& e,
                                         FiltrationPolicy policy = FiltrationPolicy::Strict);

/// Smallest monotone increase of the actions restoring strict action decrease
/// (generators processed in dependency order).  Throws Filtration when the
/// dependency graph has a cycle.
DGAPresentation reassign_actions(const DGAPresentation& dga);

struct AcyclicNormalForm {
  DGAPresentation presentation;
  std::vector<ElementaryAuto> moves;
  GenIndex pivot;
};

/// Given d(pivot) = 1, applies a -> a + pivot * d(a) to every other
/// non-cycle generator so that all of them become cycles.
AcyclicNormalForm normalize_acyclic(const DGAPresentation& dga, GenIndex pivot);

/// Disjoint union of generators; throws Structure on a name clash or a
/// field/grading mismatch.
DGAPresentation free_product(const DGAPresentation& a, const DGAPresentation& b);

/// Two generators a (degree i), b (degree i + 1) with d b = a.
/// Throws Filtration unless lb > la > 0.
DGAPresentation stabilization(std::int64_t degree, const Rational& la, const Rational& lb,
                              Field field = Field::rational(), std::int64_t mu = 0,
                              const std::string& name_a = "a", const std::string& name_b = "b");

/// Free product with a degree-1 stabilisation, the move a -> a - x, then
/// normalize_acyclic around the new generator.  Requires d x = 1 and |x| = 1.
AcyclicNormalForm acyclic_stable_normal_form(const DGAPresentation& dga, const Poly& x);

/// (number of odd generators) - (number of even generators).
std::int64_t euler_invariant(const DGAPresentation& dga);

}  // namespace fdga
