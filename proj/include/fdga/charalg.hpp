#pragma once

// Characteristic algebra tooling: certificates of membership in the two-sided
// ideal generated by the boundaries, the boundary-witness pipeline for cycles
// in that ideal, bounded acyclicity probes, and a brute-force boundary oracle
// on the finite-dimensional truncation nu <= cap.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "fdga/dga.hpp"
#include "fdga/weakalg.hpp"

namespace fdga {

struct CertificateTriple {
  Poly u;
  Poly v;
  Poly w;
};

/// Triples (u_i, v_i, w_i) with x = sum u_i d(v_i) w_i.
class TwoSidedCertificate {
 public:
  /// Throws Certificate when the identity fails.
  TwoSidedCertificate(const DGAPresentation& dga, const Poly& x, std::vector<CertificateTriple> triples);

  const std::vector<CertificateTriple>& triples() const noexcept { return triples_; }
  const Poly& element() const noexcept { return x_; }

  /// sum u_i d(v_i) w_i
  static Poly expand(const DGAPresentation& dga, const std::vector<CertificateTriple>& triples, const SignaturePtr& sig);

 private:
  Poly x_;
  std::vector<CertificateTriple> triples_;
};

/// x = sum coefficients[k] * pairs[k].boundary
struct LeftIdealRewrite {
  std::vector<BoundaryPair> pairs;
  std::vector<Poly> coefficients;
};

/// u d(v) w = u d(v w) - (-1)^{|v|} u v d(w), applied per homogeneous part of v.
LeftIdealRewrite certificate_to_left_ideal(const DGAPresentation& dga, const Poly& x, const TwoSidedCertificate& cert);

/// d(y) = x, checked on construction (InternalAssertion otherwise).
struct BoundaryWitness {
  Poly y;
  Poly x;

  BoundaryWitness(const DGAPresentation& dga, Poly y, Poly x);
};

/// y = sum (-1)^{|x_i|} x_i y_i from x = sum x_i d(y_i) over the completed
/// family.  Throws Precondition when x is not a cycle and Certificate when x
/// is not in the left ideal of the rewritten certificate.
BoundaryWitness boundary_witness(const DGAPresentation& dga, const Poly& x, const TwoSidedCertificate& cert);

/// Exact search over u d(a_i) w with nu <= cap; std::nullopt means unknown at cap.
std::optional<TwoSidedCertificate> two_sided_member_bounded(const DGAPresentation& dga, const Poly& x,
                                                            std::uint64_t cap);

/// A verified y with d(y) = 1, or std::nullopt when 1 is not found in the
/// two-sided boundary ideal at this cap.
std::optional<BoundaryWitness> is_acyclic_bounded(const DGAPresentation& dga, std::uint64_t cap);

/// The subcomplex spanned by words with nu <= cap.
struct TruncatedComplex {
  SignaturePtr signature;
  std::uint64_t cap = 0;
  std::vector<Word> basis;
  std::map<Word, std::size_t> index;
  /// degree -> basis positions
  std::map<std::int64_t, std::vector<std::size_t>> by_degree;
  /// columns[j] = d(basis[j]) as sparse (row, value) entries
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> columns;
};

/// Throws Filtration if d leaves the truncation (an invalid presentation).
TruncatedComplex truncated_complex(const DGAPresentation& dga, std::uint64_t cap);

/// y with nu(y) <= cap and d(y) = x, or std::nullopt (none at this cap).
/// Throws Precondition when nu(x) > cap.
std::optional<Poly> is_boundary_bruteforce(const TruncatedComplex& tc, const Poly& x);

/// Every column of d o d vanishes.
bool differential_squares_to_zero(const TruncatedComplex& tc);

}  // namespace fdga
