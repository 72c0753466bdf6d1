#pragma once

// Left weak division algorithm for the action-induced degree function:
// nu-dependence, division with quotients, completion of generating sets of
// left ideals to nu-independent (hence free) families, and the completion of
// a left ideal generated by boundaries to a free family of boundaries.

#include <cstdint>
#include <optional>
#include <vector>

#include "fdga/dga.hpp"
#include "fdga/linsolve.hpp"

namespace fdga {

/// Nonzero polynomials kept sorted by nu (stable for equal values).
class NuFamily {
 public:
  NuFamily() = default;
  /// Sorts; throws Precondition on a zero member.
  explicit NuFamily(std::vector<Poly> members);

  /// Inserts after every member of equal or lower nu; returns the position.
  std::size_t insert(Poly p);
  void truncate(std::size_t n) {
    if (n < members_.size()) members_.erase(members_.begin() + static_cast<std::ptrdiff_t>(n), members_.end());
  }

  const std::vector<Poly>& members() const noexcept { return members_; }
  const Poly& operator[](std::size_t i) const { return members_[i]; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }

 private:
  std::vector<Poly> members_;
};

/// x = sum quotients[i] * family[i] + remainder.
struct DivisionResult {
  std::vector<Poly> quotients;
  Poly remainder;
  std::size_t rounds = 0;
};

/// Quotients y_i with nu(x - sum y_i x_i) < nu(x) and nu(y_i x_i) <= nu(x),
/// or std::nullopt.  Only the first `prefix` members are used (all by
/// default).  Throws Precondition on x = 0.
std::optional<std::vector<Poly>> nu_dependent_on(const Poly& x, const std::vector<Poly>& family,
                                                 std::size_t prefix = SIZE_MAX);
std::optional<std::vector<Poly>> nu_dependent_on(const Poly& x, const NuFamily& family);

struct DependenceWitness {
  std::size_t index;
  std::vector<Poly> quotients;  ///< over the members before `index`
};

/// Least i such that family[i] is nu-dependent on its predecessors, or
/// std::nullopt when the family is nu-independent.
std::optional<DependenceWitness> nu_dependent(const NuFamily& family);

/// Iterated reduction of the running remainder until its leading part is no
/// longer nu-dependent on the family.
DivisionResult weak_divide(const Poly& x, const NuFamily& family);

/// Exact identity check x = sum q_i f_i + r.
bool division_identity_holds(const Poly& x, const NuFamily& family, const DivisionResult& d);

struct BasisCompletion {
  NuFamily family;
  /// family[k] = sum_j family_from_inputs[k][j] * inputs[j]
  std::vector<std::vector<Poly>> family_from_inputs;
  /// inputs[j] = sum_k inputs_from_family[j][k] * family[k]
  std::vector<std::vector<Poly>> inputs_from_family;
};

/// Reduces the generators of a left ideal until nu-independent.  Throws
/// EmptyIdeal when every generator is zero.
BasisCompletion complete_basis(const std::vector<Poly>& generators);

struct BoundaryPair {
  Poly preimage;
  Poly boundary;
};

struct CompletionResult {
  /// (y_i, d y_i), i = 1..m
  std::vector<BoundaryPair> pairs;
  /// b_i = d y_i - sum_{j<i} triangular[i][j] * b_j, sorted by nu, nu-independent
  NuFamily basis;
  std::vector<std::vector<Poly>> triangular;
  /// max nu over the input boundaries
  std::uint64_t max_input_nu = 0;
  /// pairs[i].boundary = sum_k pairs_from_inputs[i][k] * inputs[k].boundary
  std::vector<std::vector<Poly>> pairs_from_inputs;
  /// inputs[k].boundary = sum_i inputs_from_pairs[k][i] * pairs[i].boundary
  std::vector<std::vector<Poly>> inputs_from_pairs;
  /// cycles y - sum (-1)^{|x_i|} x_i y_i found while absorbing redundant pairs
  std::vector<Poly> cycle_relations;
  std::size_t peel_steps = 0;
  std::size_t rebuilds = 0;
};

/// Completes the left ideal generated by the boundaries of `pairs` to a free
/// family of boundaries satisfying the triangular relations above.
/// Throws Precondition on a pair with d(y) != boundary, EmptyIdeal when every
/// boundary vanishes, and Filtration when a peeling quotient is not a cycle.
CompletionResult boundary_basis(const DGAPresentation& dga, const std::vector<BoundaryPair>& pairs);

/// Coefficients x_i with x = sum x_i * d(y_i), or std::nullopt when x is not
/// in the left ideal.
std::optional<std::vector<Poly>> ideal_member(const Poly& x, const CompletionResult& cr);

/// Full invariant check of a completion (used by tests and the CLI).
bool completion_invariants_hold(const DGAPresentation& dga, const CompletionResult& cr,
                                const std::vector<BoundaryPair>& inputs, std::string* why = nullptr);

}  // namespace fdga
