#ifndef WREATHLAB_ADDITIVE_HPP_
#define WREATHLAB_ADDITIVE_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "wreathlab/terms.hpp"

namespace wreathlab {

  using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
  using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;
  using IntTuple  = std::vector<std::int64_t>;

  // B = {1, 2, ...} or B_0 = {0, 1, ...}
  enum class Domain { positive, nonneg };

  struct LinEquation {
    AddTerm lhs;
    AddTerm rhs;
  };

  struct LinSystem {
    std::size_t              arity  = 0;
    Domain                   domain = Domain::positive;
    std::vector<LinEquation> equations;

    // One row lhs - rhs per equation.
    IntMatrix coefficient_matrix() const;
  };

  // The B-parts of the referenced equations of a semigroup system.
  LinSystem b_system(System const&                  sys,
                     std::span<EquationRef const>   refs,
                     Domain                         domain = Domain::positive);

  // Every solution is p + sum k_j h_j with p in `particular`, h_j in
  // `homogeneous`, k_j >= 0.
  struct SolutionBasis {
    std::size_t           arity      = 0;
    Domain                domain     = Domain::positive;
    bool                  consistent = false;
    std::vector<IntTuple> particular;
    std::vector<IntTuple> homogeneous;

    // Values of t on every particular solution, then on every homogeneous
    // generator. Two terms are equivalent iff their signatures agree.
    IntTuple signature(AddTerm const& t) const;
    // Particular solutions followed by homogeneous generators, one per row.
    IntMatrix generators() const;
  };

  // Minimal nonzero solutions in N^k of m * v = 0, sorted lexicographically.
  // With `last_cap`, only solutions whose last coordinate is <= *last_cap are
  // produced (used for homogenised inhomogeneous systems).
  std::vector<IntTuple>
  minimal_solutions(IntMatrix const&                  m,
                    std::optional<std::int64_t> const last_cap = std::nullopt);

  // Hilbert basis of the homogeneous system (domain is ignored).
  std::vector<IntTuple> hilbert_basis(LinSystem const& sys);

  SolutionBasis solve(LinSystem const& sys);

  bool is_consequence(SolutionBasis const& basis, LinEquation const& eq);

  bool term_equiv(AddTerm const& t, AddTerm const& s, SolutionBasis const& basis);

  // Every term equivalent to t. Needs the positive domain.
  std::vector<AddTerm> equiv_class(AddTerm const& t, SolutionBasis const& basis);

  // s < t iff s + s' ~ t for some s' of length >= 1.
  bool less_than(AddTerm const& s, AddTerm const& t, SolutionBasis const& basis);

  // { s : s < t }, all of length >= 1, shortest first.
  std::vector<AddTerm> down_set(AddTerm const& t, SolutionBasis const& basis);

  struct FiniteSubsystem {
    std::vector<EquationRef> kept;
    SolutionBasis            basis;
    // Schema instances inspected before the stopping rule fired, per schema.
    std::vector<std::int64_t> scanned_until;
  };

  // Scans finite equations, then each schema's instances in order, keeping
  // the equations whose B-part is not a consequence of those kept so far.
  // A schema is abandoned after two consecutive redundant instances: the
  // B-part of instance i is 2 (i-1) - (i-2) for affine schemas.
  FiniteSubsystem finite_equivalent_subsystem(System const& sys,
                                              Domain domain = Domain::positive);

  // The same scan over a plain list; returns kept indices.
  std::vector<std::size_t>
  finite_equivalent_subsystem(std::span<LinEquation const> eqs,
                              std::size_t                  arity,
                              Domain                       domain);

  struct DiscriminationOptions {
    // candidates tried by the exhaustive small-weight phase
    std::size_t exhaustive_limit = 20000;
    // random phase: coefficient range doubles from 2 up to this cap
    std::int64_t random_cap    = std::int64_t{1} << 40;
    std::size_t  random_trials = 48;
    std::uint64_t seed         = 0x5eed5eedULL;
  };

  struct Discrimination {
    IntTuple                  point;
    std::size_t               particular_index = 0;
    IntTuple                  multipliers;
    std::vector<std::int64_t> values;       // one per input term
    std::vector<std::size_t>  class_index;  // ~-class of each input term
    std::size_t               classes = 0;
    std::string               phase;
  };

  // A point Q of the solution set where non-equivalent terms take distinct
  // values. Throws BoundExhausted naming an unseparated pair when every
  // phase fails.
  Discrimination discriminating_point(std::span<AddTerm const>     terms,
                                      SolutionBasis const&         basis,
                                      DiscriminationOptions const& opts = {});

  // Enumerates s in N^n with generators * s <= bound componentwise, calling
  // visit(s, generators * s). The visitor returns false to stop.
  void enumerate_bounded(
      SolutionBasis const&                                  basis,
      IntTuple const&                                       bound,
      std::function<bool(IntTuple const&, IntTuple const&)> visit);

}  // namespace wreathlab

#endif  // WREATHLAB_ADDITIVE_HPP_
