#ifndef WREATHLAB_QCOMPACT_HPP_
#define WREATHLAB_QCOMPACT_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wreathlab/additive.hpp"
#include "wreathlab/semigroup.hpp"
#include "wreathlab/terms.hpp"

namespace wreathlab {

  enum class InclusionStatus { assumed, bounded_verified, refuted };

  // A system S, an equation E and the B-level data shared by every stage.
  struct ConsequenceInstance {
    SemigroupPtr    a;
    System          system;
    Equation        equation;
    FiniteSubsystem hat;  // the finite B-equivalent subsystem and its basis
    InclusionStatus status = InclusionStatus::assumed;

    SolutionBasis const& basis() const noexcept {
      return hat.basis;
    }
  };

  ConsequenceInstance make_instance(SemigroupPtr a, System sys, Equation e);

  enum class BStatus { equivalent, refuted, inconsistent };

  struct BPrecondition {
    BStatus                 status = BStatus::equivalent;
    std::optional<IntTuple> witness;  // P in V_B(S) with t_B(P) != s_B(P)
  };

  BPrecondition check_B_precondition(ConsequenceInstance const& inst);

  // The zero term followed by down_set(t_B(E)).
  std::vector<AddTerm> t_less_set(ConsequenceInstance const& inst);

  struct StarSubsystem {
    std::vector<EquationRef> refs;
    System                   star;  // finite, one equation per ref
    // Up to three leading instances of each schema beyond the filter.
    std::vector<EquationRef> excluded_sample;
  };

  // Keeps the B-equivalent subsystem and every equation with a side of
  // length <= bound.
  StarSubsystem star_subsystem(ConsequenceInstance const& inst, std::size_t bound);

  std::vector<FinSuppVector> shift_to_first(std::vector<FinSuppVector> const& a_part,
                                            Coord                             beta);

  // Point of the doubled system over C_01: the first n vectors are x'_i,
  // the last n are x''_i; b-part (P, 0).
  struct DoubledPoint {
    SemigroupPtr a1;
    WreathPoint  point;
  };

  // p'_i ~ r_i and p''_i = 1. Throws InternalConsistencyError when one of the
  // three claims fails: (P, 0) solves the doubled S*_B, the point solves the
  // doubled S*_A, and projection 0 of the doubled E fails.
  DoubledPoint lift_to_doubled(SemigroupPtr const&               a1,
                               std::vector<FinSuppVector> const& r,
                               std::vector<Coord> const&         p,
                               System const&                     star,
                               Equation const&                   e);

  struct TermSets {
    std::vector<AddTerm> t_star;
    std::vector<AddTerm> t_full;
  };

  // T_* holds down_set(t_B) plus t_B and s_B for every equation of S*;
  // T = { t + s : t in T_<, s in T_* } together with T_<.
  TermSets t_star_and_T(System const&               star,
                        SolutionBasis const&        basis,
                        std::vector<AddTerm> const& t_less);

  struct Transported {
    std::vector<FinSuppVector> q1;  // Q'
    std::vector<FinSuppVector> q2;  // Q''
    // s(Q) -> s(P) for s in T_< (Q') and for s in T_< plus t_B(E) (Q'')
    std::vector<std::pair<Coord, Coord>> index_map;
    std::vector<std::pair<Coord, Coord>> index_map_top;
  };

  // Q' copies P' along s(Q) -> s(P) for s in T_<. Q'' does the same for
  // s in T_< and s = top; the last x'' factor of E sits at top(Q).
  Transported transport_points(DoubledPoint const&         lifted,
                               std::vector<Coord> const&   p,
                               std::vector<Coord> const&   q,
                               std::vector<AddTerm> const& t_less,
                               AddTerm const&              top);

  struct TransportCheck {
    bool star_b_holds     = false;
    bool star_a_holds     = false;
    bool projection0_fails = false;
    bool ok() const noexcept {
      return star_b_holds && star_a_holds && projection0_fails;
    }
  };

  TransportCheck verify_transport(Transported const&  tr,
                                  std::vector<Coord> const& q,
                                  System const&       star,
                                  Equation const&     e);

  // q_i ~ q'_i . shift(q''_i, Q_i), mapped back to A. Throws
  // InternalConsistencyError if the unit survives.
  std::vector<FinSuppVector> recombine(Transported const&        tr,
                                       std::vector<Coord> const& q,
                                       SemigroupPtr const&       a);

  // Coordinates where some vector of the point is nonzero.
  std::vector<Coord> support_union(std::vector<FinSuppVector> const& a_part);

  // For an equation whose words are both longer than the number of support
  // coordinates, every projection of both sides is zero.
  struct LongTermCheck {
    EquationRef ref;
    std::size_t lhs_length = 0;
    std::size_t rhs_length = 0;
    bool        shortcut_applies = false;
    bool        direct_both_zero = false;
    bool        direct_holds     = false;
  };

  LongTermCheck long_term_check(System const&      sys,
                                EquationRef const& ref,
                                WreathPoint const& pt,
                                std::size_t        support_size);

  struct PipelineResult {
    std::vector<AddTerm>  t_less;
    StarSubsystem         star;
    Coord                 beta = 0;
    std::vector<FinSuppVector> shifted;
    DoubledPoint          lifted;
    TermSets              terms;
    Discrimination        discrimination;
    Transported           transported;
    TransportCheck        transport_check;
    WreathPoint           result;
    std::vector<Coord>    support;
    bool                  star_holds  = false;
    bool                  e_fails     = false;
    std::vector<LongTermCheck> long_terms;
  };

  // (Pbf, P) must lie in V_C(S*) \ V_C(E) for S* built from T_<; the result
  // (Q, Q) lies in V_C(S) \ V_C(E).
  PipelineResult propagate_counterexample(ConsequenceInstance const& inst,
                                          WreathPoint const&         failing);

  struct BoxBounds {
    Coord window = 0;  // a-part supports inside [1, window]
    Coord max_b  = 0;  // b-part in [1, max_b]^n
  };

  struct BoundedResult {
    bool                       holds = true;
    std::optional<WreathPoint> counterexample;
    std::uint64_t              b_points_examined = 0;
    std::uint64_t              nodes             = 0;
  };

  // Node budget from WREATHLAB_BUDGET, default 10^7.
  std::uint64_t enumeration_budget();

  // Searches a point of V_C(sys) \ V_C(e) in the box, b-parts in
  // lexicographic order. Throws BudgetExceeded with a cardinality estimate.
  BoundedResult bounded_consequence_check(SemigroupPtr const&    a,
                                          System const&          sys,
                                          Equation const&        e,
                                          BoxBounds              bounds,
                                          std::uint64_t budget = enumeration_budget());

}  // namespace wreathlab

#endif  // WREATHLAB_QCOMPACT_HPP_
