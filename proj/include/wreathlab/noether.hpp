#ifndef WREATHLAB_NOETHER_HPP_
#define WREATHLAB_NOETHER_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wreathlab/additive.hpp"
#include "wreathlab/semigroup.hpp"
#include "wreathlab/terms.hpp"

namespace wreathlab {

  struct NilpotencyReport {
    bool                       nilpotent = false;
    std::optional<std::size_t> index;
    // A sequence of probe_length elements with nonzero product, when A is
    // not nilpotent.
    std::optional<std::vector<Element>> witness;
    std::size_t                         probe_length = 0;
  };

  NilpotencyReport nilpotency_index(FiniteSemigroup const& a,
                                    std::size_t            probe_length = 6);

  // a_1 ... a_L != 0, or nullopt when every product of length L is zero.
  std::optional<std::vector<Element>>
  nonzero_product_witness(FiniteSemigroup const& a, std::size_t length);

  // x1 x2^i x3 = x4 x5^i x6, i >= 0.
  Schema theoremA_schema();
  // The schema as a system over x1..x6.
  System theoremA_system();
  // Its instances i = 0..n-1 as a finite system.
  System theoremA_truncation(std::size_t n);

  // Placement of p2 and p3 in the witness point: p2 holds a chain segment on
  // coordinates 1..segment_end, p3 one nonzero value at spike.
  struct WitnessLayout {
    Coord segment_end = 0;
    Coord spike       = 0;
  };

  struct WitnessPoint {
    WreathPoint                point;
    std::vector<Element>       chain;
    WitnessLayout              layout;
    std::vector<WitnessLayout> rejected;
  };

  // A point of C^6 satisfying instances 0..n-1 and violating instance n.
  // The layout is the first candidate that passes the evaluation check.
  WitnessPoint theoremA_witness_point(SemigroupPtr a, std::size_t n);

  struct NoetherianFailure {
    WitnessPoint      witness;
    std::vector<bool> instance_holds;  // instances 0..n-1
    bool              instance_n_fails = false;
    Coord             failing_coordinate = 0;
    Element           lhs_value = 0;  // projection of instance n's lhs there
    Element           rhs_value = 0;
    bool ok() const noexcept;
  };

  NoetherianFailure verify_noetherian_failure(SemigroupPtr a, std::size_t n);

  struct NilpotentReduction {
    System                   reduced;
    std::vector<EquationRef> origin;          // per reduced equation
    std::vector<bool>        wreath_trivial;  // both sides of length >= s
    FiniteSubsystem          b_subsystem;
  };

  // Keeps the equations with a side shorter than s and adds the equations
  // selected by finite_equivalent_subsystem. Refuses when some product of
  // length s in A is nonzero.
  NilpotentReduction nilpotent_reduce(FiniteSemigroup const& a,
                                      System const&          sys,
                                      std::size_t            s);

}  // namespace wreathlab

#endif  // WREATHLAB_NOETHER_HPP_
