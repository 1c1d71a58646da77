#ifndef WREATHLAB_TERMS_HPP_
#define WREATHLAB_TERMS_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wreathlab/vector.hpp"
#include "wreathlab/wreath.hpp"

namespace wreathlab {

  using Var = std::size_t;

  // A semigroup word x_{i_1} ... x_{i_k}, k >= 1.
  using Word = std::vector<Var>;

  // alpha_1 x_1 + ... + alpha_n x_n with alpha_i >= 0. The all-zero
  // coefficient vector is the adjoined zero term 0.
  struct AddTerm {
    std::vector<std::int64_t> coeffs;

    AddTerm() = default;
    explicit AddTerm(std::size_t n) : coeffs(n, 0) {}
    explicit AddTerm(std::vector<std::int64_t> c) : coeffs(std::move(c)) {}

    static AddTerm zero(std::size_t n) {
      return AddTerm(n);
    }
    static AddTerm variable(std::size_t n, Var v, std::int64_t k = 1) {
      AddTerm t(n);
      t.coeffs.at(v) = k;
      return t;
    }

    std::size_t arity() const noexcept {
      return coeffs.size();
    }
    bool         is_zero() const noexcept;
    std::int64_t length() const noexcept;

    AddTerm& operator+=(AddTerm const& other);

    auto operator<=>(AddTerm const&) const = default;
  };

  AddTerm operator+(AddTerm x, AddTerm const& y);

  std::int64_t evaluate(AddTerm const& t, std::span<Coord const> point);

  // The wreath part t_A: factor j is sigma_{prefix_j}(x_{i_j}) where prefix_j
  // is the formal sum of the letters before it.
  struct WreathTerm {
    struct Factor {
      AddTerm prefix;
      Var     var;
      bool    operator==(Factor const&) const = default;
    };
    std::vector<Factor> factors;
    bool                operator==(WreathTerm const&) const = default;
  };

  // A wreath term with every shift specialised to a constant.
  struct ShiftTerm {
    struct Factor {
      Coord offset;
      Var   var;
      bool  operator==(Factor const&) const = default;
    };
    std::vector<Factor> factors;
    bool                operator==(ShiftTerm const&) const = default;
  };

  // pi_b of a shift term: a product of doubly indexed variables x_{i, c}.
  struct ProjectionWord {
    std::vector<std::pair<Var, Coord>> letters;
    bool operator==(ProjectionWord const&) const = default;
  };

  struct Equation {
    Word lhs;
    Word rhs;
    bool operator==(Equation const&) const = default;
  };

  // constant + slope * i
  struct Exponent {
    std::int64_t constant = 0;
    std::int64_t slope    = 0;
    std::int64_t at(std::int64_t i) const noexcept {
      return constant + slope * i;
    }
    bool operator==(Exponent const&) const = default;
  };

  // (w)^{c + s i}; parsed schemas only use one-letter words, doubling
  // produces two-letter ones.
  struct Block {
    Word     word;
    Exponent exponent;
    bool     operator==(Block const&) const = default;
  };

  // A one-parameter family of equations  lhs(i) = rhs(i)  for i in
  // [first, last] (last absent: unbounded), each side a sequence of blocks.
  struct Schema {
    std::vector<Block>          lhs;
    std::vector<Block>          rhs;
    std::int64_t                first = 0;
    std::optional<std::int64_t> last;

    bool contains(std::int64_t i) const noexcept {
      return i >= first && (!last || i <= *last);
    }
    // Word lengths as affine functions of i.
    Exponent lhs_length() const noexcept;
    Exponent rhs_length() const noexcept;
    bool     strictly_increasing() const noexcept {
      return lhs_length().slope > 0 && rhs_length().slope > 0;
    }
    bool operator==(Schema const&) const = default;
  };

  // Finite equations plus schemas over the variables `vars`.
  struct System {
    std::vector<std::string> vars;
    std::vector<Equation>    equations;
    std::vector<Schema>      schemas;

    std::size_t arity() const noexcept {
      return vars.size();
    }
    bool is_finite() const noexcept {
      return schemas.empty();
    }
    bool operator==(System const&) const = default;
  };

  // Names one equation of a system: a finite equation, or an instance of a
  // schema.
  struct EquationRef {
    std::size_t                 source = 0;
    std::optional<std::int64_t> instance;

    bool is_instance() const noexcept {
      return instance.has_value();
    }
    auto operator<=>(EquationRef const&) const = default;
  };

  struct WreathPoint {
    std::vector<FinSuppVector> a_part;
    std::vector<Coord>         b_part;

    std::size_t arity() const noexcept {
      return b_part.size();
    }
    bool operator==(WreathPoint const&) const = default;
  };

  // Checks the word against an arity; throws UsageError / StructuralError.
  void check_word(Word const& w, std::size_t arity);

  std::pair<WreathTerm, AddTerm> decompose(Word const& w, std::size_t arity);
  AddTerm                        additive_part(Word const& w, std::size_t arity);
  std::pair<AddTerm, AddTerm> additive_part(Equation const& e, std::size_t arity);

  ShiftTerm specialize(WreathTerm const& t, std::span<Coord const> b_part);
  // Shortcut for specialize(decompose(w).first, b_part).
  ShiftTerm shift_term(Word const& w, std::span<Coord const> b_part);

  ProjectionWord projection(ShiftTerm const& t, Coord b, int start = 1);

  WreathElement eval_word(Word const& w, WreathPoint const& pt);
  FinSuppVector eval_shift_term(ShiftTerm const&               t,
                                std::span<FinSuppVector const> a_part);
  Element       eval_projection(ProjectionWord const&          pw,
                                std::span<FinSuppVector const> a_part);

  bool satisfies(Equation const& e, WreathPoint const& pt);
  bool satisfies_b_part(Equation const& e, std::span<Coord const> b_part);
  // The shift equation t_A(X,P) = s_A(X,P) at the point's b-part.
  bool satisfies_a_part(Equation const& e, WreathPoint const& pt);
  // Same check done projection by projection over the finite window
  // [start, max support + max offset] plus one coordinate beyond it.
  bool satisfies_a_part_projectionwise(Equation const& e, WreathPoint const& pt);

  // First coordinate where the two sides' A-parts differ, if any.
  std::optional<Coord> first_failing_projection(Equation const&    e,
                                                WreathPoint const& pt);

  Equation    instantiate_schema(Schema const& s, std::int64_t i);
  Equation    materialize(System const& sys, EquationRef const& ref);
  std::string describe(System const& sys, EquationRef const& ref);

  // x_i -> x'_i x''_i. Variables 0..n-1 become x'_i, n..2n-1 become x''_i.
  Word     double_word(Word const& w, std::size_t arity);
  Equation double_equation(Equation const& e, std::size_t arity);
  System   double_variables(System const& sys);

  std::string to_string(Word const& w, std::vector<std::string> const& vars);
  std::string to_string(AddTerm const& t, std::vector<std::string> const& vars);
  std::string to_string(Equation const&                 e,
                        std::vector<std::string> const& vars);

}  // namespace wreathlab

#endif  // WREATHLAB_TERMS_HPP_
