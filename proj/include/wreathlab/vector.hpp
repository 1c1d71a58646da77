#ifndef WREATHLAB_VECTOR_HPP_
#define WREATHLAB_VECTOR_HPP_

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "wreathlab/semigroup.hpp"

namespace wreathlab {

  using Coord = std::int64_t;

  // An element of A^B (start index 1) or A^{B_0} (start index 0) that equals
  // a fill element outside finitely many coordinates. Entries are kept sorted
  // by coordinate with no entry equal to the fill, so == is equality of
  // infinite vectors.
  class FinSuppVector {
   public:
    using Entry = std::pair<Coord, Element>;

    FinSuppVector(SemigroupPtr       base,
                  int                start,
                  Element            fill,
                  std::vector<Entry> entries = {});

    static FinSuppVector constant(SemigroupPtr base, int start, Element value);
    static FinSuppVector zeros(SemigroupPtr base, int start);
    // The all-ones vector; base must have a unit.
    static FinSuppVector ones(SemigroupPtr base, int start);

    SemigroupPtr const& base() const noexcept {
      return base_;
    }
    FiniteSemigroup const& semigroup() const noexcept {
      return *base_;
    }
    int start() const noexcept {
      return start_;
    }
    Element fill() const noexcept {
      return fill_;
    }
    std::vector<Entry> const& entries() const noexcept {
      return entries_;
    }

    // Value at coordinate c >= start().
    Element operator[](Coord c) const;

    bool is_constant() const noexcept {
      return entries_.empty();
    }
    // Largest coordinate carrying a non-fill value, or start() - 1.
    Coord last_coordinate() const noexcept;
    // Number of coordinates holding something other than zero; only finite
    // when fill() is zero.
    std::size_t nonzero_count() const;

    friend bool operator==(FinSuppVector const& x, FinSuppVector const& y);

   private:
    SemigroupPtr       base_;
    int                start_;
    Element            fill_;
    std::vector<Entry> entries_;
  };

  bool same_base(FinSuppVector const& x, FinSuppVector const& y);

  // Coordinate c of the result holds v[c + b].
  FinSuppVector shift(FinSuppVector const& v, Coord b);

  FinSuppVector pointwise_mul(FinSuppVector const& x, FinSuppVector const& y);

  // Moves between start index 1 and 0 by a_i = a'_{i-1}; an involution.
  FinSuppVector reindex(FinSuppVector const& v);

  Element project(FinSuppVector const& v, Coord b);

  // Reinterprets v over another base that shares element ids with v's base
  // for every element that occurs in v (A into A_1 and back).
  FinSuppVector rebase(FinSuppVector const& v, SemigroupPtr base);

}  // namespace wreathlab

#endif  // WREATHLAB_VECTOR_HPP_
