#ifndef WREATHLAB_WREATH_HPP_
#define WREATHLAB_WREATH_HPP_

#include "wreathlab/vector.hpp"

namespace wreathlab {

  // C = A wr B has start index 1 and b >= 1; the monoid variants C_0 and
  // C_01 use start index 0 and b >= 0. A versus A_1 is carried by the base.
  enum class Variant { positive, monoid };

  inline int start_index(Variant v) noexcept {
    return v == Variant::positive ? 1 : 0;
  }

  class WreathElement {
   public:
    WreathElement(FinSuppVector vector, Coord b);

    FinSuppVector const& vector() const noexcept {
      return vector_;
    }
    Coord b() const noexcept {
      return b_;
    }
    Variant variant() const noexcept {
      return vector_.start() == 1 ? Variant::positive : Variant::monoid;
    }

    bool operator==(WreathElement const&) const = default;

   private:
    FinSuppVector vector_;
    Coord         b_;
  };

  // (a, b1)(a', b2) = (a . shift(a', b1), b1 + b2)
  WreathElement wreath_mul(WreathElement const& x, WreathElement const& y);

}  // namespace wreathlab

#endif  // WREATHLAB_WREATH_HPP_
