#include "wreathlab/vector.hpp"

#include <algorithm>
#include <string>

#include "wreathlab/error.hpp"
#include "wreathlab/wreath.hpp"

namespace wreathlab {

  FinSuppVector::FinSuppVector(SemigroupPtr       base,
                               int                start,
                               Element            fill,
                               std::vector<Entry> entries)
      : base_(std::move(base)),
        start_(start),
        fill_(fill),
        entries_(std::move(entries)) {
    if (!base_) {
      throw UsageError("vector without a base semigroup");
    }
    if (start_ != 0 && start_ != 1) {
      throw UsageError("start index must be 0 or 1");
    }
    if (fill_ >= base_->size()) {
      throw StructuralError("fill is not an element of the base");
    }
    std::sort(entries_.begin(),
              entries_.end(),
              [](Entry const& x, Entry const& y) { return x.first < y.first; });
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].first < start_) {
        throw UsageError("coordinate " + std::to_string(entries_[i].first)
                         + " below start index "
                         + std::to_string(start_));
      }
      if (entries_[i].second >= base_->size()) {
        throw StructuralError("entry is not an element of the base");
      }
      if (i > 0 && entries_[i].first == entries_[i - 1].first) {
        throw UsageError("coordinate "
                         + std::to_string(entries_[i].first)
                         + " given twice");
      }
    }
    std::erase_if(entries_, [this](Entry const& e) { return e.second == fill_; });
  }

  FinSuppVector
  FinSuppVector::constant(SemigroupPtr base, int start, Element value) {
    return FinSuppVector(std::move(base), start, value);
  }

  FinSuppVector FinSuppVector::zeros(SemigroupPtr base, int start) {
    Element const z = base->zero();
    return FinSuppVector(std::move(base), start, z);
  }

  FinSuppVector FinSuppVector::ones(SemigroupPtr base, int start) {
    Element const u = base->unit();
    return FinSuppVector(std::move(base), start, u);
  }

  Element FinSuppVector::operator[](Coord c) const {
    if (c < start_) {
      throw UsageError("coordinate " + std::to_string(c)
                       + " below start index " + std::to_string(start_));
    }
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), c, [](Entry const& e, Coord x) {
          return e.first < x;
        });
    return it != entries_.end() && it->first == c ? it->second : fill_;
  }

  Coord FinSuppVector::last_coordinate() const noexcept {
    return entries_.empty() ? start_ - 1 : entries_.back().first;
  }

  std::size_t FinSuppVector::nonzero_count() const {
    if (fill_ != base_->zero()) {
      throw UsageError("vector is not eventually zero");
    }
    return entries_.size();
  }

  bool same_base(FinSuppVector const& x, FinSuppVector const& y) {
    return x.base() == y.base() || x.semigroup() == y.semigroup();
  }

  bool operator==(FinSuppVector const& x, FinSuppVector const& y) {
    return x.start_ == y.start_ && x.fill_ == y.fill_
           && x.entries_ == y.entries_ && same_base(x, y);
  }

  FinSuppVector shift(FinSuppVector const& v, Coord b) {
    if (b < 0) {
      throw UsageError("negative shift");
    }
    std::vector<FinSuppVector::Entry> out;
    out.reserve(v.entries().size());
    for (auto const& [c, x] : v.entries()) {
      if (c - b >= v.start()) {
        out.emplace_back(c - b, x);
      }
    }
    return FinSuppVector(v.base(), v.start(), v.fill(), std::move(out));
  }

  FinSuppVector pointwise_mul(FinSuppVector const& x, FinSuppVector const& y) {
    if (x.start() != y.start()) {
      throw UsageError("pointwise product of vectors with different start "
                       "indices");
    }
    if (!same_base(x, y)) {
      throw UsageError("pointwise product over different semigroups");
    }
    auto const&                       s  = x.semigroup();
    auto const&                       ex = x.entries();
    auto const&                       ey = y.entries();
    std::vector<FinSuppVector::Entry> out;
    out.reserve(ex.size() + ey.size());
    std::size_t i = 0, j = 0;
    while (i < ex.size() || j < ey.size()) {
      Coord c;
      if (j == ey.size() || (i < ex.size() && ex[i].first < ey[j].first)) {
        c = ex[i].first;
        out.emplace_back(c, s.mul(ex[i].second, y.fill()));
        ++i;
      } else if (i == ex.size() || ey[j].first < ex[i].first) {
        c = ey[j].first;
        out.emplace_back(c, s.mul(x.fill(), ey[j].second));
        ++j;
      } else {
        c = ex[i].first;
        out.emplace_back(c, s.mul(ex[i].second, ey[j].second));
        ++i;
        ++j;
      }
    }
    return FinSuppVector(
        x.base(), x.start(), s.mul(x.fill(), y.fill()), std::move(out));
  }

  FinSuppVector reindex(FinSuppVector const& v) {
    Coord const                       delta = v.start() == 1 ? -1 : 1;
    std::vector<FinSuppVector::Entry> out;
    out.reserve(v.entries().size());
    for (auto const& [c, x] : v.entries()) {
      out.emplace_back(c + delta, x);
    }
    return FinSuppVector(v.base(), 1 - v.start(), v.fill(), std::move(out));
  }

  Element project(FinSuppVector const& v, Coord b) {
    return v[b];
  }

  FinSuppVector rebase(FinSuppVector const& v, SemigroupPtr base) {
    return FinSuppVector(std::move(base), v.start(), v.fill(), v.entries());
  }

  WreathElement::WreathElement(FinSuppVector vector, Coord b)
      : vector_(std::move(vector)), b_(b) {
    if (b_ < vector_.start()) {
      throw UsageError(vector_.start() == 1
                           ? "B-component must be positive in A wr B"
                           : "B-component must be nonnegative");
    }
  }

  WreathElement wreath_mul(WreathElement const& x, WreathElement const& y) {
    if (x.variant() != y.variant()) {
      throw UsageError("wreath product of elements of different variants");
    }
    return WreathElement(pointwise_mul(x.vector(), shift(y.vector(), x.b())),
                         x.b() + y.b());
  }

}  // namespace wreathlab
