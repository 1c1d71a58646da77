#ifndef WREATHLAB_SEMIGROUP_HPP_
#define WREATHLAB_SEMIGROUP_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace wreathlab {

  using Element = std::uint32_t;

  // A finite semigroup with a designated zero, given by its Cayley table.
  // Elements are the indices 0..size()-1; names are kept for I/O only.
  // The laws are not enforced on construction, see validate_semigroup.
  class FiniteSemigroup {
   public:
    FiniteSemigroup(std::string                   name,
                    std::vector<std::string>      elements,
                    Element                       zero,
                    std::vector<Element>          table,
                    std::optional<Element>        unit = std::nullopt);

    // Builds from element names; throws StructuralError on undeclared names
    // or a table of the wrong shape.
    static FiniteSemigroup
    from_names(std::string                                  name,
               std::vector<std::string>                     elements,
               std::string const&                           zero,
               std::vector<std::vector<std::string>> const& rows);

    std::string const& name() const noexcept {
      return name_;
    }
    std::size_t size() const noexcept {
      return names_.size();
    }
    Element zero() const noexcept {
      return zero_;
    }
    bool has_unit() const noexcept {
      return unit_.has_value();
    }
    Element unit() const;

    Element mul(Element x, Element y) const noexcept {
      return table_[x * names_.size() + y];
    }

    std::string const& element_name(Element x) const {
      return names_.at(x);
    }
    std::vector<std::string> const& element_names() const noexcept {
      return names_;
    }
    std::optional<Element> find(std::string const& name) const;
    Element                element(std::string const& name) const;

    std::vector<Element> const& table() const noexcept {
      return table_;
    }

    bool operator==(FiniteSemigroup const&) const = default;

   private:
    std::string              name_;
    std::vector<std::string> names_;
    Element                  zero_;
    std::vector<Element>     table_;
    std::optional<Element>   unit_;
  };

  using SemigroupPtr = std::shared_ptr<FiniteSemigroup const>;

  struct AssociativityViolation {
    Element x, y, z;
  };

  struct ZeroLawViolation {
    Element x;
    bool    left;  // true: zero*x != zero, false: x*zero != zero
  };

  struct UnitLawViolation {
    Element x;
    bool    left;
  };

  struct ValidationReport {
    std::vector<AssociativityViolation> associativity;
    std::vector<ZeroLawViolation>       zero_law;
    std::vector<UnitLawViolation>       unit_law;

    bool valid() const noexcept {
      return associativity.empty() && zero_law.empty() && unit_law.empty();
    }
  };

  ValidationReport validate_semigroup(FiniteSemigroup const& s);

  // Human readable description of the first few violations.
  std::string describe(FiniteSemigroup const& s, ValidationReport const& r);

  // A_1: A with a fresh identity adjoined. The old elements keep their ids
  // and the unit gets id s.size().
  FiniteSemigroup adjoin_unit(FiniteSemigroup const& s);

  // A few standard tables used by tests, docs and the bundled corpus.
  namespace examples {
    // {0, e} with e*e = e.
    FiniteSemigroup semilattice();
    // {0, a_1, ..., a_k} with every product zero.
    FiniteSemigroup null_semigroup(std::size_t nonzero = 2);
    // {0, a, a^2, ..., a^(s-1)} with a^s = 0; nilpotency index s.
    FiniteSemigroup monogenic_nilpotent(std::size_t s);
    // The cyclic group of order k with a zero adjoined.
    FiniteSemigroup cyclic_group_with_zero(std::size_t k);
    // Left-zero band {a, b} (xy = x) with a zero adjoined.
    FiniteSemigroup left_zero_band_with_zero();
  }  // namespace examples

}  // namespace wreathlab

#endif  // WREATHLAB_SEMIGROUP_HPP_
