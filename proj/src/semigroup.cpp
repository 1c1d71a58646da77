#include "wreathlab/semigroup.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "wreathlab/error.hpp"

namespace wreathlab {

  FiniteSemigroup::FiniteSemigroup(std::string              name,
                                   std::vector<std::string> elements,
                                   Element                  zero,
                                   std::vector<Element>     table,
                                   std::optional<Element>   unit)
      : name_(std::move(name)),
        names_(std::move(elements)),
        zero_(zero),
        table_(std::move(table)),
        unit_(unit) {
    std::size_t const n = names_.size();
    if (n == 0) {
      throw StructuralError("a semigroup needs at least one element");
    }
    if (table_.size() != n * n) {
      throw StructuralError("table has " + std::to_string(table_.size())
                            + " entries, expected "
                            + std::to_string(n * n));
    }
    if (zero_ >= n) {
      throw StructuralError("zero is not a declared element");
    }
    if (unit_ && *unit_ >= n) {
      throw StructuralError("unit is not a declared element");
    }
    for (Element v : table_) {
      if (v >= n) {
        throw StructuralError("table refers to an undeclared element");
      }
    }
    std::vector<std::string> sorted = names_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw StructuralError("duplicate element name");
    }
  }

  FiniteSemigroup FiniteSemigroup::from_names(
      std::string                                  name,
      std::vector<std::string>                     elements,
      std::string const&                           zero,
      std::vector<std::vector<std::string>> const& rows) {
    auto index_of = [&elements](std::string const& x) -> Element {
      auto it = std::find(elements.begin(), elements.end(), x);
      if (it == elements.end()) {
        throw StructuralError("undeclared element '" + x + "'");
      }
      return static_cast<Element>(it - elements.begin());
    };
    Element const z = index_of(zero);
    if (rows.size() != elements.size()) {
      throw StructuralError("table has " + std::to_string(rows.size())
                            + " rows, expected "
                            + std::to_string(elements.size()));
    }
    std::vector<Element> table;
    table.reserve(elements.size() * elements.size());
    for (auto const& row : rows) {
      if (row.size() != elements.size()) {
        throw StructuralError("table row has " + std::to_string(row.size())
                              + " entries, expected "
                              + std::to_string(elements.size()));
      }
      for (auto const& x : row) {
        table.push_back(index_of(x));
      }
    }
    return FiniteSemigroup(
        std::move(name), std::move(elements), z, std::move(table));
  }

  Element FiniteSemigroup::unit() const {
    if (!unit_) {
      throw UsageError("semigroup '" + name_ + "' has no unit");
    }
    return *unit_;
  }

  std::optional<Element> FiniteSemigroup::find(std::string const& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
      return std::nullopt;
    }
    return static_cast<Element>(it - names_.begin());
  }

  Element FiniteSemigroup::element(std::string const& name) const {
    auto x = find(name);
    if (!x) {
      throw StructuralError("undeclared element '" + name + "'");
    }
    return *x;
  }

  ValidationReport validate_semigroup(FiniteSemigroup const& s) {
    ValidationReport r;
    auto const       n = static_cast<Element>(s.size());
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        Element const xy = s.mul(x, y);
        for (Element z = 0; z < n; ++z) {
          if (s.mul(xy, z) != s.mul(x, s.mul(y, z))) {
            r.associativity.push_back({x, y, z});
          }
        }
      }
    }
    for (Element x = 0; x < n; ++x) {
      if (s.mul(s.zero(), x) != s.zero()) {
        r.zero_law.push_back({x, true});
      }
      if (s.mul(x, s.zero()) != s.zero()) {
        r.zero_law.push_back({x, false});
      }
    }
    if (s.has_unit()) {
      for (Element x = 0; x < n; ++x) {
        if (s.mul(s.unit(), x) != x) {
          r.unit_law.push_back({x, true});
        }
        if (s.mul(x, s.unit()) != x) {
          r.unit_law.push_back({x, false});
        }
      }
    }
    return r;
  }

  std::string describe(FiniteSemigroup const& s, ValidationReport const& r) {
    std::ostringstream os;
    std::size_t        shown = 0;
    for (auto const& v : r.associativity) {
      if (shown++ == 3) {
        break;
      }
      os << "associativity fails for (" << s.element_name(v.x) << ", "
         << s.element_name(v.y) << ", " << s.element_name(v.z) << "); ";
    }
    for (auto const& v : r.zero_law) {
      os << "zero law fails at " << s.element_name(v.x)
         << (v.left ? " (left)" : " (right)") << "; ";
    }
    for (auto const& v : r.unit_law) {
      os << "unit law fails at " << s.element_name(v.x)
         << (v.left ? " (left)" : " (right)") << "; ";
    }
    std::string out = os.str();
    if (out.size() >= 2) {
      out.resize(out.size() - 2);
    }
    return out;
  }

  FiniteSemigroup adjoin_unit(FiniteSemigroup const& s) {
    std::size_t const        n     = s.size();
    std::vector<std::string> names = s.element_names();
    std::string              unit  = "1";
    while (s.find(unit)) {
      unit += "'";
    }
    names.push_back(unit);
    std::vector<Element> table((n + 1) * (n + 1));
    auto const           u = static_cast<Element>(n);
    for (Element x = 0; x <= u; ++x) {
      for (Element y = 0; y <= u; ++y) {
        Element v;
        if (x == u) {
          v = y;
        } else if (y == u) {
          v = x;
        } else {
          v = s.mul(x, y);
        }
        table[x * (n + 1) + y] = v;
      }
    }
    return FiniteSemigroup(
        s.name() + "^1", std::move(names), s.zero(), std::move(table), u);
  }

  namespace examples {

    FiniteSemigroup semilattice() {
      return FiniteSemigroup("semilattice", {"0", "e"}, 0, {0, 0, 0, 1});
    }

    FiniteSemigroup null_semigroup(std::size_t nonzero) {
      std::vector<std::string> names{"0"};
      for (std::size_t i = 1; i <= nonzero; ++i) {
        names.push_back(std::string(1, static_cast<char>('a' + i - 1)));
      }
      std::size_t const n = names.size();
      return FiniteSemigroup(
          "null", std::move(names), 0, std::vector<Element>(n * n, 0));
    }

    FiniteSemigroup monogenic_nilpotent(std::size_t s) {
      // element k (k >= 1) is a^k, element 0 is zero
      std::vector<std::string> names{"0"};
      for (std::size_t k = 1; k < s; ++k) {
        names.push_back(k == 1 ? "a" : "a" + std::to_string(k));
      }
      std::size_t const    n = names.size();
      std::vector<Element> table(n * n, 0);
      for (std::size_t x = 1; x < n; ++x) {
        for (std::size_t y = 1; y < n; ++y) {
          table[x * n + y] = x + y < s ? static_cast<Element>(x + y) : 0;
        }
      }
      return FiniteSemigroup(
          "monogenic" + std::to_string(s), std::move(names), 0, table);
    }

    FiniteSemigroup cyclic_group_with_zero(std::size_t k) {
      // element 0 is zero, element 1 + j is g^j
      std::vector<std::string> names{"0"};
      for (std::size_t j = 0; j < k; ++j) {
        names.push_back("g" + std::to_string(j));
      }
      std::size_t const    n = names.size();
      std::vector<Element> table(n * n, 0);
      for (std::size_t x = 1; x < n; ++x) {
        for (std::size_t y = 1; y < n; ++y) {
          table[x * n + y] = static_cast<Element>(1 + (x - 1 + y - 1) % k);
        }
      }
      return FiniteSemigroup(
          "cyclic" + std::to_string(k) + "_0", std::move(names), 0, table);
    }

    FiniteSemigroup left_zero_band_with_zero() {
      return FiniteSemigroup(
          "left_zero_band_0", {"0", "a", "b"}, 0, {0, 0, 0, 0, 1, 1, 0, 2, 2});
    }

  }  // namespace examples

}  // namespace wreathlab
