#include "wreathlab/additive.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "wreathlab/error.hpp"

namespace wreathlab {

  namespace {

    // shorter terms first, x1 before x2 within a length
    void sort_terms(std::vector<AddTerm>& ts) {
      std::sort(ts.begin(), ts.end(), [](AddTerm const& x, AddTerm const& y) {
        auto const lx = x.length(), ly = y.length();
        return lx != ly ? lx < ly : x > y;
      });
    }

    bool dominated(IntTuple const& w, std::vector<IntTuple> const& found) {
      return std::any_of(found.begin(), found.end(), [&](IntTuple const& b) {
        for (std::size_t i = 0; i < w.size(); ++i)
          if (b[i] > w[i]) return false;
        return true;
      });
    }

    std::int64_t dot(std::vector<std::int64_t> const& c, IntTuple const& v) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * v[i];
      return s;
    }

    void require_positive(SolutionBasis const& basis, char const* op) {
      if (!basis.consistent)
        throw PreconditionError(std::string(op) + ": system is inconsistent");
      if (basis.domain != Domain::positive)
        throw UnsupportedError(std::string(op) +
                               ": needs the positive domain (classes are "
                               "infinite over B_0)");
    }

    void check_arity(AddTerm const& t, SolutionBasis const& basis) {
      if (t.arity() != basis.arity)
        throw UsageError("term arity " + std::to_string(t.arity()) +
                         " does not match system arity " +
                         std::to_string(basis.arity));
    }

  }  // namespace

  IntMatrix LinSystem::coefficient_matrix() const {
    IntMatrix m(static_cast<Eigen::Index>(equations.size()),
                static_cast<Eigen::Index>(arity));
    for (std::size_t r = 0; r < equations.size(); ++r) {
      auto const& e = equations[r];
      if (e.lhs.arity() != arity || e.rhs.arity() != arity)
        throw UsageError("equation arity does not match system arity");
      for (std::size_t c = 0; c < arity; ++c)
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            e.lhs.coeffs[c] - e.rhs.coeffs[c];
    }
    return m;
  }

  LinSystem b_system(System const&                sys,
                     std::span<EquationRef const> refs,
                     Domain                       domain) {
    LinSystem out{sys.arity(), domain, {}};
    for (auto const& r : refs) {
      auto [l, s] = additive_part(materialize(sys, r), sys.arity());
      out.equations.push_back({std::move(l), std::move(s)});
    }
    return out;
  }

  IntTuple SolutionBasis::signature(AddTerm const& t) const {
    IntTuple sig;
    sig.reserve(particular.size() + homogeneous.size());
    for (auto const& p : particular) sig.push_back(dot(t.coeffs, p));
    for (auto const& h : homogeneous) sig.push_back(dot(t.coeffs, h));
    return sig;
  }

  IntMatrix SolutionBasis::generators() const {
    auto const rows = particular.size() + homogeneous.size();
    IntMatrix  g(static_cast<Eigen::Index>(rows),
                static_cast<Eigen::Index>(arity));
    Eigen::Index r = 0;
    for (auto const* set : {&particular, &homogeneous})
      for (auto const& v : *set) {
        for (std::size_t c = 0; c < arity; ++c)
          g(r, static_cast<Eigen::Index>(c)) = v[c];
        ++r;
      }
    return g;
  }

  // Contejean-Devie completion: grow a candidate along e_j only when
  // <m v, m e_j> < 0, and drop candidates dominated by a found solution.
  std::vector<IntTuple>
  minimal_solutions(IntMatrix const& m, std::optional<std::int64_t> const last_cap) {
    auto const k = static_cast<std::size_t>(m.cols());
    std::vector<IntTuple>         found;
    std::map<IntTuple, IntVector> frontier;
    for (std::size_t j = 0; j < k; ++j) {
      if (last_cap && j + 1 == k && *last_cap < 1) continue;
      IntTuple v(k, 0);
      v[j]        = 1;
      frontier[v] = m.col(static_cast<Eigen::Index>(j));
    }
    while (!frontier.empty()) {
      for (auto const& [v, mv] : frontier)
        if (mv.isZero()) found.push_back(v);
      std::map<IntTuple, IntVector> next;
      for (auto const& [v, mv] : frontier) {
        if (mv.isZero()) continue;
        for (std::size_t j = 0; j < k; ++j) {
          auto const col = m.col(static_cast<Eigen::Index>(j));
          if (mv.dot(col) >= 0) continue;
          IntTuple w = v;
          ++w[j];
          if (last_cap && j + 1 == k && w[j] > *last_cap) continue;
          if (next.contains(w) || dominated(w, found)) continue;
          next.emplace(std::move(w), mv + col);
        }
      }
      frontier = std::move(next);
    }
    std::sort(found.begin(), found.end());
    return found;
  }

  std::vector<IntTuple> hilbert_basis(LinSystem const& sys) {
    return minimal_solutions(sys.coefficient_matrix());
  }

  SolutionBasis solve(LinSystem const& sys) {
    SolutionBasis out;
    out.arity  = sys.arity;
    out.domain = sys.domain;
    auto const d = sys.coefficient_matrix();
    if (sys.domain == Domain::nonneg) {
      out.consistent = true;
      out.particular.push_back(IntTuple(sys.arity, 0));
      out.homogeneous = minimal_solutions(d);
      std::sort(out.homogeneous.begin(), out.homogeneous.end(), std::greater<>{});
      return out;
    }
    // x = y + 1 turns D x = 0 into D y + D 1 = 0; homogenise with z.
    auto const n = static_cast<Eigen::Index>(sys.arity);
    IntMatrix  m(d.rows(), n + 1);
    m.leftCols(n) = d;
    m.col(n)      = d.rowwise().sum();
    for (auto& v : minimal_solutions(m, 1)) {
      auto const z = v.back();
      v.pop_back();
      if (z == 0) {
        out.homogeneous.push_back(std::move(v));
      } else {
        for (auto& c : v) ++c;
        out.particular.push_back(std::move(v));
      }
    }
    std::sort(out.particular.begin(), out.particular.end());
    std::sort(out.homogeneous.begin(), out.homogeneous.end(), std::greater<>{});
    out.consistent = !out.particular.empty();
    return out;
  }

  bool is_consequence(SolutionBasis const& basis, LinEquation const& eq) {
    check_arity(eq.lhs, basis);
    check_arity(eq.rhs, basis);
    if (!basis.consistent) return true;
    return basis.signature(eq.lhs) == basis.signature(eq.rhs);
  }

  bool term_equiv(AddTerm const& t, AddTerm const& s, SolutionBasis const& basis) {
    return is_consequence(basis, {t, s});
  }

  void enumerate_bounded(
      SolutionBasis const&                                  basis,
      IntTuple const&                                       bound,
      std::function<bool(IntTuple const&, IntTuple const&)> visit) {
    auto const g    = basis.generators();
    auto const rows = static_cast<std::size_t>(g.rows());
    if (bound.size() != rows)
      throw UsageError("bound length does not match generator count");
    for (std::size_t j = 0; j < basis.arity; ++j)
      if (g.col(static_cast<Eigen::Index>(j)).maxCoeff() <= 0 && rows > 0)
        throw UnsupportedError("variable x" + std::to_string(j + 1) +
                               " is unbounded by every generator");
    if (rows == 0)
      throw UnsupportedError("no generators to bound the enumeration");

    IntTuple s(basis.arity, 0);
    IntTuple sums(rows, 0);
    bool     stop = false;
    auto     rec  = [&](auto&& self, std::size_t j) -> void {
      if (stop) return;
      if (j == basis.arity) {
        if (!visit(s, sums)) stop = true;
        return;
      }
      self(self, j + 1);
      auto const col = g.col(static_cast<Eigen::Index>(j));
      while (!stop) {
        bool fits = true;
        for (std::size_t r = 0; r < rows; ++r)
          if (sums[r] + col(static_cast<Eigen::Index>(r)) > bound[r]) fits = false;
        if (!fits) break;
        ++s[j];
        for (std::size_t r = 0; r < rows; ++r)
          sums[r] += col(static_cast<Eigen::Index>(r));
        self(self, j + 1);
      }
      for (std::size_t r = 0; r < rows; ++r)
        sums[r] -= s[j] * col(static_cast<Eigen::Index>(r));
      s[j] = 0;
    };
    rec(rec, 0);
  }

  std::vector<AddTerm> equiv_class(AddTerm const& t, SolutionBasis const& basis) {
    require_positive(basis, "equiv_class");
    check_arity(t, basis);
    auto const           target = basis.signature(t);
    std::vector<AddTerm> out;
    enumerate_bounded(basis, target, [&](IntTuple const& s, IntTuple const& sums) {
      if (sums == target) out.emplace_back(s);
      return true;
    });
    sort_terms(out);
    return out;
  }

  bool less_than(AddTerm const& s, AddTerm const& t, SolutionBasis const& basis) {
    require_positive(basis, "less_than");
    check_arity(s, basis);
    check_arity(t, basis);
    auto gap = basis.signature(t);
    auto ss  = basis.signature(s);
    for (std::size_t r = 0; r < gap.size(); ++r) {
      gap[r] -= ss[r];
      if (gap[r] < 0) return false;
    }
    // a nonzero s' is worth at least 1 on a positive particular solution
    if (gap.front() < 1) return false;
    bool hit = false;
    enumerate_bounded(basis, gap, [&](IntTuple const& v, IntTuple const& sums) {
      if (sums == gap && std::any_of(v.begin(), v.end(), [](auto c) { return c; }))
        hit = true;
      return !hit;
    });
    return hit;
  }

  std::vector<AddTerm> down_set(AddTerm const& t, SolutionBasis const& basis) {
    require_positive(basis, "down_set");
    check_arity(t, basis);
    std::vector<AddTerm> out;
    enumerate_bounded(basis, basis.signature(t), [&](IntTuple const& s, IntTuple const&) {
      AddTerm cand(s);
      if (!cand.is_zero() && less_than(cand, t, basis)) out.push_back(std::move(cand));
      return true;
    });
    sort_terms(out);
    return out;
  }

  std::vector<std::size_t>
  finite_equivalent_subsystem(std::span<LinEquation const> eqs,
                              std::size_t                  arity,
                              Domain                       domain) {
    LinSystem                acc{arity, domain, {}};
    auto                     basis = solve(acc);
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      if (is_consequence(basis, eqs[i])) continue;
      acc.equations.push_back(eqs[i]);
      kept.push_back(i);
      basis = solve(acc);
    }
    return kept;
  }

  FiniteSubsystem finite_equivalent_subsystem(System const& sys, Domain domain) {
    FiniteSubsystem out;
    LinSystem       acc{sys.arity(), domain, {}};
    out.basis     = solve(acc);
    auto consider = [&](EquationRef const& ref) {
      auto [l, r] = additive_part(materialize(sys, ref), sys.arity());
      LinEquation eq{std::move(l), std::move(r)};
      if (is_consequence(out.basis, eq)) return true;
      acc.equations.push_back(std::move(eq));
      out.kept.push_back(ref);
      out.basis = solve(acc);
      return false;
    };
    for (std::size_t i = 0; i < sys.equations.size(); ++i) consider({i, std::nullopt});
    for (std::size_t k = 0; k < sys.schemas.size(); ++k) {
      auto const& sc = sys.schemas[k];
      if (sc.lhs_length().slope < 0 || sc.rhs_length().slope < 0)
        throw UnsupportedError("schema " + std::to_string(k + 1) +
                               " has a decreasing side");
      std::int64_t i   = sc.first;
      int          run = 0;
      while (sc.contains(i) && run < 2) {
        run = consider({k, i}) ? run + 1 : 0;
        ++i;
      }
      out.scanned_until.push_back(i - 1);
    }
    return out;
  }

  namespace {

    struct Separator {
      std::vector<AddTerm const*> reps;     // one per class
      std::vector<std::size_t>    class_of; // per input term

      // index of a pair of classes colliding at q, if any
      std::optional<std::pair<std::size_t, std::size_t>>
      collision(IntTuple const& q) const {
        std::map<std::int64_t, std::size_t> seen;
        for (std::size_t c = 0; c < reps.size(); ++c) {
          std::int64_t v = 0;
          for (std::size_t i = 0; i < q.size(); ++i) {
            __int128 const prod = static_cast<__int128>(reps[c]->coeffs[i]) * q[i];
            __int128 const sum  = prod + v;
            if (sum > INT64_MAX || sum < INT64_MIN) return std::pair{c, c};
            v = static_cast<std::int64_t>(sum);
          }
          auto [it, fresh] = seen.emplace(v, c);
          if (!fresh) return std::pair{it->second, c};
        }
        return std::nullopt;
      }
    };

    // p + sum k_j h_j, or nullopt on overflow
    std::optional<IntTuple> combine(IntTuple const&              p,
                                    std::vector<IntTuple> const& hs,
                                    IntTuple const&              k) {
      IntTuple q = p;
      for (std::size_t j = 0; j < hs.size(); ++j)
        for (std::size_t i = 0; i < q.size(); ++i) {
          __int128 const v = static_cast<__int128>(q[i]) +
                             static_cast<__int128>(k[j]) * hs[j][i];
          if (v > INT64_MAX) return std::nullopt;
          q[i] = static_cast<std::int64_t>(v);
        }
      return q;
    }

    // Calls f on each composition of `total` into `parts` nonnegative parts
    // in ascending lexicographic order; stops when f returns true.
    bool compositions(std::size_t parts, std::int64_t total,
                      std::function<bool(IntTuple const&)> const& f) {
      IntTuple k(parts, 0);
      auto     rec = [&](auto&& self, std::size_t j, std::int64_t left) -> bool {
        if (j + 1 == parts) {
          k[j] = left;
          return f(k);
        }
        for (std::int64_t v = 0; v <= left; ++v) {
          k[j] = v;
          if (self(self, j + 1, left - v)) return true;
        }
        return false;
      };
      if (parts == 0) return total == 0 && f(k);
      return rec(rec, 0, total);
    }

  }  // namespace

  Discrimination discriminating_point(std::span<AddTerm const>     terms,
                                      SolutionBasis const&         basis,
                                      DiscriminationOptions const& opts) {
    require_positive(basis, "discriminating_point");
    Separator sep;
    {
      std::map<IntTuple, std::size_t> by_sig;
      for (auto const& t : terms) {
        check_arity(t, basis);
        auto [it, fresh] = by_sig.emplace(basis.signature(t), sep.reps.size());
        if (fresh) sep.reps.push_back(&t);
        sep.class_of.push_back(it->second);
      }
    }

    auto const& hs = basis.homogeneous;
    Discrimination out;
    std::optional<std::pair<std::size_t, std::size_t>> last_clash;
    auto try_point = [&](std::size_t pi, IntTuple const& k, char const* phase) {
      auto q = combine(basis.particular[pi], hs, k);
      if (!q) return false;
      last_clash = sep.collision(*q);
      if (last_clash) return false;
      out.point            = std::move(*q);
      out.particular_index = pi;
      out.multipliers      = k;
      out.phase            = phase;
      return true;
    };

    bool        done  = false;
    std::size_t tried = 0;
    for (std::int64_t total = 0; !done && tried < opts.exhaustive_limit; ++total) {
      for (std::size_t pi = 0; !done && pi < basis.particular.size(); ++pi)
        done = compositions(hs.size(), total, [&](IntTuple const& k) {
          return ++tried > opts.exhaustive_limit || try_point(pi, k, "exhaustive");
        }) && tried <= opts.exhaustive_limit;
      if (hs.empty()) break;
    }

    std::mt19937_64 rng(opts.seed);
    for (std::int64_t range = 2; !done && !hs.empty() && range <= opts.random_cap;
         range *= 2) {
      std::uniform_int_distribution<std::int64_t> coef(0, range);
      for (std::size_t trial = 0; !done && trial < opts.random_trials; ++trial) {
        IntTuple k(hs.size());
        for (auto& c : k) c = coef(rng);
        done = try_point(trial % basis.particular.size(), k, "random");
      }
    }

    for (std::int64_t base = 2; !done && !hs.empty() && base < 1024; ++base) {
      IntTuple k(hs.size());
      __int128 pw       = 1;
      bool     overflow = false;
      for (auto& c : k) {
        pw *= base;
        if (pw > INT64_MAX) overflow = true;
        c = overflow ? 0 : static_cast<std::int64_t>(pw);
      }
      if (overflow) break;
      done = try_point(0, k, "powers");
    }

    if (!done) {
      std::ostringstream msg;
      msg << "no discriminating point found within the search bounds";
      if (last_clash) {
        auto const [a, b] = *last_clash;
        msg << "; classes " << a << " and " << b << " stay unseparated";
      }
      throw BoundExhausted(msg.str());
    }

    out.classes     = sep.reps.size();
    out.class_index = sep.class_of;
    for (auto const& t : terms) out.values.push_back(evaluate(t, out.point));
    return out;
  }

}  // namespace wreathlab
