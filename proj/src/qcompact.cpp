#include "wreathlab/qcompact.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>

#include "wreathlab/error.hpp"

namespace wreathlab {

  namespace {

    void sort_terms(std::vector<AddTerm>& ts) {
      std::sort(ts.begin(), ts.end(), [](AddTerm const& x, AddTerm const& y) {
        auto const lx = x.length(), ly = y.length();
        return lx != ly ? lx < ly : x > y;
      });
    }

    std::vector<Coord> zeros_tail(std::vector<Coord> head, std::size_t n) {
      head.resize(head.size() + n, 0);
      return head;
    }

    std::string show(IntTuple const& v) {
      std::string s = "(";
      for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
      return s + ")";
    }

    bool is_zero_vector(FinSuppVector const& v) {
      return v.is_constant() && v.fill() == v.semigroup().zero();
    }

  }  // namespace

  ConsequenceInstance make_instance(SemigroupPtr a, System sys, Equation e) {
    check_word(e.lhs, sys.arity());
    check_word(e.rhs, sys.arity());
    ConsequenceInstance inst;
    inst.a        = std::move(a);
    inst.hat      = finite_equivalent_subsystem(sys);
    inst.system   = std::move(sys);
    inst.equation = std::move(e);
    return inst;
  }

  BPrecondition check_B_precondition(ConsequenceInstance const& inst) {
    auto const& b = inst.basis();
    if (!b.consistent) return {BStatus::inconsistent, std::nullopt};
    auto const [t, s] = additive_part(inst.equation, inst.system.arity());
    if (term_equiv(t, s, b)) return {BStatus::equivalent, std::nullopt};
    for (auto const& p : b.particular)
      if (evaluate(t, p) != evaluate(s, p)) return {BStatus::refuted, p};
    for (auto const& h : b.homogeneous)
      if (evaluate(t, h) != evaluate(s, h)) {
        IntTuple p = b.particular.front();
        for (std::size_t i = 0; i < p.size(); ++i) p[i] += h[i];
        return {BStatus::refuted, p};
      }
    throw InternalConsistencyError("terms differ in signature but on no generator");
  }

  std::vector<AddTerm> t_less_set(ConsequenceInstance const& inst) {
    auto const [t, s] = additive_part(inst.equation, inst.system.arity());
    if (!term_equiv(t, s, inst.basis()))
      throw PreconditionError("t_B(E) and s_B(E) are not equivalent modulo S_B");
    auto down = down_set(t, inst.basis());
    if (down != down_set(s, inst.basis()))
      throw InternalConsistencyError("down sets of equivalent terms differ");
    std::vector<AddTerm> out{AddTerm::zero(inst.system.arity())};
    out.insert(out.end(), down.begin(), down.end());
    return out;
  }

  StarSubsystem star_subsystem(ConsequenceInstance const& inst, std::size_t bound) {
    auto const&           sys = inst.system;
    std::set<EquationRef> keep(inst.hat.kept.begin(), inst.hat.kept.end());
    auto const            short_eq = [bound](Equation const& e) {
      return std::min(e.lhs.size(), e.rhs.size()) <= bound;
    };
    for (std::size_t k = 0; k < sys.equations.size(); ++k)
      if (short_eq(sys.equations[k])) keep.insert({k, std::nullopt});

    StarSubsystem out;
    auto const    b = static_cast<std::int64_t>(bound);
    for (std::size_t k = 0; k < sys.schemas.size(); ++k) {
      auto const& sc = sys.schemas[k];
      if (!sc.strictly_increasing())
        throw UnsupportedError("schema " + std::to_string(k + 1) +
                               " does not have strictly increasing word lengths");
      auto i = sc.first;
      for (; sc.contains(i); ++i) {
        if (std::min(sc.lhs_length().at(i), sc.rhs_length().at(i)) > b) break;
        keep.insert({k, i});
      }
      for (int taken = 0; taken < 3 && sc.contains(i); ++i)
        if (!keep.contains({k, i})) {
          out.excluded_sample.push_back({k, i});
          ++taken;
        }
    }
    out.refs.assign(keep.begin(), keep.end());
    std::stable_sort(out.refs.begin(), out.refs.end(), [](auto const& x, auto const& y) {
      return x.is_instance() < y.is_instance();
    });
    out.star.vars = sys.vars;
    for (auto const& r : out.refs) out.star.equations.push_back(materialize(sys, r));
    return out;
  }

  std::vector<FinSuppVector> shift_to_first(std::vector<FinSuppVector> const& a_part,
                                            Coord                             beta) {
    if (beta < 1) throw UsageError("projection index must be >= 1");
    std::vector<FinSuppVector> out;
    for (auto const& v : a_part) out.push_back(shift(v, beta - 1));
    return out;
  }

  DoubledPoint lift_to_doubled(SemigroupPtr const&               a1,
                               std::vector<FinSuppVector> const& r,
                               std::vector<Coord> const&         p,
                               System const&                     star,
                               Equation const&                   e) {
    auto const   n = r.size();
    DoubledPoint out{a1, {}};
    for (auto const& v : r) out.point.a_part.push_back(reindex(rebase(v, a1)));
    for (std::size_t i = 0; i < n; ++i)
      out.point.a_part.push_back(FinSuppVector::ones(a1, 0));
    out.point.b_part = zeros_tail(p, n);

    for (auto const& eq : star.equations) {
      auto const d = double_equation(eq, n);
      if (!satisfies_b_part(d, out.point.b_part))
        throw InternalConsistencyError("(P,0) violates the doubled B-part of " +
                                       to_string(eq, star.vars));
      if (!satisfies_a_part(d, out.point))
        throw InternalConsistencyError("lifted point violates the doubled A-part of " +
                                       to_string(eq, star.vars));
    }
    auto const de  = double_equation(e, n);
    auto const lhs = eval_shift_term(shift_term(de.lhs, out.point.b_part), out.point.a_part);
    auto const rhs = eval_shift_term(shift_term(de.rhs, out.point.b_part), out.point.a_part);
    if (lhs[0] == rhs[0])
      throw InternalConsistencyError("projection 0 of the doubled equation holds");
    return out;
  }

  TermSets t_star_and_T(System const&               star,
                        SolutionBasis const&        basis,
                        std::vector<AddTerm> const& t_less) {
    auto const        n = star.arity();
    std::set<AddTerm> ts;
    for (auto const& eq : star.equations) {
      auto const [t, s] = additive_part(eq, n);
      for (auto& d : down_set(t, basis)) ts.insert(std::move(d));
      ts.insert(t);
      ts.insert(s);
    }
    for (auto const& eq : star.equations)
      for (auto const* w : {&eq.lhs, &eq.rhs}) {
        AddTerm prefix(n);
        for (Var v : *w) {
          prefix.coeffs[v] += 1;
          if (!ts.contains(prefix))
            throw InternalConsistencyError("prefix " + to_string(prefix, star.vars) +
                                           " of " + to_string(eq, star.vars) +
                                           " missing from T_*");
        }
      }
    TermSets out;
    out.t_star.assign(ts.begin(), ts.end());
    std::set<AddTerm> full(t_less.begin(), t_less.end());
    for (auto const& t : t_less)
      for (auto const& s : out.t_star) full.insert(t + s);
    out.t_full.assign(full.begin(), full.end());
    sort_terms(out.t_star);
    sort_terms(out.t_full);
    return out;
  }

  namespace {

    std::map<Coord, Coord> index_map(std::vector<AddTerm> const& terms,
                                     std::vector<Coord> const&   p,
                                     std::vector<Coord> const&   q) {
      std::map<Coord, Coord> index;
      for (auto const& s : terms) {
        auto const bq    = evaluate(s, q);
        auto const cp    = evaluate(s, p);
        auto [it, fresh] = index.emplace(bq, cp);
        if (!fresh && it->second != cp)
          throw InternalConsistencyError("transport is not well defined at coordinate " +
                                         std::to_string(bq));
      }
      return index;
    }

  }  // namespace

  Transported transport_points(DoubledPoint const&         lifted,
                               std::vector<Coord> const&   p,
                               std::vector<Coord> const&   q,
                               std::vector<AddTerm> const& t_less,
                               AddTerm const&              top) {
    auto with_top = t_less;
    with_top.push_back(top);
    auto const  index     = index_map(t_less, p, q);
    auto const  index_top = index_map(with_top, p, q);
    Transported out;
    out.index_map.assign(index.begin(), index.end());
    out.index_map_top.assign(index_top.begin(), index_top.end());
    auto const n    = p.size();
    auto const zero = lifted.a1->zero();
    auto       move = [&](FinSuppVector const& src, std::map<Coord, Coord> const& idx) {
      std::vector<FinSuppVector::Entry> entries;
      for (auto const& [bq, cp] : idx) {
        auto const v = src[cp];
        if (v != zero) entries.emplace_back(bq, v);
      }
      return FinSuppVector(lifted.a1, 0, zero, std::move(entries));
    };
    for (std::size_t i = 0; i < n; ++i) {
      out.q1.push_back(move(lifted.point.a_part[i], index));
      out.q2.push_back(move(lifted.point.a_part[n + i], index_top));
    }
    return out;
  }

  TransportCheck verify_transport(Transported const&        tr,
                                  std::vector<Coord> const& q,
                                  System const&             star,
                                  Equation const&           e) {
    auto const  n = q.size();
    WreathPoint pt;
    pt.a_part = tr.q1;
    pt.a_part.insert(pt.a_part.end(), tr.q2.begin(), tr.q2.end());
    pt.b_part = zeros_tail(q, n);
    TransportCheck out;
    out.star_b_holds = out.star_a_holds = true;
    for (auto const& eq : star.equations) {
      auto const d = double_equation(eq, n);
      out.star_b_holds = out.star_b_holds && satisfies_b_part(d, pt.b_part);
      out.star_a_holds = out.star_a_holds && satisfies_a_part(d, pt);
    }
    auto const de  = double_equation(e, n);
    auto const lhs = eval_shift_term(shift_term(de.lhs, pt.b_part), pt.a_part);
    auto const rhs = eval_shift_term(shift_term(de.rhs, pt.b_part), pt.a_part);
    out.projection0_fails = lhs[0] != rhs[0];
    return out;
  }

  std::vector<FinSuppVector> recombine(Transported const&        tr,
                                       std::vector<Coord> const& q,
                                       SemigroupPtr const&       a) {
    std::vector<FinSuppVector> out;
    for (std::size_t i = 0; i < q.size(); ++i) {
      auto const w    = reindex(pointwise_mul(tr.q1[i], shift(tr.q2[i], q[i])));
      auto const unit = w.semigroup().unit();
      bool       bad  = w.fill() == unit;
      for (auto const& [c, x] : w.entries()) bad = bad || x == unit;
      if (bad)
        throw InternalConsistencyError("recombined vector " + std::to_string(i + 1) +
                                       " contains the adjoined unit");
      out.push_back(rebase(w, a));
    }
    return out;
  }

  std::vector<Coord> support_union(std::vector<FinSuppVector> const& a_part) {
    std::set<Coord> coords;
    for (auto const& v : a_part) {
      auto const zero = v.semigroup().zero();
      if (v.fill() != zero) throw UsageError("vector is not finitely supported");
      for (auto const& [c, x] : v.entries())
        if (x != zero) coords.insert(c);
    }
    return {coords.begin(), coords.end()};
  }

  LongTermCheck long_term_check(System const&      sys,
                                EquationRef const& ref,
                                WreathPoint const& pt,
                                std::size_t        support_size) {
    auto const    eq = materialize(sys, ref);
    LongTermCheck out;
    out.ref              = ref;
    out.lhs_length       = eq.lhs.size();
    out.rhs_length       = eq.rhs.size();
    out.shortcut_applies = std::min(out.lhs_length, out.rhs_length) > support_size;
    auto const lhs = eval_shift_term(shift_term(eq.lhs, pt.b_part), pt.a_part);
    auto const rhs = eval_shift_term(shift_term(eq.rhs, pt.b_part), pt.a_part);
    out.direct_both_zero = is_zero_vector(lhs) && is_zero_vector(rhs);
    out.direct_holds     = satisfies(eq, pt);
    return out;
  }

  PipelineResult propagate_counterexample(ConsequenceInstance const& inst,
                                          WreathPoint const&         failing) {
    auto const& sys = inst.system;
    auto const& e   = inst.equation;
    auto const  n   = sys.arity();
    if (failing.arity() != n || failing.a_part.size() != n)
      throw UsageError("failing point has arity " + std::to_string(failing.arity()) +
                       ", system has " + std::to_string(n));
    for (auto const& v : failing.a_part)
      if (v.start() != 1 || !(v.semigroup() == *inst.a))
        throw UsageError("failing point must live in A wr B");

    auto const pre = check_B_precondition(inst);
    if (pre.status == BStatus::inconsistent)
      throw PreconditionError("S_B is inconsistent; V_C(S) is empty");
    if (pre.status == BStatus::refuted)
      throw PreconditionError("E_B is not a consequence of S_B; fails at " +
                              show(*pre.witness));

    PipelineResult out;
    out.t_less = t_less_set(inst);
    out.star   = star_subsystem(inst, out.t_less.size());
    auto const& star = out.star.star;
    for (std::size_t k = 0; k < star.equations.size(); ++k)
      if (!satisfies(star.equations[k], failing))
        throw PreconditionError("point violates " + describe(sys, out.star.refs[k]));
    if (satisfies(e, failing)) throw PreconditionError("point satisfies E");

    auto const& p = failing.b_part;
    if (!satisfies_b_part(e, p))
      throw InternalConsistencyError("E_B fails on a solution of S*_B");
    auto const beta = first_failing_projection(e, failing);
    if (!beta) throw InternalConsistencyError("no failing projection of E_A");
    out.beta    = *beta;
    out.shifted = shift_to_first(failing.a_part, out.beta);
    {
      WreathPoint const r{out.shifted, p};
      for (auto const& eq : star.equations)
        if (!satisfies(eq, r))
          throw InternalConsistencyError("shifted point violates " + to_string(eq, sys.vars));
      if (first_failing_projection(e, r) != Coord{1})
        throw InternalConsistencyError("shifted point does not fail projection 1 of E");
    }

    auto const a1 = std::make_shared<FiniteSemigroup const>(adjoin_unit(*inst.a));
    out.lifted         = lift_to_doubled(a1, out.shifted, p, star, e);
    out.terms          = t_star_and_T(star, inst.basis(), out.t_less);
    out.discrimination = discriminating_point(out.terms.t_full, inst.basis());
    auto const& q      = out.discrimination.point;
    out.transported    = transport_points(out.lifted, p, q, out.t_less,
                                          additive_part(e.lhs, n));
    out.transport_check = verify_transport(out.transported, q, star, e);
    if (!out.transport_check.ok())
      throw InternalConsistencyError("transported point fails the doubled system checks");

    out.result.a_part = recombine(out.transported, q, inst.a);
    out.result.b_part = q;
    out.star_holds    = std::all_of(star.equations.begin(), star.equations.end(),
                                    [&](Equation const& eq) { return satisfies(eq, out.result); });
    out.e_fails       = !satisfies(e, out.result);
    if (!out.star_holds) throw InternalConsistencyError("(Q,Q) violates S*");
    if (!out.e_fails || first_failing_projection(e, out.result) != Coord{1})
      throw InternalConsistencyError("(Q,Q) does not fail projection 1 of E");

    out.support = support_union(out.result.a_part);
    if (out.support.size() > out.t_less.size())
      throw InternalConsistencyError("support of Q exceeds |T_<|");
    std::set<EquationRef> in_star(out.star.refs.begin(), out.star.refs.end());
    std::vector<EquationRef> beyond;
    for (std::size_t k = 0; k < sys.equations.size(); ++k)
      if (!in_star.contains({k, std::nullopt})) beyond.push_back({k, std::nullopt});
    beyond.insert(beyond.end(), out.star.excluded_sample.begin(),
                  out.star.excluded_sample.end());
    for (auto const& r : beyond) {
      auto chk = long_term_check(sys, r, out.result, out.support.size());
      if (!chk.shortcut_applies || !chk.direct_both_zero || !chk.direct_holds)
        throw InternalConsistencyError("long-term argument fails for " + describe(sys, r));
      out.long_terms.push_back(chk);
    }
    return out;
  }

  std::uint64_t enumeration_budget() {
    constexpr std::uint64_t fallback = 10'000'000;
    char const*             env      = std::getenv("WREATHLAB_BUDGET");
    if (!env || !*env) return fallback;
    char*      end = nullptr;
    auto const v   = std::strtoull(env, &end, 10);
    if (*end != '\0' || v == 0)
      throw UsageError(std::string("WREATHLAB_BUDGET is not a positive integer: ") + env);
    return v;
  }

  namespace {

    using Letter = std::pair<Var, Coord>;

    // One side of pi_b: a product of letters, or the constant zero when a
    // letter falls outside the window.
    struct Side {
      bool                zero = false;
      std::vector<Letter> letters;
    };

    struct Constraint {
      Side lhs, rhs;
    };

    Side side_at(Word const& w, std::vector<Coord> const& p, Coord b, Coord window) {
      Side s;
      for (auto const& l : projection(shift_term(w, p), b).letters) {
        if (l.second > window) {
          s.zero = true;
          s.letters.clear();
          return s;
        }
        s.letters.push_back(l);
      }
      return s;
    }

    std::vector<Constraint> constraints_of(Equation const& e, std::vector<Coord> const& p,
                                           Coord window) {
      std::vector<Constraint> out;
      for (Coord b = 1; b <= window; ++b) {
        Constraint c{side_at(e.lhs, p, b, window), side_at(e.rhs, p, b, window)};
        if (c.lhs.zero && c.rhs.zero) continue;
        out.push_back(std::move(c));
      }
      return out;
    }

    struct Search {
      FiniteSemigroup const&        a;
      std::vector<Letter>           order;
      std::map<Letter, std::size_t> slot;
      // constraints grouped by the depth at which they become decided
      std::vector<std::vector<std::pair<Constraint const*, bool>>> at_depth;
      std::vector<Element> values;
      std::vector<Element> assigned;
      std::uint64_t&       nodes;
      std::uint64_t        budget;
      double               estimate;

      Element eval(Side const& s) const {
        if (s.zero) return a.zero();
        Element acc = assigned[slot.at(s.letters.front())];
        for (std::size_t j = 1; j < s.letters.size(); ++j)
          acc = a.mul(acc, assigned[slot.at(s.letters[j])]);
        return acc;
      }

      bool run(std::size_t d) {
        if (d == order.size()) return true;
        for (auto v : values) {
          if (++nodes > budget)
            throw BudgetExceeded("bounded check exceeded the node budget of " +
                                     std::to_string(budget),
                                 estimate);
          assigned[d] = v;
          bool ok     = true;
          for (auto const& [c, must_differ] : at_depth[d])
            if ((eval(c->lhs) != eval(c->rhs)) != must_differ) {
              ok = false;
              break;
            }
          if (ok && run(d + 1)) return true;
        }
        return false;
      }
    };

  }  // namespace

  BoundedResult bounded_consequence_check(SemigroupPtr const& a_ptr,
                                          System const&       sys,
                                          Equation const&     e,
                                          BoxBounds           bounds,
                                          std::uint64_t       budget) {
    if (!sys.is_finite())
      throw UsageError("bounded check needs a finite system; expand schemas first");
    auto const& a = *a_ptr;
    auto const  n = sys.arity();
    check_word(e.lhs, n);
    check_word(e.rhs, n);
    if (bounds.window < 1 || bounds.max_b < 1)
      throw UsageError("bounds W and M must be positive");

    auto const b_points = std::pow(static_cast<double>(bounds.max_b), static_cast<double>(n));
    auto const estimate =
        b_points * std::pow(static_cast<double>(a.size()),
                            static_cast<double>(n) * static_cast<double>(bounds.window));
    if (b_points > static_cast<double>(budget))
      throw BudgetExceeded("box has " + std::to_string(static_cast<std::uint64_t>(b_points)) +
                               " b-parts, over the budget of " + std::to_string(budget),
                           estimate);

    std::vector<Element> values{a.zero()};
    for (Element x = 0; x < a.size(); ++x)
      if (x != a.zero()) values.push_back(x);

    BoundedResult      out;
    std::vector<Coord> p(n, 1);
    auto const         zero_point = [&](std::vector<Coord> const& b) {
      WreathPoint pt;
      for (std::size_t i = 0; i < n; ++i) pt.a_part.push_back(FinSuppVector::zeros(a_ptr, 1));
      pt.b_part = b;
      return pt;
    };

    for (bool more = true; more;) {
      bool b_ok = std::all_of(sys.equations.begin(), sys.equations.end(),
                              [&](Equation const& eq) { return satisfies_b_part(eq, p); });
      if (b_ok) {
        ++out.b_points_examined;
        if (!satisfies_b_part(e, p)) {
          out.holds          = false;
          out.counterexample = zero_point(p);
          return out;
        }
        std::vector<Constraint> sys_cs;
        for (auto const& eq : sys.equations)
          for (auto& c : constraints_of(eq, p, bounds.window)) sys_cs.push_back(std::move(c));
        auto const e_cs = constraints_of(e, p, bounds.window);

        for (auto const& target : e_cs) {
          Search s{a, {}, {}, {}, values, {}, out.nodes, budget, estimate};
          auto   place = [&](Letter const& l) {
            if (s.slot.emplace(l, s.order.size()).second) s.order.push_back(l);
          };
          for (auto const* side : {&target.lhs, &target.rhs})
            for (auto const& l : side->letters) place(l);
          // greedily add the letter that closes most constraints
          std::set<Letter> pending;
          for (auto const& c : sys_cs)
            for (auto const* side : {&c.lhs, &c.rhs})
              for (auto const& l : side->letters)
                if (!s.slot.contains(l)) pending.insert(l);
          while (!pending.empty()) {
            Letter best  = *pending.begin();
            int    score = -1;
            for (auto const& l : pending) {
              int sc = 0;
              for (auto const& c : sys_cs) {
                bool has = false, other = false;
                for (auto const* side : {&c.lhs, &c.rhs})
                  for (auto const& m : side->letters) {
                    if (m == l) has = true;
                    else if (s.slot.contains(m)) other = true;
                  }
                if (has && other) ++sc;
              }
              if (sc > score) {
                score = sc;
                best  = l;
              }
            }
            place(best);
            pending.erase(best);
          }
          s.at_depth.assign(s.order.size(), {});
          s.assigned.assign(s.order.size(), a.zero());
          auto const depth = [&](Constraint const& c) {
            std::size_t d = 0;
            for (auto const* side : {&c.lhs, &c.rhs})
              for (auto const& l : side->letters) d = std::max(d, s.slot.at(l));
            return d;
          };
          s.at_depth[depth(target)].emplace_back(&target, true);
          for (auto const& c : sys_cs) s.at_depth[depth(c)].emplace_back(&c, false);

          if (!s.run(0)) continue;
          WreathPoint pt;
          for (std::size_t i = 0; i < n; ++i) {
            std::vector<FinSuppVector::Entry> entries;
            for (std::size_t k = 0; k < s.order.size(); ++k)
              if (s.order[k].first == i && s.assigned[k] != a.zero())
                entries.emplace_back(s.order[k].second, s.assigned[k]);
            pt.a_part.emplace_back(a_ptr, 1, a.zero(), std::move(entries));
          }
          pt.b_part = p;
          bool const sound =
              !satisfies(e, pt) &&
              std::all_of(sys.equations.begin(), sys.equations.end(),
                          [&](Equation const& eq) { return satisfies(eq, pt); });
          if (!sound)
            throw InternalConsistencyError("bounded search produced an invalid counterexample");
          out.holds          = false;
          out.counterexample = std::move(pt);
          return out;
        }
      }
      more = false;
      for (std::size_t i = n; i-- > 0;) {
        if (p[i] < bounds.max_b) {
          ++p[i];
          more = true;
          break;
        }
        p[i] = 1;
      }
    }
    return out;
  }

}  // namespace wreathlab
