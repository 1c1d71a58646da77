// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"
#include "wreathlab/additive.hpp"
#include "wreathlab/io.hpp"
#include "wreathlab/noether.hpp"
#include "wreathlab/qcompact.hpp"

using namespace wreathlab;
using oracle::Tuple;

namespace {

  using Clock = std::chrono::steady_clock;

  double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
  }

  // Collects failed checks with a short reason.
  struct Tally {
    std::vector<std::string> failures;
    std::size_t              checks = 0;

    void expect(bool ok, std::string const& what) {
      ++checks;
      if (!ok && failures.size() < 5) failures.push_back(what);
      if (!ok && failures.size() == 5) failures.push_back("...");
    }
    bool ok() const {
      return failures.empty();
    }
  };

  SemigroupPtr const sl = oracle::share(examples::semilattice());

  void noetherian_failure(Tally& t) {
    for (std::size_t n = 1; n <= 5; ++n) {
      auto const t0 = Clock::now();
      auto const r  = verify_noetherian_failure(sl, n);
      double const dt = seconds_since(t0);
      auto const&  pt = r.witness.point;
      t.expect(r.ok(), "library verification n=" + std::to_string(n));
      for (std::size_t i = 0; i < n; ++i)
        t.expect(oracle::holds(instantiate_schema(theoremA_schema(), i), pt),
                 "instance " + std::to_string(i) + " fails at n=" + std::to_string(n));
      auto const e   = instantiate_schema(theoremA_schema(), n);
      auto const lhs = oracle::word_value(e.lhs, pt);
      auto const rhs = oracle::word_value(e.rhs, pt);
      t.expect(!oracle::equal(lhs, rhs), "instance n holds at n=" + std::to_string(n));
      t.expect(lhs.v.at(1) == sl->element("e") && rhs.v.at(1) == sl->zero(),
               "projection 1 is not (e, 0) at n=" + std::to_string(n));
      t.expect(dt < 1.0, "n=" + std::to_string(n) + " took " + std::to_string(dt) + " s");
    }
  }

  void noetherian_reduction(Tally& t) {
    auto const t0  = Clock::now();
    auto const m4  = oracle::share(examples::monogenic_nilpotent(4));
    auto const rep = nilpotency_index(*m4);
    t.expect(rep.nilpotent && rep.index == 4u, "monogenic table is not nilpotent of index 4");
    auto const red = nilpotent_reduce(*m4, theoremA_system(), *rep.index);
    t.expect(red.reduced.is_finite(), "reduced system has schemas");
    auto const first8 = theoremA_truncation(8);
    BoxBounds const box{3, 3};
    for (auto const& e : first8.equations)
      t.expect(bounded_consequence_check(m4, red.reduced, e, box).holds,
               "reduced system misses " + to_string(e, first8.vars));
    for (auto const& e : red.reduced.equations)
      t.expect(bounded_consequence_check(m4, first8, e, box).holds,
               "first 8 instances miss " + to_string(e, first8.vars));
    double const dt = seconds_since(t0);
    t.expect(dt < 30.0, "took " + std::to_string(dt) + " s");
  }

  void hilbert_engine(Tally& t) {
    auto const hb = hilbert_basis(
        {3, Domain::nonneg, {{AddTerm(std::vector<std::int64_t>{1, 1, 0}), AddTerm(std::vector<std::int64_t>{0, 0, 2})}}});
    t.expect(std::set<Tuple>(hb.begin(), hb.end()) == std::set<Tuple>{{1, 1, 1}, {2, 0, 1}, {0, 2, 1}},
             "basis of x1+x2=2x3");
    std::mt19937_64 rng(2024);
    for (int k = 0; k < 20; ++k) {
      std::size_t const n      = 1 + k % 4;
      Domain const      domain = k % 2 ? Domain::nonneg : Domain::positive;
      auto const        sys    = oracle::random_system(rng, n, 1 + k % 2, 3, domain);
      auto const        b      = solve(sys);
      for (std::int64_t m = 1; m <= 6; ++m)
        t.expect(oracle::generated_in_box(b, m) == oracle::box_solutions(sys, m),
                 "system " + std::to_string(k) + " differs in box " + std::to_string(m));
      std::set<Tuple> small;
      for (auto const& h : hilbert_basis(sys))
        if (*std::max_element(h.begin(), h.end()) <= 6) small.insert(h);
      t.expect(small == oracle::hilbert_in_box(sys, 6),
               "minimal solutions of system " + std::to_string(k));
    }
  }

  void order_machinery(Tally& t) {
    std::mt19937_64 rng(4242);
    int             systems = 0;
    while (systems < 50) {
      std::size_t const n   = 2 + systems % 2;
      auto const        sys = oracle::random_system(rng, n, 1, 2, Domain::positive);
      auto const        b   = solve(sys);
      if (!b.consistent) continue;
      // the box oracle is exact once it holds every p and p + h
      bool small = true;
      for (auto const& p : b.particular)
        for (auto const& h : b.homogeneous)
          for (std::size_t i = 0; i < n; ++i) small = small && p[i] + h[i] <= 7;
      if (!small) continue;
      ++systems;
      auto const sols = oracle::box_solutions(sys, 7);
      auto const tag  = "system " + std::to_string(systems);
      for (int k = 0; k < 8; ++k) {
        auto const s = oracle::random_term(rng, n, 2);
        auto const u = oracle::random_term(rng, n, 2);
        auto const v = oracle::random_term(rng, n, 3);
        for (auto const* x : {&s, &u, &v})
          for (auto const* y : {&s, &u, &v}) {
            bool const eq = term_equiv(*x, *y, b);
            bool const lt = less_than(*x, *y, b);
            t.expect(eq == oracle::equiv_on(sols, *x, *y), tag + ": equivalence");
            t.expect(lt == oracle::below(sols, *x, *y), tag + ": order");
            t.expect(!(eq && lt), tag + ": irreflexivity");
            for (auto const* z : {&s, &u, &v}) {
              if (lt && less_than(*y, *z, b)) t.expect(less_than(*x, *z, b), tag + ": transitivity");
              if (lt && term_equiv(*y, *z, b)) t.expect(less_than(*x, *z, b), tag + ": right congruence");
              if (lt && term_equiv(*x, *z, b)) t.expect(less_than(*z, *y, b), tag + ": left congruence");
            }
            if (eq) {
              auto dx = down_set(*x, b), dy = down_set(*y, b);
              t.expect(std::set<AddTerm>(dx.begin(), dx.end()) == std::set<AddTerm>(dy.begin(), dy.end()),
                       tag + ": down sets of equivalent terms");
            }
          }
        auto const d = down_set(v, b);
        t.expect(std::set<AddTerm>(d.begin(), d.end()) == oracle::below_set(sols, v), tag + ": down set");
      }
    }
  }

  void discrimination(Tally& t) {
    std::mt19937_64 rng(777);
    int             pairs = 0;
    while (pairs < 20) {
      std::size_t const n   = 2 + pairs % 3;
      auto const        sys = oracle::random_system(rng, n, 1 + pairs % 2, 2, Domain::positive);
      auto const        b   = solve(sys);
      if (!b.consistent) continue;
      ++pairs;
      std::vector<AddTerm> ts{AddTerm::zero(n)};
      std::size_t const    size = 2 + pairs % 7;
      while (ts.size() < size) ts.push_back(oracle::random_term(rng, n, 3));
      auto const d   = discriminating_point(ts, b);
      auto const tag = "pair " + std::to_string(pairs);
      t.expect(oracle::solves(sys, d.point), tag + ": Q is not a solution");
      for (auto q : d.point) t.expect(q >= 1, tag + ": Q leaves B");
      for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = 0; j < ts.size(); ++j) {
          bool const separated = oracle::value(ts[i], d.point) != oracle::value(ts[j], d.point);
          if (!term_equiv(ts[i], ts[j], b)) t.expect(separated, tag + ": unseparated pair");
        }
    }
  }

  void worked_star(Tally& t) {
    auto const t0   = Clock::now();
    auto const inst = make_instance(sl, theoremA_system(), instantiate_schema(theoremA_schema(), 0));
    auto const tl   = t_less_set(inst);
    auto const st   = star_subsystem(inst, tl.size());
    t.expect(tl.size() == 5, "|T_<| = " + std::to_string(tl.size()));

    std::ifstream in(std::string(WREATHLAB_DATA_DIR) + "/golden/worked_star.json");
    auto const    golden = nlohmann::json::parse(in);
    std::vector<std::string> tless, star, hat;
    for (auto const& x : tl) tless.push_back(to_string(x, inst.system.vars));
    for (auto const& r : st.refs) star.push_back(describe(inst.system, r));
    for (auto const& r : inst.hat.kept) hat.push_back(describe(inst.system, r));
    t.expect(golden["t_less"].get<std::vector<std::string>>() == tless, "T_< differs from golden");
    t.expect(golden["star"].get<std::vector<std::string>>() == star, "S* differs from golden");
    t.expect(golden["subsystem_hat"].get<std::vector<std::string>>() == hat, "S-hat differs from golden");
    t.expect(st.refs == std::vector<EquationRef>{{0, 0}, {0, 1}, {0, 2}, {0, 3}}, "S* is not instances 0..3");

    t.expect(bounded_consequence_check(sl, st.star, inst.equation, {3, 3}).holds, "box check fails");
    double const dt = seconds_since(t0);
    t.expect(dt < 60.0, "took " + std::to_string(dt) + " s");
  }

  void transport(Tally& t) {
    System s{theoremA_system().vars, {instantiate_schema(theoremA_schema(), 0)}, {}};
    auto   sc = theoremA_schema();
    sc.first  = 2;
    s.schemas.push_back(sc);
    auto const e    = instantiate_schema(theoremA_schema(), 1);
    auto const inst = make_instance(sl, s, e);
    auto const tl   = t_less_set(inst);

    // Failing point of S*: the lhs of E is a chain e.e.e at coordinate 1,
    // every other side of S* has a factor outside the three spikes.
    auto const  d  = discriminating_point(tl, inst.basis());
    auto const& p  = d.point;
    auto const  v  = [](std::vector<FinSuppVector::Entry> en) { return FinSuppVector(sl, 1, 0, en); };
    WreathPoint failing{{v({{1, 1}}), v({{1 + p[0], 1}}), v({{1 + p[0] + p[1], 1}}), v({}), v({}), v({})}, p};

    auto const r = propagate_counterexample(inst, failing);
    t.expect(r.beta == 1, "failing projection is not 1");
    t.expect(r.transport_check.star_b_holds, "doubled B-part of S* at (Q, 0)");
    t.expect(r.transport_check.star_a_holds, "doubled A-part of S* at (Q', Q'')");
    t.expect(r.transport_check.projection0_fails, "projection 0 of the doubled E holds");
    t.expect(r.star_holds && r.e_fails, "recombined memberships");
    for (auto const& q : r.transported.q1) t.expect(q.nonzero_count() <= tl.size(), "Q' support");
    for (auto const& q : r.transported.q2) t.expect(q.nonzero_count() <= tl.size() + 1, "Q'' support");

    for (std::int64_t i = 0; i <= 8; ++i) {
      if (i == 1) continue;
      t.expect(oracle::holds(instantiate_schema(theoremA_schema(), i), r.result),
               "instance " + std::to_string(i) + " fails at (Q, Q)");
    }
    t.expect(!oracle::holds(e, r.result), "E holds at (Q, Q)");

    for (std::int64_t i = 4; i <= 6; ++i) {
      auto const lt = long_term_check(s, {0, i}, r.result, r.support.size());
      auto const eq = instantiate_schema(theoremA_schema(), i);
      bool       zero = true;
      for (auto const& side : {eq.lhs, eq.rhs}) {
        auto const val = oracle::word_value(side, r.result).v;
        zero = zero && val.fill == 0 &&
               std::all_of(val.values.begin(), val.values.end(), [](Element x) { return x == 0; });
      }
      t.expect(lt.shortcut_applies, "shortcut does not apply at i=" + std::to_string(i));
      t.expect(lt.shortcut_applies == zero, "shortcut disagrees with evaluation at i=" + std::to_string(i));
    }
  }

  void algebra_laws(Tally& t) {
    std::mt19937_64 rng(8);
    auto const      as = oracle::corpus();
    for (int k = 0; k < 1000; ++k) {
      auto const& a     = as[k % as.size()];
      int const   start = k % 2;
      std::uniform_int_distribution<Coord> bd(start, 4);
      WreathElement const x(oracle::random_vector(rng, a, start, 6), bd(rng));
      WreathElement const y(oracle::random_vector(rng, a, start, 6), bd(rng));
      WreathElement const z(oracle::random_vector(rng, a, start, 6), bd(rng));
      auto const          left = wreath_mul(wreath_mul(x, y), z);
      t.expect(left == wreath_mul(x, wreath_mul(y, z)), "associativity");
      auto const dn = [](WreathElement const& w) {
        return oracle::DenseElement{oracle::dense(w.vector(), 12), w.b()};
      };
      auto const expect = oracle::times(oracle::times(dn(x), dn(y)), dn(z));
      t.expect(left.b() == expect.b && oracle::same(left.vector(), expect.v), "coordinate formula");
    }
    for (int k = 0; k < 1000; ++k) {
      auto const&       a  = as[k % as.size()];
      std::size_t const n  = 1 + k % 4;
      auto const        pt = oracle::random_point(rng, a, n, 6, 4);
      auto const        w  = oracle::random_word(rng, n, 6);
      auto const [ta, tb]  = decompose(w, n);
      auto const st        = specialize(ta, pt.b_part);
      auto const shifted   = eval_shift_term(st, pt.a_part);
      auto const direct    = eval_word(w, pt);
      t.expect(direct == WreathElement(shifted, evaluate(tb, pt.b_part)), "decomposition coherence");
      auto const expect = oracle::word_value(w, pt);
      t.expect(direct.b() == expect.b && oracle::same(direct.vector(), expect.v), "word value");
      Coord const horizon = oracle::horizon_of(pt) + st.factors.back().offset + 2;
      for (Coord b = 1; b < horizon; ++b)
        t.expect(project(shifted, b) == eval_projection(projection(st, b), pt.a_part),
                 "projection coherence");
    }
    for (int k = 0; k < 1000; ++k) {
      auto const&       a  = as[k % as.size()];
      std::size_t const n  = 1 + k % 3;
      Coord const       m  = 1 + k % 4;
      auto const        pt = oracle::random_point(rng, a, n, m, 3, 1, true);
      auto const        w  = oracle::random_word(rng, n, m + 4, m + 1);
      auto const        v  = eval_shift_term(shift_term(w, pt.b_part), pt.a_part);
      t.expect(v == FinSuppVector::zeros(a, 1), "long-term annihilation");
    }
  }

}  // namespace

int main() {
  struct Criterion {
    char const*                 name;
    std::function<void(Tally&)> run;
  };
  std::vector<Criterion> const all{
      {"witness schema separates S_n over {0,e}, n=1..5", noetherian_failure},
      {"nilpotent reduction over the index-4 monogenic table", noetherian_reduction},
      {"Hilbert bases and solution sets against the box", hilbert_engine},
      {"order laws and down sets on 50 systems", order_machinery},
      {"discriminating points on 20 random pairs", discrimination},
      {"worked S* instance and golden file", worked_star},
      {"counterexample transport end to end", transport},
      {"1000-case algebra laws", algebra_laws},
  };
  int failed = 0;
  for (std::size_t k = 0; k < all.size(); ++k) {
    Tally      t;
    auto const t0 = Clock::now();
    try {
      all[k].run(t);
    } catch (std::exception const& e) {
      t.failures.push_back(std::string("exception: ") + e.what());
    }
    std::ostringstream line;
    line << "criterion " << k + 1 << ": " << (t.ok() ? "PASS" : "FAIL") << "  " << all[k].name << "  ("
         << t.checks << " checks, " << static_cast<long>(seconds_since(t0) * 1000) << " ms)";
    std::cout << line.str() << '\n';
    for (auto const& f : t.failures) std::cout << "    " << f << '\n';
    failed += !t.ok();
  }
  return failed ? 1 : 0;
}
