#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "wreathlab/additive.hpp"
#include "wreathlab/error.hpp"
#include "wreathlab/noether.hpp"

using namespace wreathlab;
using oracle::Tuple;

namespace {

  AddTerm term(std::vector<std::int64_t> c) {
    return AddTerm(std::move(c));
  }

  LinEquation eq(std::vector<std::int64_t> l, std::vector<std::int64_t> r) {
    return {term(std::move(l)), term(std::move(r))};
  }

  std::set<Tuple> as_set(std::vector<IntTuple> const& v) {
    return {v.begin(), v.end()};
  }

  std::set<AddTerm> as_set(std::vector<AddTerm> const& v) {
    return {v.begin(), v.end()};
  }

  // x1 = x2 over the positive domain
  SolutionBasis diag() {
    return solve({2, Domain::positive, {eq({1, 0}, {0, 1})}});
  }

}  // namespace

TEST_CASE("hilbert basis examples") {
  CHECK(as_set(hilbert_basis({2, Domain::nonneg, {eq({1, 0}, {0, 1})}})) == std::set<Tuple>{{1, 1}});
  CHECK(as_set(hilbert_basis({3, Domain::nonneg, {eq({1, 1, 0}, {0, 0, 2})}})) ==
        std::set<Tuple>{{1, 1, 1}, {2, 0, 1}, {0, 2, 1}});
  CHECK(as_set(hilbert_basis({2, Domain::nonneg, {}})) == std::set<Tuple>{{1, 0}, {0, 1}});
}

TEST_CASE("hilbert basis agrees with the box") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 60; ++k) {
    std::size_t const n   = 1 + k % 4;
    auto const        sys = oracle::random_system(rng, n, 1 + k % 2, 3, Domain::nonneg);
    std::int64_t const m  = 9;
    auto const         hb = hilbert_basis(sys);
    std::set<Tuple>    small;
    for (auto const& h : hb) {
      CHECK(oracle::solves(sys, h));
      if (*std::max_element(h.begin(), h.end()) <= m) small.insert(h);
    }
    CHECK(small == oracle::hilbert_in_box(sys, m));
  }
}

TEST_CASE("solve examples") {
  CHECK_FALSE(solve({1, Domain::positive, {eq({1}, {2})}}).consistent);
  auto const b = solve({1, Domain::nonneg, {eq({1}, {2})}});
  CHECK(b.consistent);
  CHECK(b.particular == std::vector<IntTuple>{{0}});
  CHECK(b.homogeneous.empty());

  LinSystem const yb{6, Domain::positive, {eq({1, 0, 1, 0, 0, 0}, {0, 0, 0, 1, 0, 1}),
                                           eq({0, 1, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 0})}};
  auto const ybb = solve(yb);
  CHECK(oracle::generated_in_box(ybb, 5) == oracle::box_solutions(yb, 5));
}

TEST_CASE("basis invariants on random systems") {
  std::mt19937_64 rng(32);
  for (int k = 0; k < 80; ++k) {
    std::size_t const n      = 1 + k % 4;
    Domain const      domain = k % 3 ? Domain::positive : Domain::nonneg;
    auto const        sys    = oracle::random_system(rng, n, 1 + k % 2, 3, domain);
    auto const        b      = solve(sys);
    auto const        box    = oracle::box_solutions(sys, 6);
    CHECK(oracle::generated_in_box(b, 6) == box);
    if (!b.consistent) continue;
    for (auto const& p : b.particular) CHECK(oracle::solves(sys, p));
    for (auto const& p : b.particular)
      for (auto const& q : b.particular)
        if (p != q) CHECK_FALSE(oracle::leq(p, q));
    LinSystem hom = sys;
    hom.domain    = Domain::nonneg;
    for (auto const& h : b.homogeneous) {
      CHECK(oracle::solves(hom, h));
      CHECK(h != IntTuple(n, 0));
    }
  }
}

TEST_CASE("consequences and equivalence") {
  auto const d = diag();
  CHECK(is_consequence(d, eq({1, 1}, {2, 0})));
  CHECK_FALSE(is_consequence(d, eq({1, 0}, {0, 2})));

  auto const sys = theoremA_system();
  auto const fes = finite_equivalent_subsystem(sys);
  auto const [t4, s4] = additive_part(instantiate_schema(theoremA_schema(), 4), 6);
  CHECK(is_consequence(fes.basis, {t4, s4}));
  LinSystem const first_two = b_system(sys, fes.kept);
  for (auto const& p : oracle::box_solutions(first_two, 4))
    CHECK(oracle::value(t4, p) == oracle::value(s4, p));

  CHECK(term_equiv(term({1, 0}), term({0, 1}), d));
  auto const free2 = solve({2, Domain::positive, {}});
  CHECK(term_equiv(term({1, 0}), term({1, 0}), free2));
  CHECK_FALSE(term_equiv(term({1, 0}), term({0, 1}), free2));
  CHECK(term_equiv(term({1, 0, 1, 0, 0, 0}), term({0, 0, 0, 1, 0, 1}), fes.basis));
  CHECK_FALSE(term_equiv(term({1, 0, 0, 0, 0, 0}), term({0, 0, 0, 1, 0, 0}), fes.basis));
}

TEST_CASE("finite equivalent subsystem") {
  auto const sys = theoremA_system();
  auto const fes = finite_equivalent_subsystem(sys);
  CHECK(fes.kept == std::vector<EquationRef>{{0, 0}, {0, 1}});
  // mutual consequence with a longer prefix
  std::vector<EquationRef> more;
  for (std::int64_t i = 0; i < 8; ++i) more.push_back({0, i});
  auto const wide = solve(b_system(sys, more));
  for (auto const& r : fes.kept) {
    auto const [t, s] = additive_part(materialize(sys, r), 6);
    CHECK(is_consequence(wide, {t, s}));
  }
  for (auto const& r : more) {
    auto const [t, s] = additive_part(materialize(sys, r), 6);
    CHECK(is_consequence(fes.basis, {t, s}));
  }

  std::vector<LinEquation> const one{eq({1, 0}, {0, 1})};
  CHECK(finite_equivalent_subsystem(one, 2, Domain::positive) == std::vector<std::size_t>{0});
  std::vector<LinEquation> const three{eq({1, 0}, {0, 1}), eq({0, 1}, {1, 0}), eq({2, 0}, {0, 2})};
  CHECK(finite_equivalent_subsystem(three, 2, Domain::positive) == std::vector<std::size_t>{0});
}

TEST_CASE("equivalence classes") {
  auto const free2 = solve({2, Domain::positive, {}});
  CHECK(as_set(equiv_class(term({1, 0}), free2)) == std::set<AddTerm>{term({1, 0})});
  auto const d = diag();
  CHECK(as_set(equiv_class(term({1, 0}), d)) == std::set<AddTerm>{term({1, 0}), term({0, 1})});
  CHECK(as_set(equiv_class(term({2, 0}), d)) ==
        std::set<AddTerm>{term({2, 0}), term({1, 1}), term({0, 2})});
  auto const nn = solve({2, Domain::nonneg, {}});
  CHECK_THROWS_AS(equiv_class(term({1, 0}), nn), UnsupportedError);
}

TEST_CASE("order examples") {
  auto const free2 = solve({2, Domain::positive, {}});
  CHECK(less_than(term({1, 0}), term({1, 1}), free2));
  CHECK_FALSE(less_than(term({1, 1}), term({1, 1}), free2));
  CHECK(less_than(term({1, 0}), term({0, 2}), diag()));
  CHECK(as_set(down_set(term({1, 1}), free2)) == std::set<AddTerm>{term({1, 0}), term({0, 1})});
  CHECK(as_set(down_set(term({2, 0}), diag())) == std::set<AddTerm>{term({1, 0}), term({0, 1})});
  CHECK(down_set(term({1, 0}), free2).empty());
}

TEST_CASE("order laws, classes and down sets against brute force") {
  std::mt19937_64 rng(33);
  int             systems = 0;
  while (systems < 25) {
    std::size_t const n   = 2 + systems % 2;
    auto const        sys = oracle::random_system(rng, n, 1, 2, Domain::positive);
    auto const        b   = solve(sys);
    if (!b.consistent) continue;
    bool small = true;
    for (auto const& p : b.particular)
      for (auto const& h : b.homogeneous)
        for (std::size_t i = 0; i < n; ++i)
          if (p[i] + h[i] > 7) small = false;
    if (!small) continue;
    ++systems;
    auto const sols = oracle::box_solutions(sys, 7);
    for (int k = 0; k < 6; ++k) {
      auto const t = oracle::random_term(rng, n, 2);
      auto const s = oracle::random_term(rng, n, 2);
      CHECK(term_equiv(t, s, b) == oracle::equiv_on(sols, t, s));
      CHECK(less_than(s, t, b) == oracle::below(sols, s, t));
      CHECK(as_set(down_set(t, b)) == oracle::below_set(sols, t));
      std::set<AddTerm> cls;
      for (auto const& u : oracle::terms_up_to(n, oracle::value(t, *sols.begin())))
        if (oracle::equiv_on(sols, u, t)) cls.insert(u);
      CHECK(as_set(equiv_class(t, b)) == cls);
    }
  }
}

TEST_CASE("discriminating point examples") {
  auto const free2 = solve({2, Domain::positive, {}});
  std::vector<AddTerm> const t{AddTerm::zero(2), term({1, 0}), term({0, 1}), term({1, 1})};
  auto const d = discriminating_point(t, free2);
  CHECK(d.point == IntTuple{1, 2});
  CHECK(d.values == std::vector<std::int64_t>{0, 1, 2, 3});

  std::vector<AddTerm> const same{term({1, 0}), term({0, 1})};
  auto const ds = discriminating_point(same, diag());
  CHECK(ds.classes == 1);
  CHECK(ds.point == diag().particular.front());

  std::vector<AddTerm> const multiples{term({1, 0}), term({2, 0}), term({3, 0})};
  auto const dm = discriminating_point(multiples, diag());
  CHECK(dm.point == IntTuple{1, 1});
  CHECK(dm.values == std::vector<std::int64_t>{1, 2, 3});
}

TEST_CASE("discriminating point on random inputs") {
  std::mt19937_64 rng(34);
  int             done = 0;
  while (done < 30) {
    std::size_t const n   = 2 + done % 3;
    auto const        sys = oracle::random_system(rng, n, 1, 2, Domain::positive);
    auto const        b   = solve(sys);
    if (!b.consistent) continue;
    ++done;
    std::vector<AddTerm> ts{AddTerm::zero(n)};
    while (ts.size() < 8) ts.push_back(oracle::random_term(rng, n, 3));
    auto const d = discriminating_point(ts, b);
    CHECK(oracle::solves(sys, d.point));
    for (std::size_t i = 0; i < ts.size(); ++i) {
      CHECK(d.values[i] == oracle::value(ts[i], d.point));
      for (std::size_t j = 0; j < ts.size(); ++j)
        if (!term_equiv(ts[i], ts[j], b)) CHECK(d.values[i] != d.values[j]);
    }
  }
}
