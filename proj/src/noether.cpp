#include "wreathlab/noether.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "wreathlab/error.hpp"

namespace wreathlab {

  NilpotencyReport nilpotency_index(FiniteSemigroup const& a,
                                    std::size_t            probe_length) {
    NilpotencyReport out;
    out.probe_length = probe_length;
    std::set<Element> power;
    for (Element x = 0; x < a.size(); ++x) power.insert(x);
    for (std::size_t k = 1; k <= a.size() + 1; ++k) {
      if (power.size() == 1 && *power.begin() == a.zero()) {
        out.nilpotent = true;
        out.index     = k;
        return out;
      }
      std::set<Element> next;
      for (auto x : power)
        for (Element y = 0; y < a.size(); ++y) next.insert(a.mul(x, y));
      if (next == power) break;
      power = std::move(next);
    }
    out.witness = nonzero_product_witness(a, probe_length);
    return out;
  }

  std::optional<std::vector<Element>>
  nonzero_product_witness(FiniteSemigroup const& a, std::size_t length) {
    if (length == 0) return std::nullopt;
    // back[k][v] = (product of the first k letters, letter k+1) reaching v
    std::vector<std::map<Element, std::pair<Element, Element>>> back(length);
    for (Element x = 0; x < a.size(); ++x)
      if (x != a.zero()) back[0].emplace(x, std::pair{x, x});
    for (std::size_t k = 1; k < length; ++k)
      for (auto const& [v, _] : back[k - 1])
        for (Element y = 0; y < a.size(); ++y) {
          auto const w = a.mul(v, y);
          if (w != a.zero()) back[k].emplace(w, std::pair{v, y});
        }
    if (back[length - 1].empty()) return std::nullopt;
    std::vector<Element> seq(length);
    Element              v = back[length - 1].begin()->first;
    for (std::size_t k = length; k-- > 0;) {
      auto const [prev, letter] = back[k].at(v);
      seq[k]                    = letter;
      v                         = prev;
    }
    return seq;
  }

  Schema theoremA_schema() {
    Schema s;
    s.lhs   = {{{0}, {1, 0}}, {{1}, {0, 1}}, {{2}, {1, 0}}};
    s.rhs   = {{{3}, {1, 0}}, {{4}, {0, 1}}, {{5}, {1, 0}}};
    s.first = 0;
    return s;
  }

  namespace {
    std::vector<std::string> six_vars() {
      return {"x1", "x2", "x3", "x4", "x5", "x6"};
    }
  }  // namespace

  System theoremA_system() {
    return {six_vars(), {}, {theoremA_schema()}};
  }

  System theoremA_truncation(std::size_t n) {
    System     out{six_vars(), {}, {}};
    auto const s = theoremA_schema();
    for (std::size_t i = 0; i < n; ++i)
      out.equations.push_back(instantiate_schema(s, static_cast<std::int64_t>(i)));
    return out;
  }

  namespace {

    WreathPoint layout_point(SemigroupPtr const&         a,
                             std::vector<Element> const& chain,
                             WitnessLayout const&        lay) {
      WreathPoint pt;
      auto const  zero = a->zero();
      pt.a_part.emplace_back(a, 1, zero, std::vector<FinSuppVector::Entry>{{1, chain[0]}});
      std::vector<FinSuppVector::Entry> seg;
      for (Coord c = 1; c <= lay.segment_end; ++c)
        seg.emplace_back(c, chain[static_cast<std::size_t>(c) - 1]);
      pt.a_part.emplace_back(a, 1, zero, std::move(seg));
      auto const last = chain[static_cast<std::size_t>(lay.segment_end)];
      pt.a_part.emplace_back(a, 1, zero,
                             std::vector<FinSuppVector::Entry>{{lay.spike, last}});
      for (int k = 0; k < 3; ++k) pt.a_part.push_back(FinSuppVector::zeros(a, 1));
      pt.b_part.assign(6, 1);
      return pt;
    }

    bool layout_works(WreathPoint const& pt, std::size_t n) {
      auto const s = theoremA_schema();
      for (std::size_t i = 0; i < n; ++i)
        if (!satisfies(instantiate_schema(s, static_cast<std::int64_t>(i)), pt))
          return false;
      return !satisfies(instantiate_schema(s, static_cast<std::int64_t>(n)), pt);
    }

  }  // namespace

  WitnessPoint theoremA_witness_point(SemigroupPtr a, std::size_t n) {
    auto const need  = n + 2;
    auto       chain = nonzero_product_witness(*a, need);
    if (!chain)
      throw PreconditionError("every product of length " + std::to_string(need) +
                              " in " + a->name() + " is zero");
    WitnessPoint out;
    out.chain    = *chain;
    auto const m = static_cast<Coord>(n);
    for (Coord seg : {m, m + 1})
      for (Coord spike : {m + 1, m + 2}) {
        WitnessLayout lay{seg, spike};
        auto          pt = layout_point(a, out.chain, lay);
        if (layout_works(pt, n)) {
          out.point  = std::move(pt);
          out.layout = lay;
          return out;
        }
        out.rejected.push_back(lay);
      }
    throw InternalConsistencyError("no witness layout satisfies S_" + std::to_string(n));
  }

  bool NoetherianFailure::ok() const noexcept {
    return instance_n_fails &&
           std::all_of(instance_holds.begin(), instance_holds.end(),
                       [](bool b) { return b; });
  }

  NoetherianFailure verify_noetherian_failure(SemigroupPtr a, std::size_t n) {
    NoetherianFailure out;
    out.witness  = theoremA_witness_point(a, n);
    auto const s = theoremA_schema();
    auto const& pt = out.witness.point;
    for (std::size_t i = 0; i < n; ++i)
      out.instance_holds.push_back(
          satisfies(instantiate_schema(s, static_cast<std::int64_t>(i)), pt));
    auto const e          = instantiate_schema(s, static_cast<std::int64_t>(n));
    out.instance_n_fails  = !satisfies(e, pt);
    auto const lhs        = eval_word(e.lhs, pt);
    auto const rhs        = eval_word(e.rhs, pt);
    out.failing_coordinate = first_failing_projection(e, pt).value_or(0);
    out.lhs_value          = lhs.vector()[1];
    out.rhs_value          = rhs.vector()[1];
    return out;
  }

  NilpotentReduction nilpotent_reduce(FiniteSemigroup const& a,
                                      System const&          sys,
                                      std::size_t            s) {
    if (s == 0 || nonzero_product_witness(a, s))
      throw PreconditionError("some product of length " + std::to_string(s) + " in " +
                              a.name() + " is nonzero; not a nilpotency index");
    auto const        ss = static_cast<std::int64_t>(s);
    std::set<EquationRef> keep;
    for (std::size_t i = 0; i < sys.equations.size(); ++i) {
      auto const& e = sys.equations[i];
      if (std::min(e.lhs.size(), e.rhs.size()) < s) keep.insert({i, std::nullopt});
    }
    for (std::size_t k = 0; k < sys.schemas.size(); ++k) {
      auto const& sc = sys.schemas[k];
      if (!sc.strictly_increasing())
        throw UnsupportedError("schema " + std::to_string(k + 1) +
                               " does not have strictly increasing word lengths");
      for (auto i = sc.first; sc.contains(i); ++i) {
        if (std::min(sc.lhs_length().at(i), sc.rhs_length().at(i)) >= ss) break;
        keep.insert({k, i});
      }
    }
    NilpotentReduction out;
    out.b_subsystem = finite_equivalent_subsystem(sys);
    keep.insert(out.b_subsystem.kept.begin(), out.b_subsystem.kept.end());

    std::vector<EquationRef> refs(keep.begin(), keep.end());
    std::stable_sort(refs.begin(), refs.end(), [](auto const& x, auto const& y) {
      return x.is_instance() < y.is_instance();
    });
    out.reduced.vars = sys.vars;
    for (auto const& r : refs) {
      auto e = materialize(sys, r);
      out.wreath_trivial.push_back(std::min(e.lhs.size(), e.rhs.size()) >= s);
      out.reduced.equations.push_back(std::move(e));
      out.origin.push_back(r);
    }
    return out;
  }

}  // namespace wreathlab
