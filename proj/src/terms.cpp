#include "wreathlab/terms.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "wreathlab/error.hpp"

namespace wreathlab {

  bool AddTerm::is_zero() const noexcept {
    return std::all_of(
        coeffs.begin(), coeffs.end(), [](std::int64_t c) { return c == 0; });
  }

  std::int64_t AddTerm::length() const noexcept {
    return std::accumulate(coeffs.begin(), coeffs.end(), std::int64_t{0});
  }

  AddTerm& AddTerm::operator+=(AddTerm const& other) {
    if (other.coeffs.size() != coeffs.size()) {
      throw UsageError("adding terms of different arity");
    }
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      coeffs[i] += other.coeffs[i];
    }
    return *this;
  }

  AddTerm operator+(AddTerm x, AddTerm const& y) {
    x += y;
    return x;
  }

  std::int64_t evaluate(AddTerm const& t, std::span<Coord const> point) {
    if (point.size() != t.arity()) {
      throw UsageError("term of arity " + std::to_string(t.arity())
                       + " evaluated at a point of arity "
                       + std::to_string(point.size()));
    }
    std::int64_t v = 0;
    for (std::size_t i = 0; i < point.size(); ++i) {
      v += t.coeffs[i] * point[i];
    }
    return v;
  }

  void check_word(Word const& w, std::size_t arity) {
    if (w.empty()) {
      throw UsageError("empty word");
    }
    for (Var v : w) {
      if (v >= arity) {
        throw StructuralError("variable index " + std::to_string(v)
                              + " outside the declared "
                              + std::to_string(arity) + " variables");
      }
    }
  }

  std::pair<WreathTerm, AddTerm> decompose(Word const& w, std::size_t arity) {
    check_word(w, arity);
    WreathTerm ta;
    AddTerm    prefix(arity);
    for (Var v : w) {
      ta.factors.push_back({prefix, v});
      prefix.coeffs[v] += 1;
    }
    return {std::move(ta), std::move(prefix)};
  }

  AddTerm additive_part(Word const& w, std::size_t arity) {
    check_word(w, arity);
    AddTerm t(arity);
    for (Var v : w) {
      t.coeffs[v] += 1;
    }
    return t;
  }

  std::pair<AddTerm, AddTerm> additive_part(Equation const& e,
                                            std::size_t     arity) {
    return {additive_part(e.lhs, arity), additive_part(e.rhs, arity)};
  }

  ShiftTerm specialize(WreathTerm const& t, std::span<Coord const> b_part) {
    ShiftTerm st;
    st.factors.reserve(t.factors.size());
    for (auto const& f : t.factors) {
      st.factors.push_back({evaluate(f.prefix, b_part), f.var});
    }
    return st;
  }

  ShiftTerm shift_term(Word const& w, std::span<Coord const> b_part) {
    check_word(w, b_part.size());
    ShiftTerm st;
    Coord     offset = 0;
    for (Var v : w) {
      st.factors.push_back({offset, v});
      offset += b_part[v];
    }
    return st;
  }

  ProjectionWord projection(ShiftTerm const& t, Coord b, int start) {
    if (b < start) {
      throw UsageError("projection index " + std::to_string(b)
                       + " below start index " + std::to_string(start));
    }
    ProjectionWord pw;
    for (auto const& f : t.factors) {
      pw.letters.emplace_back(f.var, b + f.offset);
    }
    return pw;
  }

  namespace {
    void check_point(WreathPoint const& pt) {
      if (pt.a_part.size() != pt.b_part.size()) {
        throw UsageError("point has mismatched A- and B-parts");
      }
      if (pt.a_part.empty()) {
        return;
      }
      int const start = pt.a_part.front().start();
      for (std::size_t i = 0; i < pt.a_part.size(); ++i) {
        if (pt.a_part[i].start() != start) {
          throw UsageError("point mixes wreath variants");
        }
        if (pt.b_part[i] < start) {
          throw UsageError(start == 1 ? "B-coordinates must be positive"
                                      : "B-coordinates must be nonnegative");
        }
      }
    }
  }  // namespace

  WreathElement eval_word(Word const& w, WreathPoint const& pt) {
    check_point(pt);
    check_word(w, pt.arity());
    WreathElement acc(pt.a_part[w.front()], pt.b_part[w.front()]);
    for (std::size_t j = 1; j < w.size(); ++j) {
      acc = wreath_mul(acc, WreathElement(pt.a_part[w[j]], pt.b_part[w[j]]));
    }
    return acc;
  }

  FinSuppVector eval_shift_term(ShiftTerm const&               t,
                                std::span<FinSuppVector const> a_part) {
    if (t.factors.empty()) {
      throw UsageError("empty shift term");
    }
    for (auto const& f : t.factors) {
      if (f.var >= a_part.size()) {
        throw UsageError("shift term variable outside the point");
      }
    }
    FinSuppVector acc = shift(a_part[t.factors[0].var], t.factors[0].offset);
    for (std::size_t j = 1; j < t.factors.size(); ++j) {
      acc = pointwise_mul(acc,
                          shift(a_part[t.factors[j].var], t.factors[j].offset));
    }
    return acc;
  }

  Element eval_projection(ProjectionWord const&          pw,
                          std::span<FinSuppVector const> a_part) {
    if (pw.letters.empty()) {
      throw UsageError("empty projection word");
    }
    auto const& s   = a_part[pw.letters[0].first].semigroup();
    Element     acc = a_part[pw.letters[0].first][pw.letters[0].second];
    for (std::size_t j = 1; j < pw.letters.size(); ++j) {
      acc = s.mul(acc, a_part[pw.letters[j].first][pw.letters[j].second]);
    }
    return acc;
  }

  bool satisfies_b_part(Equation const& e, std::span<Coord const> b_part) {
    auto const [t, s] = additive_part(e, b_part.size());
    return evaluate(t, b_part) == evaluate(s, b_part);
  }

  bool satisfies_a_part(Equation const& e, WreathPoint const& pt) {
    check_point(pt);
    return eval_shift_term(shift_term(e.lhs, pt.b_part), pt.a_part)
           == eval_shift_term(shift_term(e.rhs, pt.b_part), pt.a_part);
  }

  bool satisfies(Equation const& e, WreathPoint const& pt) {
    return satisfies_b_part(e, pt.b_part) && satisfies_a_part(e, pt);
  }

  bool satisfies_a_part_projectionwise(Equation const&    e,
                                       WreathPoint const& pt) {
    check_point(pt);
    ShiftTerm const t     = shift_term(e.lhs, pt.b_part);
    ShiftTerm const s     = shift_term(e.rhs, pt.b_part);
    int const       start = pt.a_part.front().start();
    Coord           last  = start;
    for (auto const& v : pt.a_part) {
      last = std::max(last, v.last_coordinate());
    }
    Coord offset = 0;
    for (auto const& f : t.factors) {
      offset = std::max(offset, f.offset);
    }
    for (auto const& f : s.factors) {
      offset = std::max(offset, f.offset);
    }
    // one coordinate past the window stands for every later one
    for (Coord b = start; b <= last + offset + 1; ++b) {
      if (eval_projection(projection(t, b, start), pt.a_part)
          != eval_projection(projection(s, b, start), pt.a_part)) {
        return false;
      }
    }
    return true;
  }

  std::optional<Coord> first_failing_projection(Equation const&    e,
                                                WreathPoint const& pt) {
    check_point(pt);
    FinSuppVector const u = eval_shift_term(shift_term(e.lhs, pt.b_part), pt.a_part);
    FinSuppVector const v = eval_shift_term(shift_term(e.rhs, pt.b_part), pt.a_part);
    std::set<Coord>     coords;
    for (auto const& [c, x] : u.entries()) {
      coords.insert(c);
    }
    for (auto const& [c, x] : v.entries()) {
      coords.insert(c);
    }
    bool const fills_differ = u.fill() != v.fill();
    Coord      b            = u.start();
    for (Coord c : coords) {
      if (b < c && fills_differ) {
        return b;
      }
      if (u[c] != v[c]) {
        return c;
      }
      b = c + 1;
    }
    if (fills_differ) {
      return b;
    }
    return std::nullopt;
  }

  Exponent Schema::lhs_length() const noexcept {
    Exponent len;
    for (auto const& bl : lhs) {
      auto const k = static_cast<std::int64_t>(bl.word.size());
      len.constant += k * bl.exponent.constant;
      len.slope += k * bl.exponent.slope;
    }
    return len;
  }

  Exponent Schema::rhs_length() const noexcept {
    Exponent len;
    for (auto const& bl : rhs) {
      auto const k = static_cast<std::int64_t>(bl.word.size());
      len.constant += k * bl.exponent.constant;
      len.slope += k * bl.exponent.slope;
    }
    return len;
  }

  Equation instantiate_schema(Schema const& s, std::int64_t i) {
    if (!s.contains(i)) {
      throw UsageError("schema index " + std::to_string(i)
                       + " outside its declared range");
    }
    auto expand = [i](std::vector<Block> const& blocks) {
      Word w;
      for (auto const& bl : blocks) {
        std::int64_t const k = bl.exponent.at(i);
        if (k < 0) {
          throw UsageError("negative block exponent at i = "
                           + std::to_string(i));
        }
        for (std::int64_t r = 0; r < k; ++r) {
          w.insert(w.end(), bl.word.begin(), bl.word.end());
        }
      }
      if (w.empty()) {
        throw UsageError("schema instance " + std::to_string(i)
                         + " has an empty side");
      }
      return w;
    };
    return Equation{expand(s.lhs), expand(s.rhs)};
  }

  Equation materialize(System const& sys, EquationRef const& ref) {
    if (ref.instance) {
      return instantiate_schema(sys.schemas.at(ref.source), *ref.instance);
    }
    return sys.equations.at(ref.source);
  }

  std::string describe(System const& sys, EquationRef const& ref) {
    std::string out = ref.instance ? "schema " + std::to_string(ref.source + 1)
                                         + " at i=" + std::to_string(*ref.instance)
                                   : "equation " + std::to_string(ref.source + 1);
    return out + ": " + to_string(materialize(sys, ref), sys.vars);
  }

  Word double_word(Word const& w, std::size_t arity) {
    check_word(w, arity);
    Word out;
    out.reserve(2 * w.size());
    for (Var v : w) {
      out.push_back(v);
      out.push_back(arity + v);
    }
    return out;
  }

  Equation double_equation(Equation const& e, std::size_t arity) {
    return Equation{double_word(e.lhs, arity), double_word(e.rhs, arity)};
  }

  System double_variables(System const& sys) {
    std::size_t const n = sys.arity();
    System            out;
    for (auto const& v : sys.vars) {
      out.vars.push_back(v + "'");
    }
    for (auto const& v : sys.vars) {
      out.vars.push_back(v + "''");
    }
    for (auto const& e : sys.equations) {
      out.equations.push_back(double_equation(e, n));
    }
    auto double_blocks = [n](std::vector<Block> const& blocks) {
      std::vector<Block> res;
      for (auto const& bl : blocks) {
        res.push_back({double_word(bl.word, n), bl.exponent});
      }
      return res;
    };
    for (auto const& s : sys.schemas) {
      out.schemas.push_back(
          Schema{double_blocks(s.lhs), double_blocks(s.rhs), s.first, s.last});
    }
    return out;
  }

  std::string to_string(Word const& w, std::vector<std::string> const& vars) {
    std::string out;
    for (std::size_t j = 0; j < w.size();) {
      std::size_t k = j;
      while (k < w.size() && w[k] == w[j]) {
        ++k;
      }
      if (!out.empty()) {
        out += ' ';
      }
      out += vars.at(w[j]);
      if (k - j > 1) {
        out += '^' + std::to_string(k - j);
      }
      j = k;
    }
    return out;
  }

  std::string to_string(AddTerm const& t, std::vector<std::string> const& vars) {
    if (t.is_zero()) {
      return "0";
    }
    std::string out;
    for (std::size_t i = 0; i < t.coeffs.size(); ++i) {
      if (t.coeffs[i] == 0) {
        continue;
      }
      if (!out.empty()) {
        out += '+';
      }
      if (t.coeffs[i] != 1) {
        out += std::to_string(t.coeffs[i]);
      }
      out += vars.at(i);
    }
    return out;
  }

  std::string to_string(Equation const& e, std::vector<std::string> const& vars) {
    return to_string(e.lhs, vars) + " = " + to_string(e.rhs, vars);
  }

}  // namespace wreathlab
