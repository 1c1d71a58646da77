#include "wreathlab/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "wreathlab/error.hpp"

namespace wreathlab {

  namespace {

    struct Token {
      std::string text;
      std::size_t column = 0;
    };

    struct Line {
      std::size_t        number = 0;
      std::string        raw;
      std::vector<Token> tokens;
    };

    // Splits into lines, drops '#' comments, keeps 1-based columns.
    std::vector<Line> lex(std::string_view text) {
      std::vector<Line> out;
      std::size_t       number = 0;
      std::size_t       pos    = 0;
      while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string raw(text.substr(pos, end - pos));
        ++number;
        pos = end + 1;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        Line line{number, raw, {}};
        for (std::size_t i = 0; i < raw.size();) {
          if (std::isspace(static_cast<unsigned char>(raw[i]))) {
            ++i;
            continue;
          }
          auto j = i;
          while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
          line.tokens.push_back({raw.substr(i, j - i), i + 1});
          i = j;
        }
        if (!line.tokens.empty()) out.push_back(std::move(line));
        if (end == text.size()) break;
      }
      return out;
    }

    [[noreturn]] void fail(Line const& l, std::size_t column, std::string const& msg) {
      throw ParseError(msg, l.number, column);
    }

    std::optional<std::int64_t> to_int(std::string_view s) {
      std::int64_t v = 0;
      if (s.empty()) return std::nullopt;
      auto const [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
      return v;
    }

    std::size_t var_index(std::vector<std::string> const& vars, std::string const& name) {
      auto it = std::find(vars.begin(), vars.end(), name);
      return it == vars.end() ? vars.size() : static_cast<std::size_t>(it - vars.begin());
    }

    std::string exponent_text(Exponent const& e) {
      std::string s;
      if (e.slope != 0) {
        s = (e.slope == 1 ? "" : std::to_string(e.slope)) + "i";
        if (e.constant != 0) s += "+" + std::to_string(e.constant);
      } else {
        s = std::to_string(e.constant);
      }
      return s;
    }

    std::optional<Exponent> parse_exponent(std::string const& s, bool allow_i) {
      if (auto k = to_int(s)) return Exponent{*k, 0};
      if (!allow_i) return std::nullopt;
      static std::regex const affine(R"(^(\d*)i(?:\+(\d+))?$)");
      std::smatch             m;
      if (!std::regex_match(s, m, affine)) return std::nullopt;
      Exponent e;
      e.slope    = m[1].length() ? *to_int(m[1].str()) : 1;
      e.constant = m[2].matched ? *to_int(m[2].str()) : 0;
      return e;
    }

    // One side of an equation or schema: letters with optional exponents.
    std::vector<Block> parse_side(Line const&                     l,
                                  std::vector<Token> const&       toks,
                                  std::size_t                     eq_column,
                                  std::vector<std::string> const& vars,
                                  bool                            allow_i) {
      if (toks.empty()) fail(l, eq_column, "empty word");
      std::vector<Block> out;
      for (auto const& t : toks) {
        auto const  caret = t.text.find('^');
        std::string name  = t.text.substr(0, caret);
        auto const  v     = var_index(vars, name);
        if (v == vars.size()) fail(l, t.column, "unknown variable '" + name + "'");
        Exponent e{1, 0};
        if (caret != std::string::npos) {
          auto const src = t.text.substr(caret + 1);
          auto const ex  = parse_exponent(src, allow_i);
          if (!ex) {
            bool const has_i = src.find('i') != std::string::npos;
            fail(l, t.column + caret + 1,
                 has_i && !allow_i ? "exponent 'i' outside a schema"
                 : has_i           ? "non-affine exponent '" + src + "'"
                                   : "bad exponent '" + src + "'");
          }
          e = *ex;
          if (e.slope == 0 && e.constant < 1)
            fail(l, t.column + caret + 1, "exponent must be positive");
        }
        out.push_back({{v}, e});
      }
      return out;
    }

    Word expand_fixed(std::vector<Block> const& blocks) {
      Word w;
      for (auto const& b : blocks)
        for (std::int64_t k = 0; k < b.exponent.constant; ++k) w.push_back(b.word.front());
      return w;
    }

    std::pair<std::vector<Token>, std::vector<Token>>
    split_at_equals(Line const& l, std::vector<Token> const& toks, std::size_t& eq_column) {
      auto it = std::find_if(toks.begin(), toks.end(), [](Token const& t) { return t.text == "="; });
      if (it == toks.end())
        fail(l, toks.empty() ? 1 : toks.front().column, "expected '='");
      if (std::find_if(it + 1, toks.end(), [](Token const& t) { return t.text == "="; }) != toks.end())
        fail(l, it->column, "more than one '='");
      eq_column = it->column;
      return {{toks.begin(), it}, {it + 1, toks.end()}};
    }

    std::vector<std::string> parse_vars(Line const& l) {
      auto const&              t = l.tokens;
      std::vector<std::string> vars;
      if (t.size() == 4 && t[2].text == "..") {
        static std::regex const named(R"(^([A-Za-z_][A-Za-z_']*)(\d+)$)");
        std::smatch             a, b;
        if (!std::regex_match(t[1].text, a, named)) fail(l, t[1].column, "range needs a numbered name");
        if (!std::regex_match(t[3].text, b, named)) fail(l, t[3].column, "range needs a numbered name");
        if (a[1] != b[1]) fail(l, t[3].column, "range names differ in prefix");
        auto const lo = *to_int(a[2].str()), hi = *to_int(b[2].str());
        if (hi < lo) fail(l, t[3].column, "empty variable range");
        for (auto k = lo; k <= hi; ++k) vars.push_back(a[1].str() + std::to_string(k));
        return vars;
      }
      if (t.size() < 2) fail(l, t[0].column, "vars needs at least one name");
      static std::regex const ident(R"(^[A-Za-z_][A-Za-z_0-9']*$)");
      for (std::size_t k = 1; k < t.size(); ++k) {
        if (!std::regex_match(t[k].text, ident)) fail(l, t[k].column, "bad variable name '" + t[k].text + "'");
        if (std::find(vars.begin(), vars.end(), t[k].text) != vars.end())
          fail(l, t[k].column, "duplicate variable '" + t[k].text + "'");
        vars.push_back(t[k].text);
      }
      return vars;
    }

    std::string blocks_text(std::vector<Block> const& bs, std::vector<std::string> const& vars) {
      std::string s;
      for (auto const& b : bs) {
        if (b.word.size() != 1) throw UsageError("cannot write multi-letter schema blocks");
        if (!s.empty()) s += ' ';
        s += vars.at(b.word.front());
        if (b.exponent != Exponent{1, 0}) s += "^" + exponent_text(b.exponent);
      }
      return s;
    }

  }  // namespace

  FiniteSemigroup parse_semigroup(std::string_view text) {
    auto const                            lines = lex(text);
    std::optional<std::string>            name;
    std::vector<std::string>              elements;
    std::optional<std::string>            zero;
    bool                                  table = false;
    std::vector<std::vector<std::string>> rows;
    std::size_t                           last_line = 0;
    for (auto const& l : lines) {
      last_line    = l.number;
      auto const& t = l.tokens;
      if (table) {
        if (elements.empty()) fail(l, t[0].column, "table before elements");
        if (rows.size() == elements.size()) fail(l, t[0].column, "extra table row");
        if (t.size() != elements.size())
          fail(l, t[0].column, "row has " + std::to_string(t.size()) + " entries, expected " +
                                   std::to_string(elements.size()));
        std::vector<std::string> row;
        for (auto const& tok : t) {
          if (std::find(elements.begin(), elements.end(), tok.text) == elements.end())
            fail(l, tok.column, "unknown element '" + tok.text + "'");
          row.push_back(tok.text);
        }
        rows.push_back(std::move(row));
        continue;
      }
      auto const& kw = t[0].text;
      if (kw == "semigroup") {
        if (t.size() != 2) fail(l, t[0].column, "expected 'semigroup <name>'");
        name = t[1].text;
      } else if (kw == "elements") {
        if (t.size() < 2) fail(l, t[0].column, "elements needs at least one id");
        for (std::size_t k = 1; k < t.size(); ++k) {
          if (std::find(elements.begin(), elements.end(), t[k].text) != elements.end())
            fail(l, t[k].column, "duplicate element '" + t[k].text + "'");
          elements.push_back(t[k].text);
        }
      } else if (kw == "zero") {
        if (t.size() != 2) fail(l, t[0].column, "expected 'zero <id>'");
        if (std::find(elements.begin(), elements.end(), t[1].text) == elements.end())
          fail(l, t[1].column, "zero '" + t[1].text + "' is not a declared element");
        zero = t[1].text;
      } else if (kw == "table") {
        if (t.size() != 1) fail(l, t[1].column, "table takes no arguments");
        table = true;
      } else {
        fail(l, t[0].column, "unexpected '" + kw + "'");
      }
    }
    Line const end{last_line + 1, "", {}};
    if (!name) fail(end, 1, "missing 'semigroup' line");
    if (elements.empty()) fail(end, 1, "missing 'elements' line");
    if (!zero) fail(end, 1, "missing 'zero' line");
    if (!table) fail(end, 1, "missing 'table'");
    if (rows.size() != elements.size())
      fail(end, 1, "table has " + std::to_string(rows.size()) + " rows, expected " +
                       std::to_string(elements.size()));
    auto s   = FiniteSemigroup::from_names(*name, elements, *zero, rows);
    auto rep = validate_semigroup(s);
    if (!rep.valid()) throw StructuralError(describe(s, rep));
    return s;
  }

  std::string emit_semigroup(FiniteSemigroup const& s) {
    std::ostringstream out;
    out << "semigroup " << s.name() << "\nelements";
    for (auto const& e : s.element_names()) out << ' ' << e;
    out << "\nzero " << s.element_name(s.zero()) << "\ntable\n";
    for (Element x = 0; x < s.size(); ++x) {
      for (Element y = 0; y < s.size(); ++y)
        out << (y ? " " : "") << s.element_name(s.mul(x, y));
      out << '\n';
    }
    return out.str();
  }

  System parse_system(std::string_view text) {
    System sys;
    bool   have_vars = false;
    for (auto const& l : lex(text)) {
      auto const& t  = l.tokens;
      auto const& kw = t[0].text;
      if (kw == "vars") {
        if (have_vars) fail(l, t[0].column, "vars declared twice");
        sys.vars  = parse_vars(l);
        have_vars = true;
        continue;
      }
      if (kw != "eq" && kw != "schema") fail(l, t[0].column, "unexpected '" + kw + "'");
      if (!have_vars) fail(l, t[0].column, "'" + kw + "' before 'vars'");

      if (kw == "eq") {
        std::size_t eq_col = 0;
        auto [lt, rt]      = split_at_equals(l, {t.begin() + 1, t.end()}, eq_col);
        Equation e{expand_fixed(parse_side(l, lt, eq_col, sys.vars, false)),
                   expand_fixed(parse_side(l, rt, eq_col + 1, sys.vars, false))};
        if (std::find(sys.equations.begin(), sys.equations.end(), e) != sys.equations.end())
          fail(l, t[0].column, "duplicate equation");
        sys.equations.push_back(std::move(e));
        continue;
      }

      auto colon = std::find_if(t.begin() + 1, t.end(), [](Token const& x) {
        return !x.text.empty() && x.text.back() == ':';
      });
      if (colon == t.end()) fail(l, t[0].column, "schema needs ':' after its range");
      std::string head;
      for (auto it = t.begin() + 1; it <= colon; ++it) head += it->text;
      head.pop_back();
      static std::regex const lower(R"(^i>=(\d+)$)");
      static std::regex const both(R"(^(\d+)<=i<=(\d+)$)");
      std::smatch             m;
      Schema                  sc;
      if (std::regex_match(head, m, lower)) {
        sc.first = *to_int(m[1].str());
      } else if (std::regex_match(head, m, both)) {
        sc.first = *to_int(m[1].str());
        sc.last  = *to_int(m[2].str());
        if (*sc.last < sc.first) fail(l, t[1].column, "empty schema range");
      } else {
        fail(l, t[1].column, "schema range must read 'i>=K' or 'K<=i<=L'");
      }
      std::vector<Token> rest;
      rest.assign(colon + 1, t.end());
      std::size_t eq_col = 0;
      auto [lt, rt]      = split_at_equals(l, rest, eq_col);
      sc.lhs             = parse_side(l, lt, eq_col, sys.vars, true);
      sc.rhs             = parse_side(l, rt, eq_col + 1, sys.vars, true);
      for (auto const* side : {&sc.lhs, &sc.rhs})
        for (auto const& b : *side)
          if (b.exponent.at(sc.first) < 0 || b.exponent.slope < 0)
            fail(l, t[0].column, "block exponent is negative inside the range");
      if (sc.lhs_length().at(sc.first) < 1 || sc.rhs_length().at(sc.first) < 1)
        fail(l, t[0].column, "first instance has an empty side");
      if (!sc.strictly_increasing())
        throw UnsupportedError("line " + std::to_string(l.number) +
                               ": schema word lengths must grow with i on both sides");
      if (std::find(sys.schemas.begin(), sys.schemas.end(), sc) != sys.schemas.end())
        fail(l, t[0].column, "duplicate schema");
      sys.schemas.push_back(std::move(sc));
    }
    if (!have_vars) throw ParseError("missing 'vars' line", 1, 1);
    return sys;
  }

  std::string emit_system(System const& sys) {
    std::ostringstream out;
    out << "vars";
    static std::regex const named(R"(^([A-Za-z_][A-Za-z_']*)(\d+)$)");
    bool                    range = sys.vars.size() > 2;
    std::smatch             m0;
    if (range && std::regex_match(sys.vars.front(), m0, named)) {
      auto const prefix = m0[1].str();
      auto const lo     = *to_int(m0[2].str());
      for (std::size_t k = 0; k < sys.vars.size(); ++k)
        range = range && sys.vars[k] == prefix + std::to_string(lo + static_cast<std::int64_t>(k));
    } else {
      range = false;
    }
    if (range)
      out << ' ' << sys.vars.front() << " .. " << sys.vars.back();
    else
      for (auto const& v : sys.vars) out << ' ' << v;
    out << '\n';
    for (auto const& e : sys.equations)
      out << "eq " << to_string(e, sys.vars) << '\n';
    for (auto const& s : sys.schemas) {
      out << "schema ";
      if (s.last)
        out << s.first << "<=i<=" << *s.last;
      else
        out << "i>=" << s.first;
      out << " : " << blocks_text(s.lhs, sys.vars) << " = " << blocks_text(s.rhs, sys.vars) << '\n';
    }
    return out.str();
  }

  Equation parse_equation(std::string_view text, std::vector<std::string> const& vars) {
    auto const lines = lex(text);
    if (lines.empty()) throw ParseError("no equation", 1, 1);
    if (lines.size() > 1) fail(lines[1], lines[1].tokens[0].column, "expected a single equation");
    auto const& l    = lines.front();
    auto        toks = l.tokens;
    if (toks.front().text == "eq") toks.erase(toks.begin());
    std::size_t eq_col = 0;
    auto [lt, rt]      = split_at_equals(l, toks, eq_col);
    return {expand_fixed(parse_side(l, lt, eq_col, vars, false)),
            expand_fixed(parse_side(l, rt, eq_col + 1, vars, false))};
  }

  AddTerm parse_term(std::string_view text, std::vector<std::string> const& vars) {
    Line l{1, std::string(text), {}};
    std::string compact;
    std::vector<std::size_t> col;
    for (std::size_t i = 0; i < text.size(); ++i)
      if (!std::isspace(static_cast<unsigned char>(text[i]))) {
        compact += text[i];
        col.push_back(i + 1);
      }
    if (compact.empty()) fail(l, 1, "empty term");
    AddTerm t(vars.size());
    if (compact == "0") return t;
    static std::regex const summand(R"(^(\d*)\*?([A-Za-z_][A-Za-z_0-9']*)$)");
    std::size_t             pos = 0;
    while (pos <= compact.size()) {
      auto end = compact.find('+', pos);
      if (end == std::string::npos) end = compact.size();
      auto const  piece = compact.substr(pos, end - pos);
      auto const  at    = pos < col.size() ? col[pos] : text.size() + 1;
      std::smatch m;
      if (!std::regex_match(piece, m, summand)) fail(l, at, "bad summand '" + piece + "'");
      auto const v = var_index(vars, m[2].str());
      if (v == vars.size()) fail(l, at, "unknown variable '" + m[2].str() + "'");
      auto const k = m[1].length() ? *to_int(m[1].str()) : 1;
      if (k < 1) fail(l, at, "coefficient must be positive");
      t.coeffs[v] += k;
      if (end == compact.size()) break;
      pos = end + 1;
    }
    return t;
  }

  std::vector<AddTerm> parse_terms(std::string_view text, std::vector<std::string> const& vars) {
    std::vector<AddTerm> out;
    std::size_t          line = 0;
    for (auto const& l : lex(text)) {
      line = l.number;
      std::string rest = l.raw;
      std::size_t from = 0;
      while (from <= rest.size()) {
        auto end = rest.find(',', from);
        if (end == std::string::npos) end = rest.size();
        auto const piece = rest.substr(from, end - from);
        if (piece.find_first_not_of(" \t") != std::string::npos) {
          try {
            out.push_back(parse_term(piece, vars));
          } catch (ParseError const& e) {
            throw ParseError(std::string(e.what()).substr(std::string(e.what()).find(": ") + 2),
                             line, from + e.column());
          }
        }
        if (end == rest.size()) break;
        from = end + 1;
      }
    }
    if (out.empty()) throw ParseError("no terms", line ? line : 1, 1);
    return out;
  }

  WreathPoint parse_point(std::string_view                text,
                          SemigroupPtr const&             base,
                          std::vector<std::string> const& vars) {
    auto const lines = lex(text);
    int        start = 1;
    std::map<std::size_t, std::pair<FinSuppVector, Coord>> seen;
    std::size_t                                            last_line = 0;
    for (std::size_t li = 0; li < lines.size(); ++li) {
      auto const& l = lines[li];
      last_line     = l.number;
      auto        raw = l.raw;
      auto const  first_col = l.tokens.front().column;
      if (li == 0 && (l.tokens.front().text == "start=0" || l.tokens.front().text == "start=1") &&
          l.tokens.size() == 1) {
        start = l.tokens.front().text.back() - '0';
        continue;
      }
      auto const colon = raw.find(':');
      if (colon == std::string::npos) fail(l, first_col, "expected '<var>: b=...'");
      auto name = raw.substr(0, colon);
      name.erase(0, name.find_first_not_of(" \t"));
      name.erase(name.find_last_not_of(" \t") + 1);
      auto const v = var_index(vars, name);
      if (v == vars.size()) fail(l, first_col, "unknown variable '" + name + "'");
      if (seen.contains(v)) fail(l, first_col, "variable '" + name + "' given twice");

      std::optional<Coord>                 b;
      Element                              fill = base->zero();
      std::vector<FinSuppVector::Entry>    entries;
      std::size_t                          from = colon + 1;
      auto element = [&](std::string const& id, std::size_t column) {
        auto e = base->find(id);
        if (!e) fail(l, column, "unknown element '" + id + "'");
        return *e;
      };
      while (from <= raw.size()) {
        auto end = raw.find(';', from);
        if (end == std::string::npos) end = raw.size();
        std::string field = raw.substr(from, end - from);
        auto const  lead  = field.find_first_not_of(" \t");
        if (lead != std::string::npos) {
          field.erase(0, lead);
          field.erase(field.find_last_not_of(" \t") + 1);
          auto const column = from + lead + 1;
          if (field.rfind("b=", 0) == 0) {
            auto const k = to_int(field.substr(2));
            if (!k || *k < start) fail(l, column, "bad b-value '" + field.substr(2) + "'");
            b = *k;
          } else if (field.rfind("default=", 0) == 0) {
            fill = element(field.substr(8), column);
          } else {
            std::istringstream in(field);
            std::string        item;
            while (in >> item) {
              auto const sep = item.find(':');
              auto const c   = sep == std::string::npos ? std::nullopt : to_int(item.substr(0, sep));
              if (!c) fail(l, column, "expected '<coordinate>:<element>', got '" + item + "'");
              if (*c < start) fail(l, column, "coordinate " + std::to_string(*c) + " below start");
              entries.emplace_back(*c, element(item.substr(sep + 1), column));
            }
          }
        }
        if (end == raw.size()) break;
        from = end + 1;
      }
      if (!b) fail(l, first_col, "missing b=");
      std::sort(entries.begin(), entries.end());
      for (std::size_t k = 1; k < entries.size(); ++k)
        if (entries[k].first == entries[k - 1].first)
          fail(l, first_col, "coordinate " + std::to_string(entries[k].first) + " given twice");
      seen.emplace(v, std::pair{FinSuppVector(base, start, fill, std::move(entries)), *b});
    }
    WreathPoint pt;
    for (std::size_t v = 0; v < vars.size(); ++v) {
      auto it = seen.find(v);
      if (it == seen.end())
        throw ParseError("no line for variable '" + vars[v] + "'", last_line + 1, 1);
      pt.a_part.push_back(it->second.first);
      pt.b_part.push_back(it->second.second);
    }
    return pt;
  }

  std::string emit_point(WreathPoint const& pt, std::vector<std::string> const& vars) {
    std::ostringstream out;
    if (!pt.a_part.empty() && pt.a_part.front().start() == 0) out << "start=0\n";
    for (std::size_t i = 0; i < pt.a_part.size(); ++i) {
      auto const& v = pt.a_part[i];
      out << vars.at(i) << ": b=" << pt.b_part[i]
          << "; default=" << v.semigroup().element_name(v.fill());
      if (!v.entries().empty()) {
        out << ';';
        for (auto const& [c, x] : v.entries()) out << ' ' << c << ':' << v.semigroup().element_name(x);
      }
      out << '\n';
    }
    return out.str();
  }

  std::string read_file(std::filesystem::path const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

}  // namespace wreathlab
