#ifndef WREATHLAB_IO_HPP_
#define WREATHLAB_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "wreathlab/semigroup.hpp"
#include "wreathlab/terms.hpp"

namespace wreathlab {

  // semigroup <name>
  // elements <id>+
  // zero <id>
  // table
  // <row per left factor>
  // Runs validate_semigroup; a failing table is a StructuralError.
  FiniteSemigroup parse_semigroup(std::string_view text);
  std::string     emit_semigroup(FiniteSemigroup const& s);

  // vars x1 .. xn   (or an explicit list)
  // eq <word> = <word>                       letters may carry ^k
  // schema i>=K : <pattern> = <pattern>      letters may carry ^k, ^i, ^ci+k
  // schema K<=i<=L : ...
  System      parse_system(std::string_view text);
  std::string emit_system(System const& sys);

  // "eq w = w" or "w = w"; the file form may hold comments and blank lines.
  Equation parse_equation(std::string_view text, std::vector<std::string> const& vars);

  // "0", "x1", "2x1+x3"; a list is separated by commas or newlines.
  AddTerm              parse_term(std::string_view text, std::vector<std::string> const& vars);
  std::vector<AddTerm> parse_terms(std::string_view text, std::vector<std::string> const& vars);

  // One line per variable:  x1: b=1; default=0; 1:e 2:e
  // An optional first line "start=0" selects the monoid variant.
  WreathPoint parse_point(std::string_view                text,
                          SemigroupPtr const&             base,
                          std::vector<std::string> const& vars);
  std::string emit_point(WreathPoint const& pt, std::vector<std::string> const& vars);

  // Throws UsageError when the file cannot be read.
  std::string read_file(std::filesystem::path const& path);

}  // namespace wreathlab

#endif  // WREATHLAB_IO_HPP_
