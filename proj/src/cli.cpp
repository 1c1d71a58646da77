#include "wreathlab/cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wreathlab/additive.hpp"
#include "wreathlab/error.hpp"
#include "wreathlab/io.hpp"
#include "wreathlab/noether.hpp"
#include "wreathlab/qcompact.hpp"

namespace wreathlab {

  namespace {

    using nlohmann::json;

    struct Options {
      std::string semigroup;
      std::string system;
      std::string equation_file;
      std::string equation_text;
      std::string point;
      std::string terms_file;
      std::string terms_text;
      std::string bounds;
      std::string domain = "positive";
      std::string out;
      std::size_t length    = 6;
      std::size_t n         = 0;
      std::size_t instances = 0;
    };

    struct Report {
      json result       = json::object();
      json certificates = json::object();
      int  code         = exit_ok;
    };

    SemigroupPtr load_semigroup(Options const& o) {
      if (o.semigroup.empty()) throw UsageError("--semigroup is required");
      return std::make_shared<FiniteSemigroup const>(parse_semigroup(read_file(o.semigroup)));
    }

    System load_system(Options const& o) {
      if (o.system.empty()) throw UsageError("--system is required");
      return parse_system(read_file(o.system));
    }

    Equation load_equation(Options const& o, System const& sys) {
      if (!o.equation_text.empty()) return parse_equation(o.equation_text, sys.vars);
      if (o.equation_file.empty()) throw UsageError("--equation or --eq is required");
      return parse_equation(read_file(o.equation_file), sys.vars);
    }

    BoxBounds parse_bounds(std::string const& s) {
      BoxBounds   b;
      char        comma = 0;
      std::istringstream in(s);
      if (!(in >> b.window >> comma >> b.max_b) || comma != ',' || !in.eof() || b.window < 1 ||
          b.max_b < 1)
        throw UsageError("--bounds must read W,M with positive integers, got '" + s + "'");
      return b;
    }

    json terms_json(std::vector<AddTerm> const& ts, std::vector<std::string> const& vars) {
      json a = json::array();
      for (auto const& t : ts) a.push_back(to_string(t, vars));
      return a;
    }

    json refs_json(System const& sys, std::vector<EquationRef> const& refs) {
      json a = json::array();
      for (auto const& r : refs) a.push_back(describe(sys, r));
      return a;
    }

    json basis_json(SolutionBasis const& b) {
      return {{"consistent", b.consistent},
              {"domain", b.domain == Domain::positive ? "positive" : "nonneg"},
              {"particular", b.particular},
              {"homogeneous", b.homogeneous}};
    }

    json point_json(WreathPoint const& pt, std::vector<std::string> const& vars) {
      json        lines = json::array();
      std::string text  = emit_point(pt, vars);
      std::istringstream in(text);
      for (std::string l; std::getline(in, l);) lines.push_back(l);
      return lines;
    }

    // First K instances of every schema appended as finite equations.
    System expand_schemas(System const& sys, std::size_t k) {
      System out{sys.vars, sys.equations, {}};
      for (auto const& sc : sys.schemas)
        for (std::int64_t i = sc.first; sc.contains(i) && i < sc.first + static_cast<std::int64_t>(k); ++i)
          out.equations.push_back(instantiate_schema(sc, i));
      return out;
    }

    Report check_semigroup_cmd(Options const& o) {
      auto const a = load_semigroup(o);
      Report     r;
      r.result = {{"name", a->name()},
                  {"size", a->size()},
                  {"elements", a->element_names()},
                  {"zero", a->element_name(a->zero())},
                  {"valid", true}};
      r.certificates = {{"triples_checked", a->size() * a->size() * a->size()}};
      return r;
    }

    Report nilpotency_cmd(Options const& o) {
      auto const a   = load_semigroup(o);
      auto const rep = nilpotency_index(*a, o.length);
      Report     r;
      r.result["nilpotent"] = rep.nilpotent;
      if (rep.nilpotent) {
        r.result["index"] = *rep.index;
        auto const longest = *rep.index > 1 ? nonzero_product_witness(*a, *rep.index - 1)
                                            : std::nullopt;
        if (longest) {
          json w = json::array();
          for (auto x : *longest) w.push_back(a->element_name(x));
          r.certificates["longest_nonzero_product"] = w;
        }
      } else {
        r.result["witness_length"] = rep.probe_length;
        json w                     = json::array();
        for (auto x : rep.witness.value_or(std::vector<Element>{})) w.push_back(a->element_name(x));
        r.certificates["witness"] = w;
      }
      return r;
    }

    Domain parse_domain(std::string const& d) {
      if (d == "positive") return Domain::positive;
      if (d == "nonneg") return Domain::nonneg;
      throw UsageError("--domain must be positive or nonneg");
    }

    Report solve_b_cmd(Options const& o) {
      auto const sys = load_system(o);
      auto const fes = finite_equivalent_subsystem(sys, parse_domain(o.domain));
      Report     r;
      r.result                  = basis_json(fes.basis);
      r.result["subsystem"]     = refs_json(sys, fes.kept);
      r.certificates["schemas_scanned_until"] = fes.scanned_until;
      return r;
    }

    json side_json(Word const& w, std::vector<std::string> const& vars) {
      auto const [ta, tb] = decompose(w, vars.size());
      json wreath         = json::array();
      for (auto const& f : ta.factors)
        wreath.push_back(f.prefix.is_zero() ? vars[f.var]
                                            : "sigma_{" + to_string(f.prefix, vars) + "}(" +
                                                  vars[f.var] + ")");
      return {{"word", to_string(w, vars)}, {"wreath", wreath}, {"additive", to_string(tb, vars)}};
    }

    Report decompose_cmd(Options const& o) {
      auto sys = load_system(o);
      std::vector<Equation> eqs;
      if (!o.equation_text.empty() || !o.equation_file.empty())
        eqs.push_back(load_equation(o, sys));
      else
        eqs = expand_schemas(sys, o.instances).equations;
      Report r;
      r.result["equations"] = json::array();
      for (auto const& e : eqs)
        r.result["equations"].push_back({{"equation", to_string(e, sys.vars)},
                                         {"lhs", side_json(e.lhs, sys.vars)},
                                         {"rhs", side_json(e.rhs, sys.vars)}});
      return r;
    }

    Report noether_witness_cmd(Options const& o) {
      if (o.n < 1) throw UsageError("--n must be at least 1");
      auto const a   = load_semigroup(o);
      auto const rep = verify_noetherian_failure(a, o.n);
      auto const sys = theoremA_system();
      Report     r;
      json       chain = json::array();
      for (auto x : rep.witness.chain) chain.push_back(a->element_name(x));
      r.result = {{"n", o.n},
                  {"verified", rep.ok()},
                  {"instances_hold", rep.instance_holds},
                  {"violated_instance", o.n},
                  {"failing_projection", rep.failing_coordinate},
                  {"lhs_projection_1", a->element_name(rep.lhs_value)},
                  {"rhs_projection_1", a->element_name(rep.rhs_value)}};
      json rejected = json::array();
      for (auto const& l : rep.witness.rejected)
        rejected.push_back({{"segment_end", l.segment_end}, {"spike", l.spike}});
      r.certificates = {{"point", point_json(rep.witness.point, sys.vars)},
                        {"chain", chain},
                        {"layout",
                         {{"segment_end", rep.witness.layout.segment_end},
                          {"spike", rep.witness.layout.spike}}},
                        {"rejected_layouts", rejected}};
      if (!rep.ok()) r.code = exit_internal;
      return r;
    }

    // Fills the B-level status; returns false when the pipeline cannot go on.
    bool b_status(ConsequenceInstance const& inst, Report& r) {
      auto const pre = check_B_precondition(inst);
      switch (pre.status) {
        case BStatus::equivalent: r.result["b_status"] = "equivalent"; return true;
        case BStatus::inconsistent:
          r.result["b_status"] = "inconsistent";
          r.certificates["subsystem"] = refs_json(inst.system, inst.hat.kept);
          return false;
        case BStatus::refuted:
          r.result["b_status"]      = "refuted";
          r.result["b_witness"]     = *pre.witness;
          r.code                    = exit_refuted;
          return false;
      }
      return false;
    }

    Report star_cmd(Options const& o) {
      auto a    = load_semigroup(o);
      auto sys  = load_system(o);
      auto e    = load_equation(o, sys);
      auto inst = make_instance(a, sys, e);
      Report r;
      r.result["subsystem_hat"] = refs_json(inst.system, inst.hat.kept);
      if (!b_status(inst, r)) return r;
      auto const tl = t_less_set(inst);
      auto const st = star_subsystem(inst, tl.size());
      r.result["t_less"]      = terms_json(tl, sys.vars);
      r.result["t_less_size"] = tl.size();
      r.result["star"]        = refs_json(inst.system, st.refs);
      r.certificates["basis"] = basis_json(inst.basis());
      r.certificates["excluded_sample"] = refs_json(inst.system, st.excluded_sample);
      return r;
    }

    Report discriminate_cmd(Options const& o) {
      auto const sys = load_system(o);
      std::vector<AddTerm> terms;
      if (!o.terms_text.empty())
        terms = parse_terms(o.terms_text, sys.vars);
      else if (!o.terms_file.empty())
        terms = parse_terms(read_file(o.terms_file), sys.vars);
      else
        throw UsageError("--terms or --term-list is required");
      auto const fes = finite_equivalent_subsystem(sys);
      if (!fes.basis.consistent) throw PreconditionError("S_B is inconsistent");
      auto const d = discriminating_point(terms, fes.basis);
      Report     r;
      r.result = {{"Q", d.point}, {"classes", d.classes}, {"phase", d.phase}};
      json table = json::array();
      for (std::size_t k = 0; k < terms.size(); ++k)
        table.push_back({{"term", to_string(terms[k], sys.vars)},
                         {"value", d.values[k]},
                         {"class", d.class_index[k]}});
      r.certificates = {{"values", table},
                        {"particular_index", d.particular_index},
                        {"multipliers", d.multipliers}};
      return r;
    }

    Report transport_cmd(Options const& o) {
      auto a    = load_semigroup(o);
      auto sys  = load_system(o);
      auto e    = load_equation(o, sys);
      auto inst = make_instance(a, sys, e);
      Report r;
      if (!b_status(inst, r)) return r;
      std::optional<WreathPoint> failing;
      if (!o.point.empty()) {
        failing = parse_point(read_file(o.point), a, sys.vars);
      } else if (!o.bounds.empty()) {
        auto const tl = t_less_set(inst);
        auto const st = star_subsystem(inst, tl.size());
        auto const bc = bounded_consequence_check(a, st.star, e, parse_bounds(o.bounds));
        r.certificates["search_nodes"] = bc.nodes;
        if (bc.holds) {
          r.result["status"] = "holds-in-box";
          return r;
        }
        failing = bc.counterexample;
      } else {
        throw UsageError("transport needs --point or --bounds");
      }
      auto const res = propagate_counterexample(inst, *failing);
      r.result = {{"status", "counterexample"},
                  {"b_status", "equivalent"},
                  {"point", point_json(res.result, sys.vars)},
                  {"Q", res.result.b_part},
                  {"beta", res.beta},
                  {"t_less_size", res.t_less.size()},
                  {"star", refs_json(sys, res.star.refs)},
                  {"support", res.support}};
      json long_terms = json::array();
      for (auto const& lt : res.long_terms)
        long_terms.push_back({{"equation", describe(sys, lt.ref)},
                              {"lengths", {lt.lhs_length, lt.rhs_length}},
                              {"shortcut_applies", lt.shortcut_applies},
                              {"direct_both_zero", lt.direct_both_zero}});
      r.certificates["input_point"]       = point_json(*failing, sys.vars);
      r.certificates["t_less"]            = terms_json(res.t_less, sys.vars);
      r.certificates["t_star_size"]       = res.terms.t_star.size();
      r.certificates["t_size"]            = res.terms.t_full.size();
      r.certificates["discrimination"]    = {{"phase", res.discrimination.phase},
                                             {"classes", res.discrimination.classes}};
      r.certificates["index_map"]         = res.transported.index_map;
      r.certificates["index_map_top"]     = res.transported.index_map_top;
      r.certificates["shift_to_first"]    = true;
      r.certificates["doubling_claims"]   = true;
      r.certificates["transport_checks"]  = {{"star_b", res.transport_check.star_b_holds},
                                             {"star_a", res.transport_check.star_a_holds},
                                             {"projection0_fails", res.transport_check.projection0_fails}};
      r.certificates["star_holds"]        = res.star_holds;
      r.certificates["e_fails"]           = res.e_fails;
      r.certificates["long_terms"]        = long_terms;
      r.code                              = exit_refuted;
      return r;
    }

    Report verify_cmd(Options const& o) {
      auto a   = load_semigroup(o);
      auto sys = load_system(o);
      auto e   = load_equation(o, sys);
      if (o.bounds.empty()) throw UsageError("verify needs --bounds W,M");
      if (!sys.is_finite()) {
        if (o.instances == 0)
          throw UsageError("system has schemas; pass --instances K to check a finite prefix");
        sys = expand_schemas(sys, o.instances);
      }
      auto const bounds = parse_bounds(o.bounds);
      auto const budget = enumeration_budget();
      auto const bc     = bounded_consequence_check(a, sys, e, bounds, budget);
      Report     r;
      r.result["status"] = bc.holds ? "holds-in-box" : "counterexample";
      if (bc.counterexample) r.result["counterexample"] = point_json(*bc.counterexample, sys.vars);
      r.certificates = {{"b_points_examined", bc.b_points_examined},
                        {"nodes", bc.nodes},
                        {"budget", budget},
                        {"equations", sys.equations.size()}};
      if (!bc.holds) r.code = exit_refuted;
      return r;
    }

  }  // namespace

  int run_command(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"wreathlab: equations over wreath products of finite semigroups and N"};
    app.require_subcommand(1);
    Options o;
    json    inputs = json::object();

    auto add = [&](CLI::App* sub, char const* flag, std::string& field, char const* help) {
      sub->add_option(flag, field, help);
    };
    struct Cmd {
      char const*                           name;
      char const*                           help;
      std::function<Report(Options const&)> run;
    };
    std::vector<Cmd> cmds{
        {"check-semigroup", "parse and validate a semigroup table", check_semigroup_cmd},
        {"nilpotency", "nilpotency index or a nonzero product", nilpotency_cmd},
        {"solve-b", "basis of the additive part of a system", solve_b_cmd},
        {"decompose", "wreath and additive parts of equations", decompose_cmd},
        {"noether-witness", "point separating S_n from the witness schema", noether_witness_cmd},
        {"star", "T_< and the finite subsystem S*", star_cmd},
        {"discriminate", "a solution separating non-equivalent terms", discriminate_cmd},
        {"transport", "carry a counterexample of S* to one of S", transport_cmd},
        {"verify", "bounded consequence check", verify_cmd},
    };
    std::function<Report(Options const&)> chosen;
    std::string                           chosen_name;
    for (auto const& c : cmds) {
      auto* sub = app.add_subcommand(c.name, c.help);
      add(sub, "--semigroup", o.semigroup, "semigroup file");
      add(sub, "--system", o.system, "system file");
      add(sub, "--equation", o.equation_file, "file with one equation");
      add(sub, "--eq", o.equation_text, "equation text, e.g. 'x1 x3 = x4 x6'");
      add(sub, "--point", o.point, "point file");
      add(sub, "--terms", o.terms_file, "file of terms");
      add(sub, "--term-list", o.terms_text, "comma separated terms");
      add(sub, "--bounds", o.bounds, "W,M: support window and maximal b-value");
      add(sub, "--domain", o.domain, "positive or nonneg");
      add(sub, "--out", o.out, "write the report here instead of stdout");
      sub->add_option("--length", o.length, "probe length for nilpotency");
      sub->add_option("--n", o.n, "number of schema instances");
      sub->add_option("--instances", o.instances, "expand this many instances per schema");
      sub->callback([&, c] {
        chosen      = c.run;
        chosen_name = c.name;
      });
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
      app.parse(rev);
    } catch (CLI::CallForHelp const&) {
      out << app.help();
      return exit_ok;
    } catch (CLI::ParseError const& e) {
      err << "wreathlab: " << e.what() << '\n';
      return exit_input_error;
    }

    for (auto const& [k, v] : std::vector<std::pair<char const*, std::string const*>>{
             {"semigroup", &o.semigroup}, {"system", &o.system}, {"equation", &o.equation_file},
             {"eq", &o.equation_text}, {"point", &o.point}, {"terms", &o.terms_file},
             {"term_list", &o.terms_text}, {"bounds", &o.bounds}})
      if (!v->empty()) inputs[k] = *v;
    if (chosen_name == "nilpotency") inputs["length"] = o.length;
    if (o.n) inputs["n"] = o.n;
    if (o.instances) inputs["instances"] = o.instances;

    json report{{"command", chosen_name}, {"inputs", inputs}};
    auto const t0   = std::chrono::steady_clock::now();
    int        code = exit_ok;
    try {
      auto r                 = chosen(o);
      report["result"]       = std::move(r.result);
      report["certificates"] = std::move(r.certificates);
      code                   = r.code;
    } catch (BudgetExceeded const& e) {
      report["result"] = {{"error", {{"kind", "budget"}, {"message", e.what()}, {"estimate", e.estimate()}}}};
      code             = exit_input_error;
    } catch (InputError const& e) {
      report["result"] = {{"error", {{"kind", "input"}, {"message", e.what()}}}};
      code             = exit_input_error;
    } catch (BoundExhausted const& e) {
      report["result"] = {{"error", {{"kind", "bound-exhausted"}, {"message", e.what()}}}};
      code             = exit_internal;
    } catch (std::exception const& e) {
      report["result"] = {{"error", {{"kind", "internal"}, {"message", e.what()}}}};
      code             = exit_internal;
    }
    if (report["result"].contains("error")) {
      report["certificates"] = json::object();
      err << "wreathlab " << chosen_name << ": " << report["result"]["error"]["message"].get<std::string>()
          << '\n';
    }
    report["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    auto const text = report.dump(2) + "\n";
    if (o.out.empty()) {
      out << text;
    } else {
      std::ofstream f(o.out);
      if (!f) {
        err << "wreathlab: cannot write " << o.out << '\n';
        return exit_input_error;
      }
      f << text;
    }
    return code;
  }

}  // namespace wreathlab
