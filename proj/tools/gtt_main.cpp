#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gtt/decomplexify.hpp"
#include "gtt/dyninterp.hpp"
#include "gtt/dynamism.hpp"
#include "gtt/elaborate.hpp"
#include "gtt/harness.hpp"
#include "gtt/machine.hpp"
#include "gtt/typecheck.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "ERR 0:0 E_IO cannot open " << path << "\n";
    std::exit(2);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

gtt::TermPtr load_program(const std::string& path) {
  return gtt::parse_term(slurp(path));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gtt: gradually typed call-by-push-value toolchain"};
  app.require_subcommand(1);

  std::string file, interp_name = "natural", emit = "cbpvstar", law_filter;
  std::string type_a, type_b;
  uint64_t fuel = 100000;
  int depth = 3;
  bool json_out = false;

  auto* check = app.add_subcommand("check", "typecheck a program file");
  check->add_option("file", file)->required();

  auto* dyn = app.add_subcommand("dyn", "decide type dynamism and print the derivation");
  dyn->add_option("typeA", type_a)->required();
  dyn->add_option("typeA2", type_b)->required();

  auto* elab = app.add_subcommand("elab", "elaborate casts to contracts (CBPV*)");
  elab->add_option("file", file)->required();
  elab->add_option("--interp", interp_name, "natural|scheme");
  elab->add_option("--emit", emit)->check(CLI::IsMember({"cbpvstar"}));

  auto* simplify = app.add_subcommand("simplify", "eliminate complex values and stacks");
  simplify->add_option("file", file)->required();

  auto* run = app.add_subcommand("run", "evaluate a program");
  run->add_option("file", file)->required();
  run->add_option("--interp", interp_name, "natural|scheme");
  run->add_option("--fuel", fuel);

  auto* test = app.add_subcommand("test", "run verification suites");
  auto* laws = test->add_subcommand("laws", "run the law suite over the type universe");
  laws->add_option("--interp", interp_name, "natural|scheme");
  laws->add_option("--depth", depth);
  laws->add_option("--fuel", fuel);
  laws->add_option("--law", law_filter, "run a single law by name");
  laws->add_flag("--json", json_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*check) {
      gtt::TermPtr m = load_program(file);
      gtt::check_program(m, gtt::Stage::GTT);
      std::cout << "OK " << gtt::print_type(gtt::ty_ret(gtt::ty_bool())) << "\n";
      return 0;
    }
    if (*dyn) {
      gtt::TypePtr a = gtt::parse_type(type_a);
      gtt::TypePtr b = gtt::parse_type(type_b);
      if (gtt::is_value_type(a) != gtt::is_value_type(b)) {
        std::cout << "NOT DERIVABLE\n";
        return 1;
      }
      gtt::DynDerivPtr d = gtt::is_value_type(a) ? gtt::derive_v(a, b) : gtt::derive_c(a, b);
      if (!d) {
        std::cout << "NOT DERIVABLE\n";
        return 1;
      }
      std::cout << gtt::print_deriv(d);
      return 0;
    }
    if (*elab) {
      const gtt::Interp& interp = gtt::interp_by_name(interp_name);
      gtt::TermPtr m = load_program(file);
      gtt::check_program(m, gtt::Stage::GTT);
      std::cout << gtt::print_term(gtt::elab_term(m, interp)) << "\n";
      return 0;
    }
    if (*simplify) {
      gtt::TermPtr m = load_program(file);
      gtt::check_program(m, gtt::Stage::CBPVStar);
      std::cout << gtt::print_term(gtt::simp_comp(m)) << "\n";
      return 0;
    }
    if (*run) {
      const gtt::Interp& interp = gtt::interp_by_name(interp_name);
      gtt::TermPtr m = load_program(file);
      gtt::check_program(m, gtt::Stage::GTT);
      gtt::TermPtr op = gtt::simp_comp(gtt::elab_term(m, interp));
      gtt::EvalStats st = gtt::eval(op, fuel);
      if (st.result.kind == gtt::ResultKind::Timeout)
        std::cout << "RESULT: timeout(" << st.steps << ")\n";
      else
        std::cout << "RESULT: " << gtt::result_str(st.result) << "\n";
      return 0;
    }
    if (*laws) {
      const gtt::Interp& interp = gtt::interp_by_name(interp_name);
      gtt::SuiteOptions opts;
      opts.harness.enumeration.depth = depth;
      opts.harness.fuel = fuel;
      opts.universe_depth = depth;
      opts.law_filter = law_filter;
      auto reports = gtt::run_law_suite(interp, opts);
      size_t failures = 0;
      if (json_out) {
        std::cout << gtt::law_suite_json(reports, interp, opts) << "\n";
        for (auto& r : reports) failures += r.failures.size();
      } else {
        std::string current;
        int law_instances = 0;
        size_t law_failures = 0;
        auto flush = [&]() {
          if (current.empty()) return;
          std::cout << (law_failures ? "FAIL " : "PASS ") << current << " ("
                    << law_instances << " instances, depth " << depth << ")\n";
          failures += law_failures;
        };
        for (auto& r : reports) {
          if (r.law != current) {
            flush();
            current = r.law;
            law_instances = 0;
            law_failures = 0;
          }
          law_instances += r.instances;
          law_failures += r.failures.size();
          for (auto& f : r.failures)
            std::cout << "  counterexample at " << r.type << ": " << f.observer
                      << "  lhs=" << f.lhs_result << " rhs=" << f.rhs_result << "\n";
        }
        flush();
      }
      return failures == 0 ? 0 : 1;
    }
  } catch (const gtt::Error& e) {
    std::cerr << e.formatted() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "ERR 0:0 E_INTERNAL " << e.what() << "\n";
    return 1;
  }
  return 2;
}
