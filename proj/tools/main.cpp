// divzero: command-line front end for the verification and closure jobs.

#include "divzero/jobs.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

namespace {

using namespace divzero::jobs;

struct Args {
  std::string config;
  std::string out;
  std::string format = "json";
};

int emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out);
  if (!f || !(f << text)) {
    std::cerr << "error: --out: cannot write \"" << out << "\"\n";
    return 2;
  }
  return 0;
}

int execute(Command cmd, const Args& a, const RunOptions& opt) {
  Report r;
  try {
    r = run(cmd, load_config(a.config), opt);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    r = error_report(cmd, e.what(), opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    r = error_report(cmd, e.what(), opt);
  }
  const std::string text = a.format == "text" ? render_text(r) : render_json(r);
  if (emit(text, a.out)) return 2;
  return exit_code(r.outcome);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for divergence-zero Lie algebras and their modules"};
  app.require_subcommand(1);
  RunOptions opt;
  app.add_option("--seed", opt.seed, "Seed for randomized sampling")->capture_default_str();
  app.add_flag("--timing", opt.timing, "Add wall-clock timing to the report");

  std::map<Command, Args> args;
  std::map<CLI::App*, Command> which;
  auto sub = [&](Command c, const std::string& help) {
    Args& a = args[c];
    CLI::App* s = app.add_subcommand(to_string(c), help);
    s->add_option("--config", a.config, "Job config (JSON)")->required();
    s->add_option("--out", a.out, "Write the report here instead of stdout");
    which[s] = c;
    return s;
  };
  sub(Command::VerifyAlgebra, "Antisymmetry, Jacobi and subalgebra closure on random triples");
  sub(Command::VerifyModule, "Module axiom, W-invariance and cocycle suites");
  sub(Command::Closure, "Submodule closure with classification")
      ->add_option("--format", args[Command::Closure].format, "Report format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  sub(Command::QtorusInfo, "sigma/f samples, Rad_q basis and congruence classes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  for (auto& [s, c] : which)
    if (s->parsed()) return execute(c, args[c], opt);
  return 2;
}
