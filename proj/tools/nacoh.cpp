// nacoh: run a task on an instance file.
//
//   nacoh h1 --input instances/catalog/z2_on_z_lattice.json --lattice
//   nacoh --input instances/catalog/q8_partially_crossed.json --task classify --json

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nacoh/run.hpp"

namespace {

int usage_error(std::string const& msg, bool as_json) {
  if (as_json) {
    nacoh::json j;
    j["ok"] = false;
    j["error"] = {{"kind", "Usage"}, {"message", msg}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cerr << "nacoh: " << msg << "\n";
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-abelian first cohomology of finite groups with coefficients in crossed bimodules"};
  std::string task_pos, task_opt, input;
  bool as_json = false, lattice = false, cayley = false;
  std::optional<std::uint64_t> max_der, seed;
  std::optional<unsigned> threads;

  app.add_option("TASK", task_pos, "verify | classify | der | h0 | h1 | report");
  app.add_option("--input,-i", input, "instance file")->required();
  app.add_option("--task", task_opt, "task (overrides the file and the positional argument)");
  app.add_flag("--json", as_json, "print the JSON report");
  app.add_option("--max-der", max_der, "bound on |Der|");
  app.add_option("--threads", threads, "threads for derivation enumeration");
  app.add_option("--seed", seed, "seed for sampled associativity checks");
  app.add_flag("--lattice", lattice, "h1 over the integers from the lattice section");
  app.add_flag("--cayley", cayley, "include the H1 Cayley table in the report");

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return 2;
  }

  nacoh::RunOptions ro;
  if (!task_opt.empty())
    ro.task = task_opt;
  else if (!task_pos.empty())
    ro.task = task_pos;
  if (ro.task && !nacoh::is_task(*ro.task)) return usage_error("unknown task '" + *ro.task + "'", as_json);
  ro.lattice = lattice;
  ro.cayley = cayley;
  ro.max_der = max_der;
  ro.threads = threads;
  ro.seed = seed;

  std::ifstream in(input);
  if (!in) return usage_error("cannot read '" + input + "'", as_json);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  nacoh::InstanceSpec spec;
  try {
    spec = nacoh::parse_instance(text);
  } catch (nacoh::Error const& e) {
    return usage_error(input + ": " + e.what(), as_json);
  }

  auto res = nacoh::run_task(spec, ro);
  if (as_json)
    std::cout << res.report.dump(2) << "\n";
  else
    std::cout << nacoh::summarize(res.report);
  return res.exit_code;
}
