#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "groupoidal/cli.hpp"

using namespace groupoidal;

int main(int argc, char** argv) {
  CLI::App app{"groupoidal: groupoids, bundles and bibundles over finite sites"};
  std::string cmd, model, backend = "finset", json_path;
  std::vector<std::string> names;
  std::optional<std::size_t> max;
  app.add_option("command", cmd, "validate | compose | equiv | decompose | orbit | nerve | axioms")->required();
  app.add_option("names", names, "declared or builtin names");
  app.add_option("--model", model, "model file")->check(CLI::ExistingFile);
  app.add_option("--backend", backend, "finset or fintop")->check(CLI::IsMember({"finset", "fintop"}));
  app.add_option("--max", max, "carrier cap for brute-force searches (default 4, or GROUPOIDAL_MAX)");
  app.add_option("--json", json_path, "write the report as JSON ('-' for stdout)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Report rep;
  try {
    RunOptions opts;
    opts.backend = backend == "fintop" ? Backend::FinTop : Backend::FinSet;
    opts.cap = effective_cap(max, std::getenv("GROUPOIDAL_MAX"));
    Env env;
    if (!model.empty()) {
      std::ifstream in(model);
      std::stringstream text;
      text << in.rdbuf();
      env = build_env(parse_syntax(text.str()));
    }
    rep = run_command(cmd, names, env, opts);
  } catch (const std::exception& e) {
    rep = error_report(cmd, e);
  }

  if (json_path == "-") {
    std::cout << to_json(rep);
  } else {
    std::cout << to_text(rep);
    if (!json_path.empty()) {
      std::ofstream out(json_path);
      if (!out) {
        std::cerr << "cannot write " << json_path << '\n';
        return 2;
      }
      out << to_json(rep);
    }
  }
  return rep.exit_code();
}
