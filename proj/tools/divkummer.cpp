// Command-line front end: parses JSON module/filter/extension documents,
// dispatches to the computational operations and emits machine-readable
// reports.  Exit codes: 0 success, 1 mathematical refusal (NotPure,
// NotNormal, LevelTooSmall, ...), 2 input error.

#include "divkummer/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"divkummer: division in modules, (J,T)-extensions and Kummer bounds"};
  app.require_subcommand(0, 1);

  std::string filter, out_path, level;
  std::vector<std::string> inputs;
  std::string command;
  for (const std::string& name : divkum::command_names()) {
    CLI::App* sub = app.add_subcommand(name, "");
    sub->add_option("--filter", filter, "ideal filter: 0, 1, inf or p^inf");
    sub->add_option("--level", level, "truncation level");
    sub->add_option("--out", out_path, "write the report to a file instead of stdout");
    sub->add_option("inputs", inputs, "JSON input documents, shallow-merged in order");
    sub->callback([&command, name] { command = name; });
  }

  CLI11_PARSE(app, argc, argv);
  if (command.empty()) {
    std::cout << app.help();
    return 2;
  }

  divkum::Json doc = divkum::Json::object();
  for (const auto& path : inputs) {
    std::ifstream in(path);
    if (!in) {
      std::cerr << "cannot open " << path << "\n";
      return 2;
    }
    divkum::Json part;
    try {
      in >> part;
    } catch (const std::exception& e) {
      std::cerr << "bad JSON in " << path << ": " << e.what() << "\n";
      return 2;
    }
    if (!part.is_object()) {
      std::cerr << path << ": top-level JSON object expected\n";
      return 2;
    }
    for (auto it = part.begin(); it != part.end(); ++it) doc[it.key()] = it.value();
  }
  if (!filter.empty()) doc["filter"] = filter;
  if (!level.empty()) doc["level"] = level;

  divkum::RunResult result = divkum::run_command(command, doc);
  std::string text = result.report.dump(2) + "\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << text;
  } else {
    std::cout << text;
  }
  return result.exit_code;
}
