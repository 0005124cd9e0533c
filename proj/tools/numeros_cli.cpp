#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "numeros/errors.hpp"
#include "numeros/script.hpp"

int main(int argc, char** argv) {
  CLI::App app{"numeros: Euclidean numerosities of symbolic point sets"};

  std::string scriptPath;
  bool jsonOut = false;
  std::size_t budget = 48;
  std::string residuePreference = "lowest";
  std::size_t chainStages = 50;

  app.add_option("--script", scriptPath, "DSL script file (UTF-8)")->required();
  app.add_flag("--json", jsonOut, "emit one JSON object per command");
  app.add_option("--budget", budget, "oracle search budget (stages)");
  app.add_option("--residue-preference", residuePreference,
                 "residue class tie-breaking: lowest|highest")
      ->check(CLI::IsMember({"lowest", "highest"}));
  app.add_option("--chain-stages", chainStages,
                 "witness verification depth (default 50)");

  CLI11_PARSE(app, argc, argv);

  std::ifstream in(scriptPath, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open script file: " << scriptPath << "\n";
    return 2;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  numeros::RunConfig config;
  config.json = jsonOut;
  config.budget = budget;
  config.chainStages = chainStages;
  config.residuePreference =
      residuePreference == "highest"
          ? numeros::OracleConfig::ResiduePreference::Highest
          : numeros::OracleConfig::ResiduePreference::Lowest;

  try {
    numeros::Script script = numeros::parseScript(buf.str());
    numeros::RunResult result = numeros::runScript(script, config);
    if (jsonOut)
      std::cout << result.jsonLines;
    else
      std::cout << result.transcript;
    return result.exitCode;
  } catch (const numeros::SyntaxError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const numeros::EngineError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
