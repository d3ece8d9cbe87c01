#include <iostream>

#include "plonkalog/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  plonkalog::CliResult r = plonkalog::run_cli(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
