#include <iostream>

#include "bracketlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return blab::run_cli(args, std::cout, std::cerr);
}
