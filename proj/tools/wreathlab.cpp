#include <iostream>

#include "wreathlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return wreathlab::run_command(args, std::cout, std::cerr);
}
