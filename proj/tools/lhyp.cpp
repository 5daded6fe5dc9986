#include <iostream>

#include "lhyp/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return lhyp::run_cli(args, std::cout, std::cerr);
}
