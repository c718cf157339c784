#include "catperc/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return catperc::run_cli(args, std::cout, std::cerr);
}
