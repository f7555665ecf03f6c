#include <iostream>
#include <string>
#include <vector>

#include "orbitmetric/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return orbitmetric::run_cli(args, std::cout, std::cerr);
}
