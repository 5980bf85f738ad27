#include <iostream>
#include <string>
#include <vector>

#include "avgrare/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return avgrare::run_cli(args, std::cout, std::cerr);
}
