#include <iostream>
#include <string>
#include <vector>

#include "spdid/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return spdid::cli::main(args, std::cout, std::cerr);
}
