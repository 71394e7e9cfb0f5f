#include <iostream>
#include <string>
#include <vector>

#include "twistscl/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return twistscl::cli::main(args, std::cout, std::cerr);
}
