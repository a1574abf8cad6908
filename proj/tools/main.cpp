#include <iostream>
#include <string>
#include <vector>

#include "ellpot/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ellpot::cli::run(args, std::cout, std::cerr);
}
