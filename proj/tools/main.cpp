#include <iostream>

#include "fibers/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fibers::cli::run(args, std::cout, std::cerr);
}
