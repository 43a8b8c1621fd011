#include <iostream>

#include "plf/cli.hpp"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return plf::cli::run(args, std::cout, std::cerr);
}
