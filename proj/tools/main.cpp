#include <iostream>
#include <string>
#include <vector>

#include "chigraph/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return chigraph::cli::run(args, std::cout, std::cerr);
}
