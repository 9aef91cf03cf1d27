#include <iostream>
#include <string>
#include <vector>

#include "tfmst/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tfmst::cli::run(args, std::cout, std::cerr);
}
