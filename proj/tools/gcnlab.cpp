#include <iostream>
#include <string>
#include <vector>

#include "gcnlab/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gcnlab::cli::cli_main(args, std::cout, std::cerr);
}
