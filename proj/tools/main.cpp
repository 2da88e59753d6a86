#include <iostream>
#include <string>
#include <vector>

#include "indefsl/cli/run.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return indefsl::cli::run(args, std::cout, std::cerr);
}
