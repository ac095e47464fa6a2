#include <iostream>

#include "fracta/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fracta::run_command(args, std::cout, std::cerr);
}
