#include <iostream>
#include <string>
#include <vector>

#include "cheeger_gap/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return cheeger_gap::cli::run(args, std::cout, std::cerr);
}
