#include <iostream>
#include <string>
#include <vector>

#include "bbd/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bbd::cli::run(args, std::cout, std::cerr, std::cin);
}
