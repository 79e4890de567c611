#include <iostream>

#include "pomfix/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pomfix::cli::run(args, std::cout, std::cerr);
}
