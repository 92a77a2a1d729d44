#include <iostream>
#include <string>
#include <vector>

#include "acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return anharmonic::cli::run(args, std::cout, std::cerr);
}
