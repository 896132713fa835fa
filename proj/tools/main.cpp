#include <iostream>
#include <string>
#include <vector>

#include "fanoforge/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fanoforge::cli::run(args, std::cout, std::cerr);
}
