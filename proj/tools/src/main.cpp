#include <iostream>
#include <string>
#include <vector>

#include "sylvester_io/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return sylvester::cli::run_command(args, std::cout, std::cerr);
}
