#include <iostream>
#include <string>
#include <vector>

#include "fuzzydl_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fuzzydl::cli::RunCli(std::move(args), std::cout, std::cerr);
}
