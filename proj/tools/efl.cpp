#include <iostream>
#include <string>
#include <vector>

#include "efl/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return efl::run(args, efl::environment_snapshot(), std::cout, std::cerr);
}
