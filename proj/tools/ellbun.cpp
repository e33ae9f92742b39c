#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ellbun/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> env_curve;
  if (const char* env = std::getenv("ELLBUN_CURVE")) env_curve = env;
  return ellbun::cli::run_command(args, std::cout, std::cerr, env_curve);
}
