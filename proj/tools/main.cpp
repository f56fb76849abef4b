#include <iostream>
#include <string>
#include <vector>

#include "sysrisk/service/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sysrisk::service::cli_dispatch(args, std::cout, std::cerr);
}
