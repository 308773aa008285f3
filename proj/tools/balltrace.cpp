#include <iostream>

#include "balltrace/cli.hpp"

int main(int argc, char** argv) {
  return balltrace::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
