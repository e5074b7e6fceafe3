#include <iostream>

#include "searchenv/service/cli.hpp"

int main(int argc, char** argv) {
  return searchenv::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
