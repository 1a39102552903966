#include <iostream>

#include "treecomp/cli.hpp"

int main(int argc, char** argv) {
  return treecomp::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
