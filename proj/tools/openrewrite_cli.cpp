#include <iostream>

#include "openrewrite/cli.hpp"

int main(int argc, char** argv) { return openrewrite::run_cli(argc, argv, std::cout, std::cerr); }
