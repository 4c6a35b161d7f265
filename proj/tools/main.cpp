#include <unistd.h>

#include <iostream>

#include "mwrank/cli.hpp"

int main(int argc, char** argv) { return mw::run_cli(argc, argv, std::cout, std::cerr, isatty(STDOUT_FILENO)); }
