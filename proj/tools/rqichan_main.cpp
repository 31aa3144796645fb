#include <iostream>

#include "rqichan/cli/commands.hpp"

int main(int argc, char** argv) { return rqichan::cli::run_main(argc, argv, std::cout, std::cerr); }
