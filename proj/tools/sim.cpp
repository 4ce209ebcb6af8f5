#include <iostream>

#include "mgame/commands.hpp"

int main(int argc, char** argv) { return mgame::cli::run_cli(argc, argv, {std::cout, std::cerr}); }
