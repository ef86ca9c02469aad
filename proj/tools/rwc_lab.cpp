#include <iostream>

#include "rwc/cli.hpp"

int main(int argc, char** argv) { return rwc::cli::main_entry(argc, argv, std::cout, std::cerr); }
