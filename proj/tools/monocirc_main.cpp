#include <iostream>

#include "monocirc/cli.hpp"

int main(int argc, char** argv) { return monocirc::cli::run(argc, argv, std::cout, std::cerr); }
