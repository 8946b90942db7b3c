#include <iostream>

#include "capwave/app/commands.hpp"

int main(int argc, char** argv) { return capwave::app::run(argc, argv, std::cout, std::cerr); }
