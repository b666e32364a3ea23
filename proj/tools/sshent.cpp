#include <iostream>

#include "sshent/cli.hpp"

int main(int argc, char** argv) { return sshent::run_cli(argc, argv, std::cout, std::cerr); }
