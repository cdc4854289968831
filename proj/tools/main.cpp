#include <iostream>
#include <string>
#include <vector>

#include "coarse/cli.hpp"

int main(int argc, char** argv) {
    return coarse::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
