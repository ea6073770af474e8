#include <iostream>
#include <string>
#include <vector>

#include "icatt/driver.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return icatt::run_cli(args, std::cout, std::cerr);
}
