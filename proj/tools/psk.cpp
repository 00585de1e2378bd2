#include "psk/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return psk::cli::run(argc, argv, std::cout, std::cerr);
}
