#include "nlfe/cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return nlfe::cli::run(argc, argv, std::cout, std::cerr);
}
