#include "monomial/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return monomial::cli::run(argc, argv, std::cout, std::cerr);
}
