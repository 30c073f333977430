#include <iostream>

#include "wzbc/cli.hpp"

int main(int argc, char** argv)
{
    return wzbc::cli::run(argc, argv, std::cout, std::cerr);
}
