#include <iostream>

#include "cpl/cli.hpp"

int main(int argc, char** argv)
{
    return cpl::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
