#include <iostream>
#include "zz/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    zz::cli::CommandResult r = zz::cli::run(args);
    std::cout << r.payload;
    std::cerr << r.errors;
    return r.exit_code;
}
