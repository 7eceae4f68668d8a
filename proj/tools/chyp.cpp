#include "chyp/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    chyp::CommandResult r = chyp::run(args);
    std::cout << r.output;
    std::cerr << r.error;
    return r.exit_code;
}
