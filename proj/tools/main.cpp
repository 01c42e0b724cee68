#include <vector>
#include <string>

#include "kinchem/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return kinchem::cli_main(args);
}
