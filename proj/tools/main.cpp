#include <string>
#include <vector>

#include "htpair/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return htpair::run_command(args);
}
