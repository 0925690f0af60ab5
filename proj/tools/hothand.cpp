#include "hothand/cli.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::optional<std::string> mode_env;
    if (const char* m = std::getenv("HOTHAND_MODE")) mode_env = m;
    return hothand::cli::run(args, std::cout, std::cerr, mode_env);
}
