#include <string>
#include <vector>

#include "cfgi/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cfgi::run(std::move(args));
}
