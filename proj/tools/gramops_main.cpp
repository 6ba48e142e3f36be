#include <string>
#include <vector>

#include "gramops/cli.hpp"

int main(int argc, char** argv) {
    return gramops::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
