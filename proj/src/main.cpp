#include "hsurf/cli.hpp"

int main(int argc, char** argv) {
    return hsurf::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
