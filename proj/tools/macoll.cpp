#include "macoll/cli.hpp"

int main(int argc, char** argv) {
    return macoll::cli::run(argc, argv);
}
