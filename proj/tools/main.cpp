#include "grouptest/cli.hpp"

int main(int argc, char** argv) { return grouptest::cli_main(argc, argv); }
