#include "semilin/cli.hpp"

int main(int argc, char** argv) { return semilin::run_cli(argc, argv); }
