#include "hierdist/cli.hpp"

int main(int argc, char** argv) { return hierdist::cli_main(argc, argv); }
