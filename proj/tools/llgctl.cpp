#include "llg/cli.hpp"

int main(int argc, char** argv) { return llg::cli_main(argc, argv); }
