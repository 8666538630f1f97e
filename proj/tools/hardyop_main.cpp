#include "hardyop/cli.hpp"

int main(int argc, char** argv) { return hardyop::cli::run_cli(argc, argv); }
