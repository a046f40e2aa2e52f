#include "cli.hpp"

int main(int argc, char** argv) { return proxyshap::cli::run_cli(argc, argv); }
