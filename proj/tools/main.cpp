#include "fleetcharge/cli.hpp"

int main(int argc, char** argv) { return fleetcharge::cli::run_cli(argc, argv); }
