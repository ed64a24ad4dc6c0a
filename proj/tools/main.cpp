#include "scenario.hpp"

int main(int argc, char** argv) { return mapdomain::cli::run_cli(argc, argv); }
