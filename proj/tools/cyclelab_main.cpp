#include "cli.hpp"

int main(int argc, char** argv) { return cyclelab::cli::run(argc, argv); }
