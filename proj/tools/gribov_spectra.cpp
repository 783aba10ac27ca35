#include "gribov/cli.hpp"

int main(int argc, char** argv) { return gribov::cli::run(argc, argv); }
