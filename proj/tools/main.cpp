#include "cli.hpp"

int main(int argc, char** argv) { return slinky::cli::run(argc, argv); }
