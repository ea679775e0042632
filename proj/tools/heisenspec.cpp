#include "heisenspec/cli.hpp"

int main(int argc, char** argv) { return heisenspec::cli::run(argc, argv); }
