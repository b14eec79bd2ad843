#include "glab/cli.hpp"

int main(int argc, char** argv) { return glab::cli::main_entry(argc, argv); }
