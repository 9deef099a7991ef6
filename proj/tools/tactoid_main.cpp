#include "tactoid/cli.hpp"

int main(int argc, char** argv) { return tactoid::cli::main_entry(argc, argv); }
