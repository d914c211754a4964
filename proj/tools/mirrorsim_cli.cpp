#include "mirrorsim/cli.hpp"

int main(int argc, char** argv) { return mirrorsim::cli_main(argc, argv); }
