#include "mirrordip/cli.hpp"

int main(int argc, char** argv) { return mirrordip::cli_main(argc, argv); }
