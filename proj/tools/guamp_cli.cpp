#include "guamp/cli.hpp"

int main(int argc, char** argv) { return guamp::cli_main(argc, argv); }
