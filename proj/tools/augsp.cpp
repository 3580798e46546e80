#include "augsp/cli.hpp"

int main(int argc, char** argv) { return augsp::run_cli(argc, argv); }
