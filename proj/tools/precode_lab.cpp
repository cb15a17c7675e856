#include "precode/cli.hpp"

int main(int argc, char** argv) { return precode::run_cli(argc, argv); }
