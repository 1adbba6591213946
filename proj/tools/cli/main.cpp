#include "slalom/frontend/cli.hpp"

int main(int argc, char** argv) { return slalom::frontend::run_cli(argc, argv); }
