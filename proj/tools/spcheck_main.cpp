#include "sp/cli.hpp"

int main(int argc, char** argv) { return sp::run_cli(argc, argv); }
