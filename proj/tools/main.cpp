#include "hdc/cli.hpp"

int main(int argc, char** argv) { return hdc::run_cli(argc, argv); }
