#include "qtrend/cli.hpp"

int main(int argc, char** argv) { return qtrend::run_cli(argc, argv); }
