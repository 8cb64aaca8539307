#include "logistic/cli.hpp"

int main(int argc, char** argv) { return logistic::run_cli(argc, argv); }
