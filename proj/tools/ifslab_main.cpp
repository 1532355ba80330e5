#include "ifslab/cli.hpp"

int main(int argc, char** argv) { return ifslab::cli::run(argc, argv); }
