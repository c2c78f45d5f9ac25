#include "commdeg/cli.hpp"

int main(int argc, char** argv) { return commdeg::cli_main(argc, argv); }
