#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return zerofind::cli::run_main(argc, argv); }
