#include "tsing/cli.hpp"

int main(int argc, char** argv) { return tsing::run(argc, argv); }
