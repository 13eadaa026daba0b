#include "knaster/cli.hpp"

int main(int argc, char** argv) { return knaster::run(argc, argv); }
