#include "tendency/cli.hpp"

int main(int argc, char** argv) { return tendency::run(argc, argv); }
