#include "supenv/harness.hpp"

int main(int argc, char** argv) { return supenv::run(argc, argv); }
