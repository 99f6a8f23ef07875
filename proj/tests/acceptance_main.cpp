#include <iostream>

#include "mcsim/selftest.hpp"

int main() { return mcsim::run_selftest(std::cout) == 0 ? 0 : 1; }
