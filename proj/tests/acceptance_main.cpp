// Runs the acceptance ladder and prints one pass/fail line per
// criterion.  Exits nonzero if any criterion fails.

#include <cstdlib>
#include <iostream>

#include "geotori/selftest.hpp"

int main() {
    const auto results = geotori::selftest::run_all();
    geotori::selftest::print_results(std::cout, results);
    return geotori::selftest::all_passed(results) ? EXIT_SUCCESS
                                                  : EXIT_FAILURE;
}
