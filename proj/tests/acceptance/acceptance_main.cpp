// Runs every acceptance criterion. Criteria listed in --known-failures may
// fail without failing the run; anything else that fails does.

#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "pwe/validation.hpp"

namespace {

std::set<int> parse_ids(const std::string& text)
{
    std::set<int> ids;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) ids.insert(std::stoi(item));
    return ids;
}

}  // namespace

int main(int argc, char** argv)
{
    pwe::validation::Options options;
    std::set<int> known;
    try {
        for (int i = 1; i < argc; ++i) {
            const std::string arg = argv[i];
            if (arg == "--known-failures" && i + 1 < argc) known = parse_ids(argv[++i]);
            else if (arg == "--only" && i + 1 < argc) options.only = parse_ids(argv[++i]);
            else if (arg == "--verbose") options.verbose = true;
            else {
                std::cerr << "usage: pwe_acceptance [--only IDS] [--known-failures IDS] [--verbose]\n";
                return 2;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "bad criterion list: " << e.what() << '\n';
        return 2;
    }

    const auto results = pwe::validation::run_acceptance(options, std::cout);
    int unexpected = 0;
    for (const auto& r : results) {
        if (r.passed && known.contains(r.id))
            std::cout << "note: criterion " << r.id << " is listed as a known failure but passed\n";
        if (!r.passed && !known.contains(r.id)) ++unexpected;
    }
    std::size_t passed = 0;
    for (const auto& r : results) passed += r.passed;
    std::cout << passed << '/' << results.size() << " criteria passed";
    if (unexpected == 0 && passed < results.size()) std::cout << " (remaining failures are known)";
    std::cout << '\n';
    return unexpected == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
