#include <cstdio>
#include <cstdlib>
#include <string>

#include "eulerhom/acceptance.hpp"

int main(int argc, char** argv) {
    std::uint64_t seed = 20240501;
    if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
    const auto results = eulerhom::run_acceptance(seed, [](const eulerhom::CriterionResult& r) {
        std::printf("%s\n", eulerhom::format_result(r).c_str());
        std::fflush(stdout);
    });
    int pass = 0;
    for (const auto& r : results) pass += r.pass;
    const int status = eulerhom::acceptance_status(results);
    std::printf("%d/%zu criteria pass; %s\n", pass, results.size(),
                status == 0 ? "every failure is a confirmed known infeasibility" : "unexpected failures");
    return status;
}
