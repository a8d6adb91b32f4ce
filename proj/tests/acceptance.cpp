#include <tflg/acceptance.hpp>

#include <iostream>

int main()
{
    const auto results = tflg::run_acceptance({TFLG_CONFIG_DIR, TFLG_ACCEPTANCE_OUT}, std::cout);
    const auto report = tflg::acceptance_report(results);
    int passed = 0;
    for (const auto& c : results) passed += c.passed;
    std::cout << passed << "/" << results.size() << " criteria passed" << std::endl;
    if (!report["passed"].get<bool>()) {
        std::cerr << report.dump(2) << std::endl;
        return 1;
    }
    return 0;
}
