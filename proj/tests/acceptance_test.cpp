// Runs every acceptance criterion once, prints one PASS/FAIL line per criterion,
// then asserts on the collected records.

#include <gtest/gtest.h>

#include <cstdio>

#include "sftlab/suites.hpp"
#include "sftlab/system_file.hpp"

using namespace sftlab;

namespace {

const Report& acceptance_report() {
    static const Report rep = [] {
        SuiteOptions o;
        o.jobs = 4;
        o.eb_matrix = load_matrix_file(std::string(SFTLAB_SAMPLES_DIR) + "/eb_matrix.json");
        return run_suite("acceptance", o);
    }();
    return rep;
}

}  // namespace

TEST(Acceptance, AllCriteria) {
    const auto& rep = acceptance_report();
    ASSERT_EQ(rep.checks().size(), 12u);
    for (const auto& c : rep.checks()) {
        const bool pass = c.status == Status::Confirmed;
        std::printf("%s  %s  (%.0f ms)\n", pass ? "PASS" : "FAIL", c.name.c_str(), c.runtime_ms);
        if (!c.detail.empty()) std::printf("      %s\n", c.detail.c_str());
        EXPECT_EQ(c.status, Status::Confirmed) << c.name << ": " << c.detail;
    }
    std::fflush(stdout);
}

int main(int argc, char** argv) {
    ::testing::InitGoogleTest(&argc, argv);
    return RUN_ALL_TESTS();
}
