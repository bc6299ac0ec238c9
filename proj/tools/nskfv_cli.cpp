// Command-line driver. Talks to the solver exclusively through the C API.
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "nskfv/nskfv.h"

namespace {

int fail(nsk_status status) {
    std::fprintf(stderr, "error: %s\n", nsk_last_error());
    return static_cast<int>(status);
}

int run_or_study(const std::string& config_path, const std::string& out_dir, bool expect_study) {
    nsk_config* config = nullptr;
    nsk_status status = nsk_config_read_file(config_path.c_str(), &config);
    if (status != NSK_OK) return fail(status);

    if (nsk_config_is_study(config) != (expect_study ? 1 : 0)) {
        std::fprintf(stderr, "error: config kind does not match the %s subcommand\n",
                     expect_study ? "study" : "run");
        nsk_config_free(config);
        return static_cast<int>(NSK_ERR_VALIDATION);
    }
    if (!out_dir.empty()) {
        status = nsk_config_set_output_dir(config, out_dir.c_str());
        if (status != NSK_OK) {
            nsk_config_free(config);
            return fail(status);
        }
    }
    status = expect_study ? nsk_study(config) : nsk_run(config);
    nsk_config_free(config);
    if (status != NSK_OK) return fail(status);
    std::printf("%s finished\n", expect_study ? "study" : "run");
    return 0;
}

void print_suite(const char* suite, int passed, const char* detail, void*) {
    std::printf("[%s] %-25s %s\n", passed ? "PASS" : "FAIL", suite, detail);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structure-preserving finite-volume solver for 2-D isothermal "
                 "Navier-Stokes-Korteweg flow on the periodic unit torus"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    auto* run = app.add_subcommand("run", "integrate one configuration and write diagnostics/snapshots");
    run->add_option("config", config_path, "JSON configuration file")->required();
    run->add_option("--out", out_dir, "output directory (overrides the config)");

    auto* study = app.add_subcommand("study", "mesh-refinement convergence study");
    study->add_option("config", config_path, "JSON configuration file")->required();
    study->add_option("--out", out_dir, "output directory (overrides the config)");

    bool quick = false;
    auto* verify = app.add_subcommand("verify", "run the built-in property suites");
    verify->add_flag("--quick", quick, "restrict to 8x8 fixtures");

    CLI11_PARSE(app, argc, argv);

    if (app.got_subcommand(run)) return run_or_study(config_path, out_dir, false);
    if (app.got_subcommand(study)) return run_or_study(config_path, out_dir, true);

    nsk_status status = nsk_verify(quick ? 1 : 0, print_suite, nullptr);
    if (status == NSK_OK) {
        std::printf("all suites passed\n");
        return 0;
    }
    return fail(status);
}
