#include "nskfv/nskfv.h"

#include <fstream>
#include <sstream>
#include <string>

#include "nskfv/runner.hpp"
#include "nskfv/verify.hpp"

struct nsk_config {
    nskfv::AnyConfig config;
};

namespace {

thread_local std::string g_last_error;
thread_local std::string g_json_buffer;

nsk_status to_status(const nskfv::Error& e) {
    g_last_error = e.what();
    switch (e.kind()) {
    case nskfv::ErrorKind::Validation: return NSK_ERR_VALIDATION;
    case nskfv::ErrorKind::Runtime: return NSK_ERR_RUNTIME;
    case nskfv::ErrorKind::Io: return NSK_ERR_IO;
    }
    return NSK_ERR_RUNTIME;
}

template <typename Fn>
nsk_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return NSK_OK;
    } catch (const nskfv::Error& e) {
        return to_status(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return NSK_ERR_RUNTIME;
    }
}

} // namespace

extern "C" {

nsk_status nsk_config_parse(const char* json_text, nsk_config** out_config) {
    if (!json_text || !out_config) {
        g_last_error = "nsk_config_parse: null argument";
        return NSK_ERR_VALIDATION;
    }
    *out_config = nullptr;
    return guarded([&] { *out_config = new nsk_config{nskfv::parse_config(json_text)}; });
}

nsk_status nsk_config_read_file(const char* path, nsk_config** out_config) {
    if (!path || !out_config) {
        g_last_error = "nsk_config_read_file: null argument";
        return NSK_ERR_VALIDATION;
    }
    *out_config = nullptr;
    return guarded([&] {
        std::ifstream in(path);
        if (!in) throw nskfv::IoError(std::string("cannot open config file ") + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        *out_config = new nsk_config{nskfv::parse_config(buf.str())};
    });
}

void nsk_config_free(nsk_config* config) { delete config; }

int nsk_config_is_study(const nsk_config* config) {
    if (!config) return -1;
    return std::holds_alternative<nskfv::StudyConfig>(config->config) ? 1 : 0;
}

nsk_status nsk_config_set_output_dir(nsk_config* config, const char* dir) {
    if (!config || !dir) {
        g_last_error = "nsk_config_set_output_dir: null argument";
        return NSK_ERR_VALIDATION;
    }
    if (auto* run = std::get_if<nskfv::RunConfig>(&config->config))
        run->output.dir = dir;
    else
        std::get<nskfv::StudyConfig>(config->config).base.output.dir = dir;
    return NSK_OK;
}

const char* nsk_config_to_json(const nsk_config* config) {
    if (!config) return nullptr;
    g_json_buffer = nskfv::serialize_config(config->config);
    return g_json_buffer.c_str();
}

nsk_status nsk_run(const nsk_config* config) {
    if (!config) {
        g_last_error = "nsk_run: null config";
        return NSK_ERR_VALIDATION;
    }
    return guarded([&] {
        const auto* run = std::get_if<nskfv::RunConfig>(&config->config);
        if (!run) throw nskfv::ValidationError("nsk_run: configuration has kind \"study\"");
        nskfv::execute_run(*run);
    });
}

nsk_status nsk_study(const nsk_config* config) {
    if (!config) {
        g_last_error = "nsk_study: null config";
        return NSK_ERR_VALIDATION;
    }
    return guarded([&] {
        const auto* study = std::get_if<nskfv::StudyConfig>(&config->config);
        if (!study) throw nskfv::ValidationError("nsk_study: configuration has kind \"run\"");
        nskfv::execute_study(*study);
    });
}

nsk_status nsk_verify(int quick, nsk_suite_report_fn report, void* user) {
    bool all_pass = false;
    nsk_status status = guarded([&] {
        std::vector<nskfv::SuiteResult> results = nskfv::run_verify_suites(quick != 0);
        all_pass = true;
        for (const nskfv::SuiteResult& r : results) {
            if (report) report(r.name.c_str(), r.pass ? 1 : 0, r.detail.c_str(), user);
            all_pass = all_pass && r.pass;
        }
    });
    if (status != NSK_OK) return status;
    if (!all_pass) {
        g_last_error = "verification failed";
        return NSK_ERR_VALIDATION;
    }
    return NSK_OK;
}

const char* nsk_last_error(void) { return g_last_error.c_str(); }

const char* nsk_version(void) { return "0.1.0"; }

} // extern "C"
