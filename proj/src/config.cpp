#include "nskfv/config.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

namespace nskfv {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& ctx) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) {
            std::ostringstream os;
            os << "config: unknown key \"" << it.key() << "\" in " << ctx;
            throw ValidationError(os.str());
        }
    }
}

const json& require(const json& obj, const char* key, const std::string& ctx) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ValidationError("config: missing required key \"" + std::string(key) + "\" in " + ctx);
    return *it;
}

double as_number(const json& v, const std::string& what) {
    if (!v.is_number())
        throw ValidationError("config: " + what + " must be a number");
    return v.get<double>();
}

long as_integer(const json& v, const std::string& what) {
    if (!v.is_number_integer())
        throw ValidationError("config: " + what + " must be an integer");
    return v.get<long>();
}

MeshSpec parse_mesh(const json& obj) {
    if (!obj.is_object()) throw ValidationError("config: \"mesh\" must be an object");
    check_keys(obj, {"M", "N"}, "mesh");
    MeshSpec spec;
    spec.m = static_cast<int>(as_integer(require(obj, "M", "mesh"), "mesh.M"));
    spec.n = static_cast<int>(as_integer(require(obj, "N", "mesh"), "mesh.N"));
    if (spec.m < 3 || spec.n < 3)
        throw ValidationError("config: mesh must have at least 3 cells per axis");
    return spec;
}

FluidParams parse_params(const json& obj) {
    if (!obj.is_object()) throw ValidationError("config: \"params\" must be an object");
    check_keys(obj, {"a", "gamma", "mu", "kappa", "delta"}, "params");
    FluidParams p;
    p.a = as_number(require(obj, "a", "params"), "params.a");
    p.gamma = as_number(require(obj, "gamma", "params"), "params.gamma");
    p.mu = as_number(require(obj, "mu", "params"), "params.mu");
    p.kappa = as_number(require(obj, "kappa", "params"), "params.kappa");
    p.delta = obj.contains("delta") ? as_number(obj.at("delta"), "params.delta") : 1e-8;
    if (!(p.gamma > 1.0)) throw ValidationError("config: gamma must exceed 1");
    p.validate();
    return p;
}

TimeControls parse_controls(const json& obj) {
    if (!obj.is_object()) throw ValidationError("config: \"controls\" must be an object");
    check_keys(obj, {"cfl", "t_end", "record_every", "max_steps", "freeze_lambda"}, "controls");
    TimeControls c;
    c.t_end = as_number(require(obj, "t_end", "controls"), "controls.t_end");
    if (obj.contains("cfl")) c.cfl = as_number(obj.at("cfl"), "controls.cfl");
    if (obj.contains("record_every"))
        c.record_every = static_cast<int>(as_integer(obj.at("record_every"), "controls.record_every"));
    if (obj.contains("max_steps")) c.max_steps = as_integer(obj.at("max_steps"), "controls.max_steps");
    if (obj.contains("freeze_lambda")) {
        if (!obj.at("freeze_lambda").is_boolean())
            throw ValidationError("config: controls.freeze_lambda must be a boolean");
        c.freeze_lambda = obj.at("freeze_lambda").get<bool>();
    }
    c.validate();
    return c;
}

InitialTerm parse_initial_term(const json& obj, const std::string& ctx) {
    if (!obj.is_object()) throw ValidationError("config: " + ctx + " must be an object");
    const std::string type = require(obj, "type", ctx).get<std::string>();
    if (type == "constant") {
        check_keys(obj, {"type", "rho", "u", "v"}, ctx);
        ConstantIc ic;
        ic.rho = as_number(require(obj, "rho", ctx), ctx + ".rho");
        if (obj.contains("u")) ic.u = as_number(obj.at("u"), ctx + ".u");
        if (obj.contains("v")) ic.v = as_number(obj.at("v"), ctx + ".v");
        return ic;
    }
    if (type == "sine_bump") {
        check_keys(obj, {"type", "rho_mean", "amplitude", "kx", "ky", "u", "v"}, ctx);
        SineBumpIc ic;
        ic.rho_mean = as_number(require(obj, "rho_mean", ctx), ctx + ".rho_mean");
        ic.amplitude = as_number(require(obj, "amplitude", ctx), ctx + ".amplitude");
        if (obj.contains("kx")) ic.kx = static_cast<int>(as_integer(obj.at("kx"), ctx + ".kx"));
        if (obj.contains("ky")) ic.ky = static_cast<int>(as_integer(obj.at("ky"), ctx + ".ky"));
        if (obj.contains("u")) ic.u = as_number(obj.at("u"), ctx + ".u");
        if (obj.contains("v")) ic.v = as_number(obj.at("v"), ctx + ".v");
        if (!(std::abs(ic.amplitude) < ic.rho_mean))
            throw ValidationError("config: sine_bump amplitude must be smaller than rho_mean");
        return ic;
    }
    throw ValidationError("config: unknown initial type \"" + type + "\" in " + ctx);
}

InitialConfig parse_initial(const json& obj) {
    InitialConfig init;
    if (obj.is_object() && obj.contains("type") && obj.at("type") == "composite") {
        check_keys(obj, {"type", "terms"}, "initial");
        const json& terms = require(obj, "terms", "initial");
        if (!terms.is_array() || terms.empty())
            throw ValidationError("config: initial.terms must be a non-empty array");
        for (size_t k = 0; k < terms.size(); ++k)
            init.terms.push_back(parse_initial_term(terms[k], "initial.terms[" + std::to_string(k) + "]"));
    } else {
        init.terms.push_back(parse_initial_term(obj, "initial"));
    }

    // Composite positivity: mean contributions must dominate the amplitudes.
    double mean = 0.0, amp = 0.0;
    for (const InitialTerm& term : init.terms) {
        if (const auto* c = std::get_if<ConstantIc>(&term)) mean += c->rho;
        if (const auto* b = std::get_if<SineBumpIc>(&term)) {
            mean += b->rho_mean;
            amp += std::abs(b->amplitude);
        }
    }
    if (!(amp < mean))
        throw ValidationError("config: initial density amplitudes must stay below the mean density");
    return init;
}

OutputConfig parse_output(const json& obj) {
    if (!obj.is_object()) throw ValidationError("config: \"output\" must be an object");
    check_keys(obj, {"dir", "format"}, "output");
    OutputConfig out;
    if (obj.contains("dir")) out.dir = obj.at("dir").get<std::string>();
    if (obj.contains("format")) {
        const std::string fmt = obj.at("format").get<std::string>();
        if (fmt == "csv")
            out.format = SnapshotFormat::Csv;
        else if (fmt == "raw")
            out.format = SnapshotFormat::Raw;
        else
            throw ValidationError("config: output.format must be \"csv\" or \"raw\"");
    }
    return out;
}

RunConfig parse_run_body(const json& obj, bool with_kind) {
    std::set<std::string> allowed = {"mesh", "params", "controls", "initial", "output"};
    if (with_kind) allowed.insert("kind");
    check_keys(obj, allowed, with_kind ? "run config" : "study base");
    RunConfig cfg;
    cfg.mesh = parse_mesh(require(obj, "mesh", "config"));
    cfg.params = parse_params(require(obj, "params", "config"));
    cfg.controls = parse_controls(require(obj, "controls", "config"));
    cfg.initial = parse_initial(require(obj, "initial", "config"));
    if (obj.contains("output")) cfg.output = parse_output(obj.at("output"));
    return cfg;
}

json initial_to_json(const InitialConfig& init) {
    auto term_to_json = [](const InitialTerm& term) {
        json t;
        if (const auto* c = std::get_if<ConstantIc>(&term)) {
            t["type"] = "constant";
            t["rho"] = c->rho;
            t["u"] = c->u;
            t["v"] = c->v;
        } else if (const auto* b = std::get_if<SineBumpIc>(&term)) {
            t["type"] = "sine_bump";
            t["rho_mean"] = b->rho_mean;
            t["amplitude"] = b->amplitude;
            t["kx"] = b->kx;
            t["ky"] = b->ky;
            t["u"] = b->u;
            t["v"] = b->v;
        }
        return t;
    };
    if (init.terms.size() == 1) return term_to_json(init.terms.front());
    json out;
    out["type"] = "composite";
    out["terms"] = json::array();
    for (const InitialTerm& term : init.terms) out["terms"].push_back(term_to_json(term));
    return out;
}

json run_to_json(const RunConfig& cfg) {
    json j;
    j["mesh"] = {{"M", cfg.mesh.m}, {"N", cfg.mesh.n}};
    j["params"] = {{"a", cfg.params.a},
                   {"gamma", cfg.params.gamma},
                   {"mu", cfg.params.mu},
                   {"kappa", cfg.params.kappa},
                   {"delta", cfg.params.delta}};
    j["controls"] = {{"cfl", cfg.controls.cfl},
                     {"t_end", cfg.controls.t_end},
                     {"record_every", cfg.controls.record_every},
                     {"max_steps", cfg.controls.max_steps},
                     {"freeze_lambda", cfg.controls.freeze_lambda}};
    j["initial"] = initial_to_json(cfg.initial);
    j["output"] = {{"dir", cfg.output.dir},
                   {"format", cfg.output.format == SnapshotFormat::Csv ? "csv" : "raw"}};
    return j;
}

} // namespace

void RunConfig::validate() const {
    if (mesh.m < 3 || mesh.n < 3)
        throw ValidationError("config: mesh must have at least 3 cells per axis");
    params.validate();
    controls.validate();
    if (initial.terms.empty()) throw ValidationError("config: initial data missing");
}

void StudyConfig::validate() const {
    base.validate();
    if (levels.size() < 2) throw ValidationError("config: study needs at least 2 levels");
    for (size_t l = 0; l + 1 < levels.size(); ++l) {
        if (levels[l + 1].m != 2 * levels[l].m || levels[l + 1].n != 2 * levels[l].n)
            throw ValidationError("config: study levels must be nested by factor 2");
    }
    if (battery_kmax < 1 || battery_kmax > 8)
        throw ValidationError("config: battery_kmax must lie in [1, 8]");
}

AnyConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config: JSON parse error: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("config: document must be a JSON object");
    const std::string kind = require(doc, "kind", "top level").get<std::string>();

    if (kind == "run") {
        RunConfig cfg = parse_run_body(doc, true);
        cfg.validate();
        return cfg;
    }
    if (kind == "study") {
        check_keys(doc, {"kind", "base", "levels", "battery_kmax"}, "study config");
        StudyConfig cfg;
        cfg.base = parse_run_body(require(doc, "base", "study config"), false);
        const json& levels = require(doc, "levels", "study config");
        if (!levels.is_array()) throw ValidationError("config: study.levels must be an array");
        for (const json& lv : levels) {
            if (!lv.is_array() || lv.size() != 2)
                throw ValidationError("config: each study level must be a [M, N] pair");
            MeshSpec spec;
            spec.m = static_cast<int>(as_integer(lv[0], "level M"));
            spec.n = static_cast<int>(as_integer(lv[1], "level N"));
            cfg.levels.push_back(spec);
        }
        if (doc.contains("battery_kmax"))
            cfg.battery_kmax = static_cast<int>(as_integer(doc.at("battery_kmax"), "battery_kmax"));
        cfg.validate();
        return cfg;
    }
    throw ValidationError("config: \"kind\" must be \"run\" or \"study\"");
}

std::string serialize_config(const AnyConfig& config) {
    json j;
    if (const auto* run = std::get_if<RunConfig>(&config)) {
        j = run_to_json(*run);
        j["kind"] = "run";
    } else {
        const auto& study = std::get<StudyConfig>(config);
        j["kind"] = "study";
        j["base"] = run_to_json(study.base);
        j["levels"] = json::array();
        for (const MeshSpec& lv : study.levels) j["levels"].push_back({lv.m, lv.n});
        j["battery_kmax"] = study.battery_kmax;
    }
    return j.dump(2);
}

State build_initial(const RunConfig& config, const Mesh& mesh) {
    config.validate();
    auto rho0 = [&](double x, double y) {
        double val = 0.0;
        for (const InitialTerm& term : config.initial.terms) {
            if (const auto* c = std::get_if<ConstantIc>(&term)) val += c->rho;
            if (const auto* b = std::get_if<SineBumpIc>(&term))
                val += b->rho_mean + b->amplitude * std::sin(2.0 * std::numbers::pi * b->kx * x)
                                         * std::sin(2.0 * std::numbers::pi * b->ky * y);
        }
        return val;
    };
    double u_const = 0.0, v_const = 0.0;
    for (const InitialTerm& term : config.initial.terms) {
        if (const auto* c = std::get_if<ConstantIc>(&term)) {
            u_const += c->u;
            v_const += c->v;
        }
        if (const auto* b = std::get_if<SineBumpIc>(&term)) {
            u_const += b->u;
            v_const += b->v;
        }
    }

    State state;
    state.rho = project_to_cell_averages(rho0, mesh);
    GridField u = project_to_cell_averages([&](double, double) { return u_const; }, mesh);
    GridField v = project_to_cell_averages([&](double, double) { return v_const; }, mesh);

    if (!(state.rho.min_value() > 0.0))
        throw PositivityError("build_initial: projected density is not strictly positive");

    state.mx = GridField(mesh);
    state.my = GridField(mesh);
    for (size_t k = 0; k < state.rho.size(); ++k) {
        state.mx.data()[k] = state.rho.data()[k] * u.data()[k];
        state.my.data()[k] = state.rho.data()[k] * v.data()[k];
    }
    return state;
}

} // namespace nskfv
