#pragma once

// Command-line front end: parses a problem file, runs one command and writes
// a JSON report. Exit codes: 0 success, 1 computation error, 2 parse or usage
// error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qpot/dsl.hpp"
#include "qpot/ginzburg.hpp"
#include "qpot/homology.hpp"
#include "qpot/ideals.hpp"
#include "qpot/presentation.hpp"

namespace qpot::cli {

using Json = nlohmann::ordered_json;

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> list = {
        "validate", "build-b", "build-gamma", "build-ginzburg", "check-d2", "homology", "h0", "vosnex", "ideal-dim",
        "admissibility", "system-of-relations", "ext2", "split-ext-2", "report",
    };
    return list;
}

struct RunOptions {
    std::string command;
    std::string file;
    std::optional<int> m;
    std::optional<std::size_t> max_len;
    std::optional<std::size_t> max_n;
    std::uint64_t seed = 1;
    std::optional<std::size_t> samples;
    std::optional<std::string> output;
};

inline Json arrows_json(const GradedQuiver& q) {
    Json out = Json::array();
    for (const auto& a : q.arrows()) {
        out.push_back({{"id", a.id}, {"source", a.source}, {"target", a.target}, {"degree", a.degree}});
    }
    return out;
}

inline Json dg_json(const DgAlgebra& dg) {
    Json d = Json::object();
    for (std::size_t a = 0; a < dg.quiver().arrow_count(); ++a) d[dg.quiver().arrow_id(a)] = dg.d(a).to_string();
    return {{"arrows", arrows_json(dg.quiver())}, {"differentials", d}};
}

inline Json input_json(const ProblemFile& pf, const std::string& file) {
    Json rel = Json::array();
    for (const auto& r : pf.relations.entries()) {
        rel.push_back({{"id", r.label}, {"source", r.source}, {"target", r.target}, {"body", r.body.to_string()}});
    }
    Json out = {{"file", file}, {"vertices", pf.quiver->vertices()}, {"arrows", arrows_json(*pf.quiver)}, {"relations", rel}};
    if (pf.potential) out["potential"] = pf.potential->as_element().to_string();
    return out;
}

inline Json homology_json(const HomologyReport& r) {
    Json dims = Json::object();
    for (const auto& [i, d] : r.dims) dims[std::to_string(i)] = d;
    return {{"L", r.max_len}, {"stabilized", r.stabilized}, {"dims", dims}, {"vosnex", r.vosnex}};
}

inline Json h0_json(const H0Presentation& p) {
    Json arrows = Json::array();
    for (const auto& a : p.quiver->arrows()) arrows.push_back(a.id);
    Json rel = Json::array();
    for (const auto& r : p.nonzero_relations()) rel.push_back(r.to_string());
    return {{"arrows", arrows}, {"relations", rel}};
}

inline std::string check_text(const CheckResult& r) { return r.ok() ? "ok" : *r.failure; }

// Sections of the report, emitted in this order when present.
struct Report {
    Json input;
    std::optional<int> m;
    std::optional<Json> B, gamma, homology, h0, ideal;
    Json checks = Json::object();

    Json to_json() const {
        Json out = Json::object();
        out["input"] = input;
        if (m) out["m"] = *m;
        if (B) out["B"] = *B;
        if (gamma) out["gamma"] = *gamma;
        if (homology) out["homology"] = *homology;
        if (h0) out["h0"] = *h0;
        if (ideal) out["ideal"] = *ideal;
        if (!checks.empty()) out["checks"] = checks;
        return out;
    }
};

class Runner {
  public:
    Runner(ProblemFile pf, RunOptions opt) : pf_(std::move(pf)), opt_(std::move(opt)) {
        report_.input = input_json(pf_, opt_.file);
        m_ = opt_.m ? opt_.m : pf_.m;
        report_.m = m_;
        if (!opt_.max_len) opt_.max_len = option_size("max_len");
        if (!opt_.max_n) opt_.max_n = option_size("max_N");
        if (!opt_.samples) opt_.samples = option_size("samples");
    }

    Json run() {
        const auto& c = opt_.command;
        if (c == "validate") {
            report_.checks["validate"] = "ok";
        } else if (c == "build-b") {
            report_.B = dg_json(build_B(*pf_.quiver, pf_.relations));
        } else if (c == "build-gamma") {
            gamma_section(require_m());
        } else if (c == "build-ginzburg") {
            report_.gamma = dg_json(ginzburg_from_potential(require_m()));
        } else if (c == "check-d2") {
            d2_section();
        } else if (c == "homology") {
            homology_section(require_m());
        } else if (c == "h0") {
            report_.h0 = h0_json(h0_presentation(dg_for(require_m())));
        } else if (c == "vosnex") {
            vosnex_section(require_m());
        } else if (c == "ideal-dim") {
            const auto N = require_bound();
            ideal()["dim"] = algebra_dim(pf_.relations, N);
        } else if (c == "admissibility") {
            admissibility_section();
        } else if (c == "system-of-relations") {
            system_section(require_bound());
        } else if (c == "ext2") {
            const auto N = require_bound();
            ideal()["ext2"] = ext2_dim(pf_.relations, N);
        } else if (c == "split-ext-2") {
            split_section(require_bound());
        } else if (c == "report") {
            full_report();
        } else {
            throw std::invalid_argument("unknown command '" + c + "'");
        }
        return report_.to_json();
    }

  private:
    std::optional<std::size_t> option_size(const std::string& key) const {
        const auto v = pf_.int_option(key);
        if (!v) return std::nullopt;
        if (*v < 0) throw Error("option '" + key + "' must be non-negative");
        return static_cast<std::size_t>(*v);
    }

    int require_m() const {
        if (!m_) throw std::invalid_argument("command '" + opt_.command + "' needs --m (or 'm = ...' in the file)");
        return *m_;
    }

    bool graded_input() const { return pf_.potential.has_value() || !pf_.quiver->all_degrees_zero(); }

    DgAlgebra ginzburg_from_potential(int m) const {
        if (pf_.potential) return build_ginzburg(*pf_.quiver, *pf_.potential, m);
        return build_ginzburg(*pf_.quiver, Superpotential(pf_.quiver), m);
    }

    DgAlgebra dg_for(int m) const { return graded_input() ? ginzburg_from_potential(m) : build_gamma(*pf_.quiver, pf_.relations, m); }

    const AdmissibilityBound& bound() {
        if (!bound_) bound_ = find_admissibility_bound(pf_.relations, opt_.max_n.value_or(12));
        return *bound_;
    }

    std::size_t require_bound() {
        const auto& b = bound();
        ideal()["admissible_N"] = b.found() ? Json(b.bound) : Json(nullptr);
        if (!b.found()) {
            throw NotAdmissible(std::string("no admissibility bound up to ") + std::to_string(opt_.max_n.value_or(12)) + " (" + to_string(b.status) + ")");
        }
        return b.bound;
    }

    Json& ideal() {
        if (!report_.ideal) report_.ideal = Json::object();
        return *report_.ideal;
    }

    std::size_t truncation_length(int m) {
        if (opt_.max_len) return *opt_.max_len;
        std::optional<std::size_t> N;
        if (!graded_input()) {
            const auto& b = bound();
            if (b.found()) N = b.bound;
        }
        return default_truncation_length(m, N, pf_.relations.max_length());
    }

    void gamma_section(int m) {
        const auto gamma = build_gamma(*pf_.quiver, pf_.relations, m);
        report_.gamma = dg_json(gamma);
        report_.checks["table_audit"] = check_text(audit_gamma_table(gamma, pf_.relations, m));
    }

    void d2_section() {
        const std::size_t L = opt_.max_len.value_or(6);
        const std::size_t samples = opt_.samples.value_or(200);
        std::optional<CheckResult> first_failure;
        auto record = [&](const char* key, const CheckResult& r) {
            report_.checks[key] = check_text(r);
            if (!r.ok() && !first_failure) first_failure = r;
        };
        if (!graded_input()) record("d_squared_B", check_d_squared(build_B(*pf_.quiver, pf_.relations), L, samples, opt_.seed));
        if (m_) record("d_squared_gamma", check_d_squared(dg_for(*m_), L, samples, opt_.seed));
        report_.checks["d_squared"] = first_failure ? *first_failure->failure : "ok";
    }

    void homology_section(int m) {
        const auto r = homology_dims(dg_for(m), m, truncation_length(m));
        report_.homology = homology_json(r);
    }

    void vosnex_section(int m) {
        const auto v = vosnex_equivalence_check(*pf_.quiver, pf_.relations, m, opt_.max_len);
        Json h = homology_json(v.report);
        h["conditions"] = {{"acyclic_and_no_relations", v.acyclic_and_no_relations},
                           {"B_finite_in_degree_zero", v.B_finite_in_degree_zero},
                           {"vanishing_small_extensions", v.vanishing_small_extensions},
                           {"vanishing_at_m_minus_2", v.vanishing_at_m_minus_2}};
        report_.homology = h;
    }

    void admissibility_section() {
        const auto& b = bound();
        ideal()["admissible_N"] = b.found() ? Json(b.bound) : Json(nullptr);
        ideal()["admissibility"] = to_string(b.status);
    }

    void system_section(std::size_t N) {
        Json list = Json::array();
        const auto S = system_of_relations(pf_.relations, N);
        for (const auto& r : S.entries()) list.push_back(r.label);
        ideal()["system_of_relations"] = list;
    }

    void split_section(std::size_t N) {
        const auto s = split_extension_check(*pf_.quiver, pf_.relations, N);
        report_.h0 = h0_json(s.presentation);
        report_.checks["split_extension"] = check_text(s.result);
    }

    void full_report() {
        if (!graded_input()) report_.B = dg_json(build_B(*pf_.quiver, pf_.relations));
        if (m_) {
            if (graded_input()) {
                report_.gamma = dg_json(ginzburg_from_potential(*m_));
            } else {
                gamma_section(*m_);
            }
        }
        d2_section();
        if (m_ && *m_ >= 1) homology_section(*m_);
        if (graded_input()) return;
        if (m_ && *m_ >= 1) report_.h0 = h0_json(h0_presentation(dg_for(*m_)));
        admissibility_section();
        if (!bound().found()) return;
        const auto N = bound().bound;
        ideal()["dim"] = algebra_dim(pf_.relations, N);
        system_section(N);
        ideal()["ext2"] = ext2_dim(pf_.relations, N);
        try {
            report_.checks["split_extension"] = check_text(split_extension_check(*pf_.quiver, pf_.relations, N).result);
        } catch (const NotAdmissible& e) {
            report_.checks["split_extension"] = std::string("not decided: ") + e.what();
        }
    }

    ProblemFile pf_;
    RunOptions opt_;
    Report report_;
    std::optional<int> m_;
    std::optional<AdmissibilityBound> bound_;
};

inline std::string command_help() {
    std::string s = "command, one of:";
    for (const auto& c : commands()) s += " " + c;
    return s;
}

// argv[0] is the program name.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quivers with relations, Ginzburg dg-algebras and their homology"};
    RunOptions opt;
    app.add_option("command", opt.command, command_help())->required()->check(CLI::IsMember(commands()));
    app.add_option("file", opt.file, "problem file")->required();
    app.add_option("--m", opt.m, "Calabi-Yau parameter m");
    app.add_option("--max-len", opt.max_len, "path length truncation L");
    app.add_option("--max-n", opt.max_n, "largest admissibility bound to try (default 12)");
    app.add_option("--seed", opt.seed, "seed for randomized checks");
    app.add_option("--samples", opt.samples, "number of random products in check-d2");
    app.add_option("--output", opt.output, "write the JSON report here instead of stdout");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << app.help();
        return 2;
    }

    std::ifstream in(opt.file, std::ios::binary);
    if (!in) {
        err << opt.file << ": cannot open file\n";
        return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();

    ProblemFile pf;
    try {
        pf = parse(buf.str());
    } catch (const ParseError& e) {
        for (const auto& d : e.diagnostics()) err << opt.file << ':' << d.to_string() << '\n';
        return 2;
    }

    Json report;
    try {
        report = Runner(std::move(pf), opt).run();
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    const std::string text = report.dump(2) + "\n";
    if (opt.output) {
        std::ofstream o(*opt.output, std::ios::binary);
        if (!o) {
            err << *opt.output << ": cannot write file\n";
            return 1;
        }
        o << text;
    } else {
        out << text;
    }
    return 0;
}

} // namespace qpot::cli
