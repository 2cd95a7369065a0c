#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qmc/errors.hpp"
#include "qmc/graph.hpp"
#include "qmc/metro.hpp"
#include "qmc/model.hpp"
#include "qmc/pairchain.hpp"
#include "qmc/rng.hpp"
#include "qmc/sim.hpp"
#include "qmc/study.hpp"
#include "qmc/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string read_file_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw qmc::ParseError("cannot open: " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string digest_bytes(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct Inputs {
    json digests = json::object();
    void add(const fs::path& p) { digests[p.generic_string()] = digest_bytes(read_file_bytes(p)); }
};

json envelope(const std::string& command, std::uint64_t seed, const Inputs& in) {
    json j;
    j["tool"] = {{"name", qmc::kToolName}, {"version", qmc::kToolVersion}};
    j["rng"] = qmc::kRngName;
    j["seed"] = seed;
    j["inputs"] = in.digests;
    j["command"] = command;
    return j;
}

std::string envelope_comments(const std::string& command, std::uint64_t seed, const Inputs& in) {
    std::string s = "# qmc " + command + "\n";
    s += "# version=" + std::string(qmc::kToolVersion) + "\n";
    s += "# rng=" + std::string(qmc::kRngName) + "\n";
    s += "# seed=" + std::to_string(seed) + "\n";
    for (auto it = in.digests.begin(); it != in.digests.end(); ++it)
        s += "# input:" + it.key() + "=" + it.value().get<std::string>() + "\n";
    return s;
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw qmc::ParseError("cannot write: " + p.string());
    out << content;
    if (!out) throw qmc::ParseError("write failed: " + p.string());
}

json matrix_json(const qmc::Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

void matrix_csv(std::string& out, const qmc::Matrix& m) {
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) out += ',';
            out += fmt(m(i, j));
        }
        out += '\n';
    }
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        int v = 0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
            throw qmc::ParseError("bad integer list entry: \"" + tok + "\"");
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw qmc::ParseError("empty integer list");
    return out;
}

// exactly one of graph_path / schedule_path; returns the loaded schedule and
// records input digests (frames of a schedule file included)
qmc::Schedule load_schedule(const std::string& graph_path, const std::string& schedule_path,
                            Inputs& in, json& config) {
    if (graph_path.empty() == schedule_path.empty())
        throw qmc::ParseError("exactly one of --graph/--schedule is required");
    if (!graph_path.empty()) {
        in.add(graph_path);
        config["graph"] = graph_path;
        return qmc::Schedule(qmc::Graph::from_file(graph_path));
    }
    auto sched = qmc::Schedule::from_file(schedule_path);
    in.add(schedule_path);
    config["schedule"] = schedule_path;
    json j = json::parse(read_file_bytes(schedule_path));
    for (const auto& entry : j["frames"]) {
        fs::path p = entry.get<std::string>();
        if (p.is_relative()) p = fs::path(schedule_path).parent_path() / p;
        in.add(p);
    }
    return sched;
}

int cmd_analyze(const std::string& graph_path, const std::string& out_path,
                const std::string& format) {
    Inputs in;
    in.add(graph_path);
    qmc::Graph g = qmc::Graph::from_file(graph_path);
    qmc::ChainProfile prof = qmc::analyze_chain(g);

    if (format == "json") {
        json j = envelope("analyze", 0, in);
        j["n"] = g.node_count();
        j["hidden_vertex"] = prof.hidden;
        j["transition"] = matrix_json(prof.transition);
        j["hitting"] = matrix_json(prof.hitting);
        j["potential"] = matrix_json(prof.potential);
        write_file(out_path, j.dump(2) + "\n");
    } else {
        std::string s = envelope_comments("analyze", 0, in);
        s += "# n=" + std::to_string(g.node_count()) + "\n";
        s += "# hidden_vertex=" + std::to_string(prof.hidden) + "\n";
        s += "# matrix=transition\n";
        matrix_csv(s, prof.transition);
        s += "# matrix=hitting\n";
        matrix_csv(s, prof.hitting);
        s += "# matrix=potential\n";
        matrix_csv(s, prof.potential);
        write_file(out_path, s);
    }
    std::cout << "analyze: n=" << g.node_count() << " hidden_vertex=" << prof.hidden << " -> "
              << out_path << "\n";
    return 0;
}

int cmd_run(const std::string& graph_path, const std::string& schedule_path, const std::string& x0,
            const std::string& time_model, std::uint64_t seed, double max_time,
            const std::string& out_path) {
    Inputs in;
    json config;
    qmc::SimConfig cfg{load_schedule(graph_path, schedule_path, in, config),
                       parse_int_list(x0), qmc::time_model_from_string(time_model), seed, max_time};
    qmc::ConvergenceReport rep = qmc::run_consensus(cfg);

    config["initial_values"] = cfg.initial_values;
    config["time_model"] = time_model;
    config["seed"] = seed;
    config["max_time"] = max_time;

    json j = envelope("run", seed, in);
    j["config"] = config;
    json trace = json::array();
    for (auto [t, v] : rep.spread_trace) trace.push_back(json::array({t, v}));
    j["report"] = {{"converged", rep.converged},
                   {"stop_time", rep.stop_time},
                   {"events", rep.events},
                   {"nontrivial_updates", rep.nontrivial_updates},
                   {"final_values", rep.final_values},
                   {"spread_trace", trace}};
    write_file(out_path, j.dump(2) + "\n");
    std::cout << "run: converged=" << (rep.converged ? "true" : "false")
              << " stop_time=" << fmt(rep.stop_time) << " events=" << rep.events
              << " nontrivial=" << rep.nontrivial_updates << " -> " << out_path << "\n";
    return 0;
}

int cmd_meet(const std::string& graph_path, const std::string& schedule_path, int x, int y,
             const std::string& process, const std::string& time_model, std::uint64_t trials,
             std::uint64_t seed, int jobs, double max_time, const std::string& out_path,
             const std::string& format) {
    Inputs in;
    json config;
    qmc::Schedule sched = load_schedule(graph_path, schedule_path, in, config);
    qmc::Estimate est =
        qmc::estimate_meeting(sched, x, y, qmc::process_from_string(process),
                              qmc::time_model_from_string(time_model), trials, seed, jobs, max_time);

    if (format == "json") {
        config["x"] = x;
        config["y"] = y;
        config["process"] = process;
        config["time_model"] = time_model;
        config["trials"] = trials;
        config["max_time"] = max_time;
        json j = envelope("meet", seed, in);
        j["config"] = config;
        j["estimate"] = {{"mean", est.mean},
                         {"std_error", est.std_error},
                         {"ci_low", est.ci_low},
                         {"ci_high", est.ci_high},
                         {"trials", est.trials}};
        write_file(out_path, j.dump(2) + "\n");
    } else {
        std::string s = envelope_comments("meet", seed, in);
        s += "x,y,process,time_model,trials,mean,std_error,ci_low,ci_high\n";
        s += std::to_string(x) + "," + std::to_string(y) + "," + process + "," + time_model + "," +
             std::to_string(est.trials) + "," + fmt(est.mean) + "," + fmt(est.std_error) + "," +
             fmt(est.ci_low) + "," + fmt(est.ci_high) + "\n";
        write_file(out_path, s);
    }
    std::cout << "meet: x=" << x << " y=" << y << " mean=" << fmt(est.mean)
              << " std_error=" << fmt(est.std_error) << " trials=" << est.trials << " -> "
              << out_path << "\n";
    return 0;
}

json bound_report_json(const qmc::BoundReport& rep, int frame) {
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"name", c.name},
                          {"relation", c.relation},
                          {"value", c.value},
                          {"limit", c.limit},
                          {"margin", c.margin},
                          {"pass", c.pass}});
    return {{"frame", frame}, {"n", rep.n}, {"checks", checks}, {"all_pass", rep.all_pass}};
}

int cmd_verify(const std::string& graph_path, const std::string& schedule_path, int limit,
               const std::string& out_path, const std::string& format) {
    Inputs in;
    json config;
    qmc::Schedule sched = load_schedule(graph_path, schedule_path, in, config);
    std::vector<qmc::BoundReport> reports = qmc::verify_bounds(sched, limit);
    bool all_pass = true;
    for (const auto& r : reports) all_pass = all_pass && r.all_pass;

    if (!out_path.empty()) {
        if (format == "json") {
            json frames = json::array();
            for (std::size_t k = 0; k < reports.size(); ++k)
                frames.push_back(bound_report_json(reports[k], static_cast<int>(k)));
            json j = envelope("verify", 0, in);
            j["analytic_limit"] = limit;
            j["frames"] = frames;
            j["all_pass"] = all_pass;
            write_file(out_path, j.dump(2) + "\n");
        } else {
            std::string s = envelope_comments("verify", 0, in);
            s += "frame,name,relation,value,limit,margin,pass\n";
            for (std::size_t k = 0; k < reports.size(); ++k)
                for (const auto& c : reports[k].checks)
                    s += std::to_string(k) + "," + c.name + "," + c.relation + "," + fmt(c.value) +
                         "," + fmt(c.limit) + "," + fmt(c.margin) + "," +
                         (c.pass ? "true" : "false") + "\n";
            write_file(out_path, s);
        }
    }
    std::cout << "verify: n=" << reports[0].n << " frames=" << reports.size()
              << " checks_per_frame=" << reports[0].checks.size()
              << " all_pass=" << (all_pass ? "true" : "false");
    if (!out_path.empty()) std::cout << " -> " << out_path;
    std::cout << "\n";
    return all_pass ? 0 : 3;
}

int run_one_scale(const std::string& family, const std::vector<int>& sizes, std::uint64_t trials,
                  const std::string& time_model, std::uint64_t seed, int jobs, double max_time,
                  double edge_prob, const std::string& out_path, const std::string& format) {
    qmc::ScalingResult res = qmc::scaling_study(family, sizes, trials,
                                                qmc::time_model_from_string(time_model), seed, jobs,
                                                max_time, edge_prob);
    Inputs in;  // families are generated, no input files
    if (format == "json") {
        json points = json::array();
        for (const auto& p : res.points)
            points.push_back({{"n", p.n},
                              {"trials", p.trials},
                              {"mean_time", p.mean_time},
                              {"std_error", p.std_error},
                              {"normalized", p.normalized}});
        json j = envelope("scale", seed, in);
        j["family"] = family;
        j["time_model"] = time_model;
        j["trials"] = trials;
        j["points"] = points;
        j["fit_exponent"] = res.fit_exponent;
        write_file(out_path, j.dump(2) + "\n");
    } else {
        std::string s = envelope_comments("scale", seed, in);
        s += "# family=" + family + "\n";
        s += "# time_model=" + time_model + "\n";
        s += "# trials=" + std::to_string(trials) + "\n";
        s += "# fit_exponent=" + fmt(res.fit_exponent) + "\n";
        s += "n,trials,mean_time,std_error,normalized\n";
        for (const auto& p : res.points)
            s += std::to_string(p.n) + "," + std::to_string(p.trials) + "," + fmt(p.mean_time) +
                 "," + fmt(p.std_error) + "," + fmt(p.normalized) + "\n";
        write_file(out_path, s);
    }
    std::cout << "scale: family=" << family << " points=" << res.points.size()
              << " fit_exponent=" << fmt(res.fit_exponent) << " -> " << out_path << "\n";
    return 0;
}

int cmd_scale_spec(const std::string& spec_path) {
    json spec;
    try {
        spec = json::parse(read_file_bytes(spec_path));
    } catch (const json::exception& e) {
        throw qmc::ParseError(spec_path + ": " + e.what());
    }
    json entries = spec.is_array() ? spec : json::array({spec});
    for (const auto& e : entries) {
        if (!e.is_object() || !e.contains("family") || !e.contains("sizes") || !e.contains("out"))
            throw qmc::ParseError(spec_path + ": each study needs family, sizes, out");
        run_one_scale(e["family"].get<std::string>(), e["sizes"].get<std::vector<int>>(),
                      e.value("trials", std::uint64_t{50}), e.value("time_model", std::string("static")),
                      e.value("seed", std::uint64_t{0}), e.value("jobs", 1),
                      e.value("max_time", 1e6), e.value("edge_prob", 0.5),
                      e["out"].get<std::string>(), e.value("format", std::string("csv")));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantized consensus and two-walker meeting toolkit"};
    app.set_version_flag("--version", std::string(qmc::kToolName) + " " + qmc::kToolVersion);
    app.require_subcommand(1);

    auto* analyze = app.add_subcommand("analyze", "chain profile of a graph: transition matrix, "
                                                  "hitting times, hidden vertex, pair potential");
    std::string an_graph, an_out, an_format = "json";
    analyze->add_option("--graph", an_graph, "graph file")->required();
    analyze->add_option("--out", an_out, "output file")->required();
    analyze->add_option("--format", an_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

    auto* run = app.add_subcommand("run", "simulate quantized consensus to convergence");
    std::string r_graph, r_schedule, r_x0, r_tm = "static", r_out;
    std::uint64_t r_seed = 0;
    double r_max_time = 1e6;
    run->add_option("--graph", r_graph, "graph file");
    run->add_option("--schedule", r_schedule, "schedule file");
    run->add_option("--x0", r_x0, "comma-separated integer initial values")->required();
    run->add_option("--time-model", r_tm, "static|time_varying")
        ->check(CLI::IsMember({"static", "time_varying"}));
    run->add_option("--seed", r_seed, "master seed");
    run->add_option("--max-time", r_max_time, "simulation time cap");
    run->add_option("--out", r_out, "output file (json)")->required();

    auto* meet = app.add_subcommand("meet", "estimate a two-walker meeting time by simulation");
    std::string m_graph, m_schedule, m_process = "original", m_tm = "static", m_out, m_format = "json";
    int m_x = 0, m_y = 0, m_jobs = 1;
    std::uint64_t m_trials = 10000, m_seed = 0;
    double m_max_time = 1e6;
    meet->add_option("--graph", m_graph, "graph file");
    meet->add_option("--schedule", m_schedule, "schedule file");
    meet->add_option("--x", m_x, "first walker start node")->required();
    meet->add_option("--y", m_y, "second walker start node")->required();
    meet->add_option("--process", m_process, "original|virtual")
        ->check(CLI::IsMember({"original", "virtual"}));
    meet->add_option("--time-model", m_tm, "static|time_varying")
        ->check(CLI::IsMember({"static", "time_varying"}));
    meet->add_option("--trials", m_trials, "trial count");
    meet->add_option("--seed", m_seed, "master seed");
    meet->add_option("--jobs", m_jobs, "worker threads")->check(CLI::Range(1, 1024));
    meet->add_option("--max-time", m_max_time, "per-trial time cap");
    meet->add_option("--out", m_out, "output file")->required();
    meet->add_option("--format", m_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

    auto* verify = app.add_subcommand("verify", "check the analytic inequality suite");
    std::string v_graph, v_schedule, v_out, v_format = "json";
    int v_limit = 12;
    verify->add_option("--graph", v_graph, "graph file");
    verify->add_option("--schedule", v_schedule, "schedule file");
    verify->add_option("--limit", v_limit, "largest node count accepted");
    verify->add_option("--out", v_out, "optional report file");
    verify->add_option("--format", v_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

    auto* scale = app.add_subcommand("scale", "convergence-time scaling study over sizes");
    std::string s_spec, s_family, s_ns, s_tm = "static", s_out, s_format = "csv";
    std::uint64_t s_trials = 50, s_seed = 0;
    int s_jobs = 1;
    double s_max_time = 1e6, s_p = 0.5;
    scale->add_option("--spec", s_spec, "batch spec json (overrides other flags)");
    scale->add_option("--family", s_family,
                      "path|cycle|complete|star|erdos_renyi|path_star_alt");
    scale->add_option("--ns", s_ns, "comma-separated sizes");
    scale->add_option("--trials", s_trials, "trials per size");
    scale->add_option("--time-model", s_tm, "static|time_varying")
        ->check(CLI::IsMember({"static", "time_varying"}));
    scale->add_option("--seed", s_seed, "master seed");
    scale->add_option("--jobs", s_jobs, "worker threads")->check(CLI::Range(1, 1024));
    scale->add_option("--max-time", s_max_time, "per-trial time cap");
    scale->add_option("--p", s_p, "edge probability for erdos_renyi");
    scale->add_option("--out", s_out, "output file");
    scale->add_option("--format", s_format, "csv|json")->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*analyze) return cmd_analyze(an_graph, an_out, an_format);
        if (*run) return cmd_run(r_graph, r_schedule, r_x0, r_tm, r_seed, r_max_time, r_out);
        if (*meet)
            return cmd_meet(m_graph, m_schedule, m_x, m_y, m_process, m_tm, m_trials, m_seed,
                            m_jobs, m_max_time, m_out, m_format);
        if (*verify) return cmd_verify(v_graph, v_schedule, v_limit, v_out, v_format);
        if (*scale) {
            if (!s_spec.empty()) return cmd_scale_spec(s_spec);
            if (s_family.empty() || s_ns.empty() || s_out.empty()) {
                std::cerr << "scale: --family, --ns and --out are required (or use --spec)\n";
                return 1;
            }
            return run_one_scale(s_family, parse_int_list(s_ns), s_trials, s_tm, s_seed, s_jobs,
                                 s_max_time, s_p, s_out, s_format);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
