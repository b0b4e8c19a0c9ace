#include "duostra/cli.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "duostra/circuit.hpp"
#include "duostra/device.hpp"
#include "duostra/error.hpp"
#include "duostra/pipeline.hpp"
#include "duostra/qasm.hpp"

namespace duostra {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << content;
    if (!out) throw ValidationError("cannot write file: " + path);
}

bool parse_router(const std::string& name, RouterKind& out) {
    if (name == "duostra") out = RouterKind::Duostra;
    else if (name == "shortest-path") out = RouterKind::ShortestPath;
    else return false;
    return true;
}

bool parse_scheduler(const std::string& name, SchedulerKind& out) {
    if (name == "sp") out = SchedulerKind::SpEstimation;
    else if (name == "le") out = SchedulerKind::LookaheadSearch;
    else if (name == "static") out = SchedulerKind::Static;
    else return false;
    return true;
}

bool parse_placement(const std::string& name, PlacementStrategy& out) {
    if (name == "dfs") out = PlacementStrategy::Dfs;
    else if (name == "identity") out = PlacementStrategy::Identity;
    else if (name == "random") out = PlacementStrategy::Random;
    else return false;
    return true;
}

/// "qft:N" -> generate_qft(N). The only builtin circuit generator.
LogicalCircuit generate_circuit(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos || spec.substr(0, colon) != "qft") {
        throw ValidationError("unknown generator spec '" + spec + "' (expected qft:N)");
    }
    const std::string arg = spec.substr(colon + 1);
    std::uint32_t n = 0;
    if (arg.empty() || arg.size() > 6) throw ValidationError("bad generator size in '" + spec + "'");
    for (char c : arg) {
        if (c < '0' || c > '9') throw ValidationError("bad generator size in '" + spec + "'");
        n = n * 10 + static_cast<std::uint32_t>(c - '0');
    }
    // quadratic gate count; cap before allocating
    if (n == 0 || n > 1024) {
        throw ValidationError("generator size out of range [1, 1024] in '" + spec + "'");
    }
    return generate_qft(n);
}

bool looks_like_spec(const std::string& name) { return name.find(':') != std::string::npos; }

/// One fully resolved mapping job, shared by `map` and `bench`.
struct RunSpec {
    std::string circuit_desc;
    std::string device_desc;
    LogicalCircuit circuit{1};   // decomposed
    DeviceGraph device{DeviceGraph(2, {{0, 1}})};
    MapRequest request;
};

struct RunResult {
    MappedResult mapped;
    CostReport report;
};

RunResult execute(const RunSpec& spec) {
    auto begin = std::chrono::steady_clock::now();
    MappedResult mapped = map_circuit(spec.circuit, spec.device, spec.request);
    auto end = std::chrono::steady_clock::now();
    double wall_ms = std::chrono::duration<double, std::milli>(end - begin).count();

    std::vector<Violation> violations =
        verify(spec.circuit, spec.device, mapped, spec.request.timing);
    if (!violations.empty()) {
        std::string detail = to_string(violations.front().kind);
        detail += " at op ";
        detail += std::to_string(violations.front().op_index);
        detail += ": ";
        detail += violations.front().detail;
        throw VerificationError(std::to_string(violations.size()) +
                                " violation(s), first: " + detail);
    }
    RunResult out{std::move(mapped), {}};
    out.report =
        make_cost_report(spec.circuit, out.mapped, spec.device, spec.request.timing, wall_ms);
    return out;
}

ordered_json mapping_to_json(const Mapping& mapping) {
    ordered_json arr = ordered_json::array();
    for (PhysicalQubit p : mapping.log2phys) arr.push_back(p);
    return arr;
}

std::string layout_json(const MappedResult& result, bool generated) {
    ordered_json doc;
    doc["schema"] = 1;
    doc["initial"] = mapping_to_json(result.initial_mapping);
    doc["final"] = mapping_to_json(result.final_mapping);
    if (generated) {
        doc["note"] = "generated qft omits the terminal bit-reversal swaps; "
                      "outputs appear in reversed qubit order";
    }
    return doc.dump(2) + "\n";
}

std::string stats_json(const MapOptions& options, const RunSpec& spec, const RunResult& run) {
    ordered_json config;
    config["input"] = spec.circuit_desc;
    config["device"] = spec.device_desc;
    config["router"] = options.router;
    config["scheduler"] = options.scheduler;
    config["depth"] = options.depth;
    config["sp_constant"] = options.sp_constant;
    config["placement"] = options.placement;
    config["seed"] = options.seed;
    config["tau_single"] = options.tau_single;
    config["tau_double"] = options.tau_double;
    config["tau_swap"] = options.tau_swap;
    config["expand_swaps"] = options.expand_swaps;

    EdgeUtilization util = edge_utilization(run.mapped, spec.device);
    ordered_json doc;
    doc["schema"] = 1;
    doc["config"] = std::move(config);
    doc["ideal_cost"] = run.report.ideal_cost;
    doc["mapping_cost"] = run.report.mapping_cost;
    doc["swap_count"] = run.report.swap_count;
    doc["wall_ms"] = run.report.wall_ms;
    doc["edge_utilization"] =
        ordered_json{{"counts", util.counts}, {"stddev", util.stddev}, {"max", util.max}};
    return doc.dump(2) + "\n";
}

}  // namespace

int cmd_map(const MapOptions& options) {
    if (options.input_path.empty() == options.gen_spec.empty()) {
        std::cerr << "duostra: exactly one of --input and --gen is required\n";
        return kExitUsage;
    }
    if (options.device_path.empty() == options.topo_spec.empty()) {
        std::cerr << "duostra: exactly one of --device and --topo is required\n";
        return kExitUsage;
    }

    RunSpec spec;
    if (!parse_router(options.router, spec.request.router)) {
        std::cerr << "duostra: unknown router '" << options.router << "'\n";
        return kExitUsage;
    }
    if (!parse_scheduler(options.scheduler, spec.request.scheduler.kind)) {
        std::cerr << "duostra: unknown scheduler '" << options.scheduler << "'\n";
        return kExitUsage;
    }
    if (!parse_placement(options.placement, spec.request.placement)) {
        std::cerr << "duostra: unknown placement '" << options.placement << "'\n";
        return kExitUsage;
    }
    spec.request.scheduler.depth = options.depth;
    spec.request.scheduler.sp_constant = options.sp_constant;
    spec.request.seed = options.seed;
    spec.request.timing.tau_single = options.tau_single;
    spec.request.timing.tau_double = options.tau_double;
    spec.request.timing.tau_swap = options.tau_swap;

    try {
        if (!spec.request.timing.valid()) {
            throw ValidationError("timing durations must be positive");
        }
        if (!options.gen_spec.empty()) {
            spec.circuit = generate_circuit(options.gen_spec);
            spec.circuit_desc = "gen:" + options.gen_spec;
        } else {
            spec.circuit = decompose(parse_qasm(read_file(options.input_path)));
            spec.circuit_desc = "file:" + options.input_path;
        }
        if (!options.topo_spec.empty()) {
            spec.device = builtin_topology(options.topo_spec);
            spec.device_desc = "topo:" + options.topo_spec;
        } else {
            spec.device = load_device(read_file(options.device_path));
            spec.device_desc = "file:" + options.device_path;
        }
    } catch (const std::exception& e) {
        std::cerr << "duostra: " << e.what() << "\n";
        return kExitBadInput;
    }

    if (options.verbosity >= 1) {
        spec.request.trace = [](GateId g, const RoutingPlan& plan) {
            json line{{"gate", g}, {"swaps", plan.swap_count()}, {"objective", plan.objective}};
            std::cerr << line.dump() << "\n";
        };
    }

    RunResult run;
    try {
        run = execute(spec);
    } catch (const VerificationError& e) {
        std::cerr << "duostra: verification failed: " << e.what() << "\n";
        return kExitVerifyFailed;
    } catch (const std::exception& e) {
        std::cerr << "duostra: " << e.what() << "\n";
        return kExitBadInput;
    }

    try {
        if (!options.out_qasm.empty()) {
            write_file(options.out_qasm, emit_mapped_qasm(run.mapped, options.expand_swaps));
        }
        if (!options.out_layout.empty()) {
            write_file(options.out_layout, layout_json(run.mapped, !options.gen_spec.empty()));
        }
        if (!options.out_stats.empty()) {
            write_file(options.out_stats, stats_json(options, spec, run));
        }
    } catch (const std::exception& e) {
        std::cerr << "duostra: " << e.what() << "\n";
        return kExitBadInput;
    }

    std::cout << spec.circuit_desc << " onto " << spec.device_desc << ": cost "
              << run.report.mapping_cost << " (ideal " << run.report.ideal_cost << "), "
              << run.report.swap_count << " swaps, " << run.mapped.ops.size() << " ops\n";
    return kExitOk;
}

int cmd_topo(const TopoOptions& options) {
    DeviceGraph device{DeviceGraph(2, {{0, 1}})};
    try {
        device = builtin_topology(options.spec);
    } catch (const std::exception& e) {
        std::cerr << "duostra: " << e.what() << "\n";
        return kExitUsage;
    }
    std::size_t max_degree = 0;
    for (PhysicalQubit p = 0; p < device.num_qubits(); ++p) {
        max_degree = std::max(max_degree, device.adjacency(p).size());
    }
    std::ostringstream summary;
    summary << options.spec << ": " << device.num_qubits() << " qubits, "
            << device.edges().size() << " edges, max degree " << max_degree << "\n";

    if (options.out_path.empty()) {
        std::cout << device_to_json(device);
        std::cerr << summary.str();
        return kExitOk;
    }
    try {
        write_file(options.out_path, device_to_json(device));
    } catch (const std::exception& e) {
        std::cerr << "duostra: " << e.what() << "\n";
        return kExitBadInput;
    }
    std::cout << summary.str();
    return kExitOk;
}

namespace {

/// One suite cell, resolved from JSON with map-flag defaults.
struct BenchCell {
    std::string circuit;
    std::string device;
    std::string router = "duostra";
    std::string scheduler = "sp";
    std::uint32_t depth = 4;
    std::int64_t sp_constant = 1;
    std::string placement = "dfs";
    std::uint64_t seed = 0;
    std::int64_t tau_single = 1;
    std::int64_t tau_double = 2;
    std::int64_t tau_swap = 6;
};

struct BenchRow {
    BenchCell cell;
    std::string status = "ok";
    bool ok = false;
    CostReport report;
};

BenchCell parse_cell(const json& node, std::size_t index) {
    if (!node.is_object()) {
        throw ValidationError("suite cell " + std::to_string(index) + " is not an object");
    }
    static const char* known[] = {"circuit",   "device",     "router",     "scheduler",
                                  "depth",     "sp_constant", "placement", "seed",
                                  "tau_single", "tau_double", "tau_swap"};
    for (auto it = node.begin(); it != node.end(); ++it) {
        bool recognized = false;
        for (const char* key : known) recognized = recognized || it.key() == key;
        if (!recognized) {
            throw ValidationError("suite cell " + std::to_string(index) + " has unknown key '" +
                                  it.key() + "'");
        }
    }
    BenchCell cell;
    try {
        cell.circuit = node.at("circuit").get<std::string>();
        cell.device = node.at("device").get<std::string>();
        cell.router = node.value("router", cell.router);
        cell.scheduler = node.value("scheduler", cell.scheduler);
        cell.depth = node.value("depth", cell.depth);
        cell.sp_constant = node.value("sp_constant", cell.sp_constant);
        cell.placement = node.value("placement", cell.placement);
        cell.seed = node.value("seed", cell.seed);
        cell.tau_single = node.value("tau_single", cell.tau_single);
        cell.tau_double = node.value("tau_double", cell.tau_double);
        cell.tau_swap = node.value("tau_swap", cell.tau_swap);
    } catch (const json::exception& e) {
        throw ValidationError("suite cell " + std::to_string(index) + ": " + e.what());
    }
    return cell;
}

BenchRow run_cell(const BenchCell& cell) {
    BenchRow row;
    row.cell = cell;
    try {
        RunSpec spec;
        if (!parse_router(cell.router, spec.request.router)) {
            throw ValidationError("unknown router '" + cell.router + "'");
        }
        if (!parse_scheduler(cell.scheduler, spec.request.scheduler.kind)) {
            throw ValidationError("unknown scheduler '" + cell.scheduler + "'");
        }
        if (!parse_placement(cell.placement, spec.request.placement)) {
            throw ValidationError("unknown placement '" + cell.placement + "'");
        }
        spec.request.scheduler.depth = cell.depth;
        spec.request.scheduler.sp_constant = cell.sp_constant;
        spec.request.seed = cell.seed;
        spec.request.timing.tau_single = cell.tau_single;
        spec.request.timing.tau_double = cell.tau_double;
        spec.request.timing.tau_swap = cell.tau_swap;
        if (!spec.request.timing.valid()) {
            throw ValidationError("timing durations must be positive");
        }
        spec.circuit = looks_like_spec(cell.circuit)
                           ? generate_circuit(cell.circuit)
                           : decompose(parse_qasm(read_file(cell.circuit)));
        spec.device = looks_like_spec(cell.device) ? builtin_topology(cell.device)
                                                   : load_device(read_file(cell.device));
        row.report = execute(spec).report;
        row.ok = true;
    } catch (const VerificationError& e) {
        row.status = std::string("verify-failed: ") + e.what();
    } catch (const std::exception& e) {
        row.status = std::string("error: ") + e.what();
    }
    return row;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string format_double(double value, const char* spec) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, value);
    return buf;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << "circuit,device,router,scheduler,placement,seed,status,ideal_cost,mapping_cost,"
           "swap_count,wall_ms,util_stddev,util_max\n";
    for (const BenchRow& row : rows) {
        out << csv_escape(row.cell.circuit) << ',' << csv_escape(row.cell.device) << ','
            << row.cell.router << ',' << row.cell.scheduler << ',' << row.cell.placement << ','
            << row.cell.seed << ',' << csv_escape(row.status) << ',';
        if (row.ok) {
            out << row.report.ideal_cost << ',' << row.report.mapping_cost << ','
                << row.report.swap_count << ',' << format_double(row.report.wall_ms, "%.3f")
                << ',' << format_double(row.report.util_stddev, "%.6g") << ','
                << row.report.util_max;
        } else {
            out << ",,,,,";
        }
        out << '\n';
    }
    return out.str();
}

std::string bench_json(const std::vector<BenchRow>& rows) {
    ordered_json table;
    table["schema"] = 1;
    table["rows"] = ordered_json::array();
    for (const BenchRow& row : rows) {
        ordered_json r;
        r["circuit"] = row.cell.circuit;
        r["device"] = row.cell.device;
        r["router"] = row.cell.router;
        r["scheduler"] = row.cell.scheduler;
        r["placement"] = row.cell.placement;
        r["seed"] = row.cell.seed;
        r["status"] = row.status;
        if (row.ok) {
            r["ideal_cost"] = row.report.ideal_cost;
            r["mapping_cost"] = row.report.mapping_cost;
            r["swap_count"] = row.report.swap_count;
            r["wall_ms"] = row.report.wall_ms;
            r["util_stddev"] = row.report.util_stddev;
            r["util_max"] = row.report.util_max;
        } else {
            r["ideal_cost"] = nullptr;
            r["mapping_cost"] = nullptr;
            r["swap_count"] = nullptr;
            r["wall_ms"] = nullptr;
            r["util_stddev"] = nullptr;
            r["util_max"] = nullptr;
        }
        table["rows"].push_back(std::move(r));
    }
    return table.dump(2) + "\n";
}

}  // namespace

int cmd_bench(const BenchOptions& options) {
    std::vector<BenchCell> cells;
    try {
        json suite = json::parse(read_file(options.suite_path));
        if (!suite.is_array()) throw ValidationError("suite file must hold a JSON array");
        for (std::size_t i = 0; i < suite.size(); ++i) cells.push_back(parse_cell(suite[i], i));
    } catch (const json::exception& e) {
        std::cerr << "duostra: cannot parse suite: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "duostra: " << e.what() << "\n";
        return kExitBadInput;
    }

    std::vector<BenchRow> rows(cells.size());
    if (!cells.empty()) {
        unsigned jobs = options.jobs != 0 ? options.jobs : std::thread::hardware_concurrency();
        jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(cells.size())));
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= cells.size()) break;
                rows[i] = run_cell(cells[i]);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    bool as_json = options.out_path.size() >= 5 &&
                   options.out_path.compare(options.out_path.size() - 5, 5, ".json") == 0;
    std::string table = as_json ? bench_json(rows) : bench_csv(rows);
    if (options.out_path.empty()) {
        std::cout << table;
        return kExitOk;
    }
    try {
        write_file(options.out_path, table);
    } catch (const std::exception& e) {
        std::cerr << "duostra: " << e.what() << "\n";
        return kExitBadInput;
    }
    std::cout << rows.size() << " cells -> " << options.out_path << "\n";
    return kExitOk;
}

}  // namespace duostra
