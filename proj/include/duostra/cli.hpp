#pragma once

#include <cstdint>
#include <string>

namespace duostra {

/// Exit codes shared by all subcommands.
/// 0 success, 1 usage error, 2 invalid input, 3 verification failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitVerifyFailed = 3;

/// `duostra map`: route one circuit onto one device and emit artifacts.
/// Exactly one of input_path/gen_spec and one of device_path/topo_spec
/// must be set. Artifacts are only written after mapping and
/// verification succeed, so a failing run leaves no partial outputs.
struct MapOptions {
    std::string input_path;      // OpenQASM 2.0 file
    std::string gen_spec;        // builtin generator, e.g. "qft:16"
    std::string device_path;     // device JSON file
    std::string topo_spec;       // builtin topology, e.g. "heavy_hex:2x3"
    std::string router = "duostra";     // duostra | shortest-path
    std::string scheduler = "sp";       // sp | le | static
    std::uint32_t depth = 4;            // le lookahead depth
    std::int64_t sp_constant = 1;       // sp distance weight
    std::string placement = "dfs";      // dfs | identity | random
    std::uint64_t seed = 0;
    std::int64_t tau_single = 1;
    std::int64_t tau_double = 2;
    std::int64_t tau_swap = 6;
    bool expand_swaps = false;   // emit swaps as 3 cx in the QASM output
    std::string out_qasm;
    std::string out_layout;
    std::string out_stats;
    int verbosity = 0;           // >=1 traces each routed gate to stderr
};

int cmd_map(const MapOptions& options);

/// `duostra topo`: materialize a builtin topology as device JSON.
struct TopoOptions {
    std::string spec;            // e.g. "ring:8", "grid:3x4", "heavy_hex:2x2"
    std::string out_path;        // empty prints the JSON to stdout
};

int cmd_topo(const TopoOptions& options);

/// `duostra bench`: run a suite of mapping cells and tabulate costs.
/// The suite file is a JSON array of cells; each cell names a circuit
/// ("qft:N" or a QASM path), a device (builtin spec or JSON path) and
/// optional overrides matching the map flags. Cells run in parallel;
/// a failing cell is recorded in its row and the harness continues.
struct BenchOptions {
    std::string suite_path;
    std::string out_path;        // .json for a JSON table, else CSV; empty prints CSV
    unsigned jobs = 0;           // 0 = hardware concurrency
};

int cmd_bench(const BenchOptions& options);

}  // namespace duostra
