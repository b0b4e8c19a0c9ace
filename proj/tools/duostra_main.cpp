#include <CLI11.hpp>

#include "duostra/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"duostra: route logical quantum circuits onto device topologies"};
    app.require_subcommand(1);

    duostra::MapOptions map_options;
    CLI::App* map = app.add_subcommand("map", "map one circuit onto one device");
    auto* in = map->add_option("--input", map_options.input_path, "OpenQASM 2.0 circuit file");
    map->add_option("--gen", map_options.gen_spec, "builtin circuit generator (qft:N)")
        ->excludes(in);
    auto* dev = map->add_option("--device", map_options.device_path, "device JSON file");
    map->add_option("--topo", map_options.topo_spec,
                    "builtin topology (line:N, ring:N, grid:RxC, heavy_hex:RxC)")
        ->excludes(dev);
    map->add_option("--router", map_options.router, "routing algorithm")
        ->check(CLI::IsMember({"duostra", "shortest-path"}));
    map->add_option("--scheduler", map_options.scheduler, "gate selection policy")
        ->check(CLI::IsMember({"sp", "le", "static"}));
    map->add_option("--depth", map_options.depth, "lookahead depth for --scheduler le");
    map->add_option("--sp-constant", map_options.sp_constant,
                    "distance weight for --scheduler sp");
    map->add_option("--placement", map_options.placement, "initial placement strategy")
        ->check(CLI::IsMember({"dfs", "identity", "random"}));
    map->add_option("--seed", map_options.seed, "seed for --placement random");
    map->add_option("--tau-single", map_options.tau_single, "single-qubit gate duration");
    map->add_option("--tau-double", map_options.tau_double, "double-qubit gate duration");
    map->add_option("--tau-swap", map_options.tau_swap, "swap duration");
    map->add_flag("--expand-swaps", map_options.expand_swaps,
                  "emit each routing swap as three cx in the QASM output");
    map->add_option("--out-qasm", map_options.out_qasm, "mapped circuit output path");
    map->add_option("--out-layout", map_options.out_layout, "initial/final layout JSON path");
    map->add_option("--out-stats", map_options.out_stats, "cost statistics JSON path");
    map->add_flag("-v,--verbose", map_options.verbosity,
                  "trace every routed gate as a JSON line on stderr");

    duostra::TopoOptions topo_options;
    CLI::App* topo = app.add_subcommand("topo", "materialize a builtin topology as device JSON");
    topo->add_option("spec", topo_options.spec, "topology spec, e.g. heavy_hex:2x3")
        ->required();
    topo->add_option("--out", topo_options.out_path, "output path (default: stdout)");

    duostra::BenchOptions bench_options;
    CLI::App* bench = app.add_subcommand("bench", "run a suite of mapping cells");
    bench->add_option("suite", bench_options.suite_path, "suite JSON file (array of cells)")
        ->required();
    bench->add_option("--out", bench_options.out_path,
                      "table output path, .json for JSON (default: CSV on stdout)");
    bench->add_option("--jobs", bench_options.jobs, "worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? duostra::kExitOk : duostra::kExitUsage;
    }

    if (map->parsed()) return duostra::cmd_map(map_options);
    if (topo->parsed()) return duostra::cmd_topo(topo_options);
    if (bench->parsed()) return duostra::cmd_bench(bench_options);
    return duostra::kExitUsage;
}
