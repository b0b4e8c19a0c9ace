#include "duostra/device.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include <json.hpp>

#include "duostra/error.hpp"

namespace duostra {

namespace {

std::uint64_t edge_key(PhysicalQubit a, PhysicalQubit b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

DeviceGraph::DeviceGraph(std::uint32_t num_qubits, std::vector<Edge> edges)
    : num_qubits_(num_qubits) {
    if (num_qubits_ == 0) throw ValidationError("device must have at least one qubit");
    for (Edge& e : edges) {
        if (e.first == e.second) {
            throw ValidationError("self-loop edge (" + std::to_string(e.first) + "," +
                                  std::to_string(e.second) + ")");
        }
        if (e.first >= num_qubits_ || e.second >= num_qubits_) {
            throw ValidationError("edge (" + std::to_string(e.first) + "," +
                                  std::to_string(e.second) + ") is out of range for " +
                                  std::to_string(num_qubits_) + " qubits");
        }
        if (e.first > e.second) std::swap(e.first, e.second);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);

    adj_.resize(num_qubits_);
    for (std::uint32_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        adj_[e.first].push_back(e.second);
        adj_[e.second].push_back(e.first);
        edge_index_.emplace(edge_key(e.first, e.second), i);
    }
    for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());

    // connectivity
    std::vector<std::int32_t> hops = bfs_hops(*this, 0);
    for (PhysicalQubit q = 0; q < num_qubits_; ++q) {
        if (hops[q] < 0) {
            throw ValidationError("device graph is disconnected (qubit " + std::to_string(q) +
                                  " unreachable from qubit 0)");
        }
    }
}

bool DeviceGraph::are_adjacent(PhysicalQubit a, PhysicalQubit b) const {
    return edge_index_.count(edge_key(a, b)) > 0;
}

std::uint32_t DeviceGraph::edge_index(PhysicalQubit a, PhysicalQubit b) const {
    auto it = edge_index_.find(edge_key(a, b));
    if (it == edge_index_.end()) {
        throw std::logic_error("edge_index: (" + std::to_string(a) + "," + std::to_string(b) +
                               ") is not a device edge");
    }
    return it->second;
}

DeviceGraph load_device(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("device json: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("num_qubits") || !doc.contains("edges")) {
        throw ParseError("device json must be an object with num_qubits and edges");
    }
    if (!doc["num_qubits"].is_number_unsigned()) {
        throw ParseError("device json: num_qubits must be a non-negative integer");
    }
    if (!doc["edges"].is_array()) throw ParseError("device json: edges must be an array");
    std::vector<Edge> edges;
    for (const auto& item : doc["edges"]) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number_unsigned() ||
            !item[1].is_number_unsigned()) {
            throw ParseError("device json: each edge must be a pair of qubit indices");
        }
        edges.emplace_back(item[0].get<std::uint32_t>(), item[1].get<std::uint32_t>());
    }
    return DeviceGraph(doc["num_qubits"].get<std::uint32_t>(), std::move(edges));
}

std::string device_to_json(const DeviceGraph& device) {
    nlohmann::ordered_json doc;
    doc["schema"] = 1;
    doc["num_qubits"] = device.num_qubits();
    auto edges = nlohmann::ordered_json::array();
    for (const Edge& e : device.edges()) {
        edges.push_back({e.first, e.second});
    }
    doc["edges"] = std::move(edges);
    return doc.dump(2) + "\n";
}

namespace {

DeviceGraph make_line(std::uint32_t n) {
    std::vector<Edge> edges;
    for (std::uint32_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return DeviceGraph(n, std::move(edges));
}

DeviceGraph make_ring(std::uint32_t n) {
    std::vector<Edge> edges;
    for (std::uint32_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    if (n >= 3) edges.emplace_back(0, n - 1);
    return DeviceGraph(n, std::move(edges));
}

DeviceGraph make_grid(std::uint32_t rows, std::uint32_t cols) {
    std::vector<Edge> edges;
    auto at = [cols](std::uint32_t r, std::uint32_t c) { return r * cols + c; };
    for (std::uint32_t r = 0; r < rows; ++r) {
        for (std::uint32_t c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.emplace_back(at(r, c), at(r, c + 1));
            if (r + 1 < rows) edges.emplace_back(at(r, c), at(r + 1, c));
        }
    }
    return DeviceGraph(rows * cols, std::move(edges));
}

// Hexagonal cells laid out brick-wall style: cell (i,j) spans corners
// (x0..x0+2, i) and (x0..x0+2, i+1) with x0 = 2j + (i&1). Corners are
// shared between neighboring cells; every cell-boundary segment then
// receives one degree-2 bridge qubit. An RxC lattice has 2RC+2R+2C
// corners and 3RC+2R+2C-1 segments, so 5RC+4R+4C-1 qubits total.
DeviceGraph make_heavy_hex(std::uint32_t rows, std::uint32_t cols) {
    using Coord = std::pair<std::uint32_t, std::uint32_t>;  // (y, x)
    std::set<Coord> corner_set;
    std::set<std::pair<Coord, Coord>> segment_set;
    auto add_segment = [&](Coord a, Coord b) {
        if (b < a) std::swap(a, b);
        segment_set.insert({a, b});
    };
    for (std::uint32_t i = 0; i < rows; ++i) {
        for (std::uint32_t j = 0; j < cols; ++j) {
            std::uint32_t x0 = 2 * j + (i & 1);
            Coord t0{i, x0}, t1{i, x0 + 1}, t2{i, x0 + 2};
            Coord b0{i + 1, x0}, b1{i + 1, x0 + 1}, b2{i + 1, x0 + 2};
            for (Coord c : {t0, t1, t2, b0, b1, b2}) corner_set.insert(c);
            add_segment(t0, t1);
            add_segment(t1, t2);
            add_segment(b0, b1);
            add_segment(b1, b2);
            add_segment(t0, b0);
            add_segment(t2, b2);
        }
    }
    std::map<Coord, PhysicalQubit> corner_id;
    PhysicalQubit next = 0;
    for (const Coord& c : corner_set) corner_id[c] = next++;
    std::vector<Edge> edges;
    for (const auto& seg : segment_set) {
        PhysicalQubit bridge = next++;
        edges.emplace_back(corner_id[seg.first], bridge);
        edges.emplace_back(bridge, corner_id[seg.second]);
    }
    return DeviceGraph(next, std::move(edges));
}

}  // namespace

DeviceGraph builtin_topology(const std::string& spec) {
    std::size_t colon = spec.find(':');
    if (colon == std::string::npos) {
        throw ValidationError("topology spec '" + spec + "' must look like name:params");
    }
    std::string name = spec.substr(0, colon);
    std::string params = spec.substr(colon + 1);
    auto parse_uint = [&](const std::string& s) -> std::uint32_t {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
            throw ValidationError("topology spec '" + spec + "' has a malformed parameter");
        }
        unsigned long v = std::strtoul(s.c_str(), nullptr, 10);
        if (v == 0 || v > 100000) {
            throw ValidationError("topology spec '" + spec + "' parameter out of range");
        }
        return static_cast<std::uint32_t>(v);
    };
    if (name == "line" || name == "ring") {
        std::uint32_t n = parse_uint(params);
        return name == "line" ? make_line(n) : make_ring(n);
    }
    if (name == "grid" || name == "heavy_hex") {
        std::size_t x = params.find('x');
        if (x == std::string::npos) {
            throw ValidationError("topology spec '" + spec + "' needs RxC parameters");
        }
        std::uint32_t r = parse_uint(params.substr(0, x));
        std::uint32_t c = parse_uint(params.substr(x + 1));
        return name == "grid" ? make_grid(r, c) : make_heavy_hex(r, c);
    }
    throw ValidationError("unknown topology '" + name + "'");
}

std::vector<std::int32_t> bfs_hops(const DeviceGraph& device, PhysicalQubit source) {
    std::vector<std::int32_t> hops(device.num_qubits(), -1);
    std::deque<PhysicalQubit> queue{source};
    hops[source] = 0;
    while (!queue.empty()) {
        PhysicalQubit q = queue.front();
        queue.pop_front();
        for (PhysicalQubit w : device.adjacency(q)) {
            if (hops[w] < 0) {
                hops[w] = hops[q] + 1;
                queue.push_back(w);
            }
        }
    }
    return hops;
}

DistanceMatrix::DistanceMatrix(const DeviceGraph& device, std::uint32_t dense_threshold)
    : device_(device), n_(device.num_qubits()), dense_(n_ <= dense_threshold) {
    if (dense_) {
        table_.resize(static_cast<std::size_t>(n_) * n_);
        for (PhysicalQubit q = 0; q < n_; ++q) {
            std::vector<std::int32_t> row = bfs_hops(device_, q);
            std::copy(row.begin(), row.end(), table_.begin() + static_cast<std::size_t>(q) * n_);
        }
    }
}

std::int32_t DistanceMatrix::distance(PhysicalQubit a, PhysicalQubit b) const {
    if (dense_) return table_[static_cast<std::size_t>(a) * n_ + b];
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = rows_.find(a);
    if (it == rows_.end()) it = rows_.emplace(a, bfs_hops(device_, a)).first;
    return it->second[b];
}

}  // namespace duostra
