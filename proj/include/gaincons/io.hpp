#pragma once

// Text formats and report records.
//
// Graph file:     "n m" header, then one "tail head exponent" line per arc.
// Sequence file:  "n m period" header (period 0 = finite schedule), then arc
//                 blocks in the graph format separated by "---" lines.
// Blank lines and text after '#' are ignored in both.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gaincons/balance.hpp"
#include "gaincons/dynamics.hpp"
#include "gaincons/lift.hpp"
#include "gaincons/sequence.hpp"

namespace gaincons {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

GainGraph parse_graph(std::istream& in, bool validate_neighbor_graph = false);
GainGraph read_graph_file(const std::filesystem::path& path, bool validate_neighbor_graph = false);
/// Canonical form: header then arcs in (tail, head, gain) order.
std::string serialize_graph(const ArcSet& g);

GraphSequence parse_sequence(std::istream& in);
GraphSequence read_sequence_file(const std::filesystem::path& path);
std::string serialize_sequence(const GraphSequence& seq);

/// Round-trip-safe decimal (17 significant digits).
std::string format_double(double v);

/// Exact "p/q" entries, one matrix row per line.
void write_fraction_csv(std::ostream& out, const LiftedMatrix& gbar);
/// Complex gain matrix entries as "re" and "im" column pairs.
void write_complex_csv(std::ostream& out, const GainMatrix& g);
/// t, re_1, im_1, ..., modulus_spread, cluster_disagreement, max_modulus.
void write_trace_csv(std::ostream& out, const SimulationTrace& trace);

nlohmann::json to_json(const ClusteringVector& b);
nlohmann::json to_json(const ArcSet& g, const BalanceVerdict& v);
nlohmann::json to_json(const ComponentReport& r, int n, int m);
nlohmann::json to_json(const SequenceVerdict& v);
nlohmann::json to_json(const LimitVerdict& v);
nlohmann::json to_json(const RateFit& fit);

/// "V1={1,3} V2={2} V3={}".
std::string format_partition(const ClusteringVector& b);

}  // namespace gaincons
