#include "gaincons/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

namespace gaincons {

namespace {

struct Line {
    int number;
    std::vector<std::string> fields;
};

std::vector<Line> tokenize(std::istream& in) {
    std::vector<Line> lines;
    std::string text;
    int number = 0;
    while (std::getline(in, text)) {
        ++number;
        if (const auto hash = text.find('#'); hash != std::string::npos) text.resize(hash);
        std::istringstream fields(text);
        Line line{number, {}};
        for (std::string f; fields >> f;) line.fields.push_back(f);
        if (!line.fields.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

long long to_integer(const Line& line, const std::string& field) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw ParseError(line.number, "expected an integer, got '" + field + "'");
    }
    return v;
}

GainGraph build_graph(const std::vector<Line>& arc_lines, int n, GroupOrder order,
                      bool validate_neighbor_graph, int block_line) {
    std::vector<Arc> arcs;
    std::vector<std::pair<int, int>> seen;
    for (const Line& line : arc_lines) {
        if (line.fields.size() != 3) {
            throw ParseError(line.number, "expected 'tail head exponent'");
        }
        const long long tail = to_integer(line, line.fields[0]);
        const long long head = to_integer(line, line.fields[1]);
        const long long e = to_integer(line, line.fields[2]);
        if (tail < 1 || tail > n || head < 1 || head > n) {
            throw ParseError(line.number, "vertex outside 1.." + std::to_string(n));
        }
        if (e < 0 || e >= order.value()) {
            throw ParseError(line.number, "gain exponent outside 0.." + std::to_string(order.value() - 1));
        }
        for (const auto& [t, h] : seen) {
            if (t == tail && h == head) {
                throw ParseError(line.number, "duplicate arc (" + std::to_string(tail) + ", " +
                                                  std::to_string(head) + ")");
            }
        }
        seen.emplace_back(static_cast<int>(tail), static_cast<int>(head));
        arcs.push_back({static_cast<Vertex>(tail), static_cast<Vertex>(head),
                        GainExponent(static_cast<int>(e), order)});
    }
    try {
        return GainGraph(n, order, std::move(arcs), validate_neighbor_graph);
    } catch (const std::invalid_argument& e) {
        throw ParseError(block_line, e.what());
    }
}

std::pair<int, GroupOrder> parse_header_nm(const Line& line) {
    const long long n = to_integer(line, line.fields[0]);
    const long long m = to_integer(line, line.fields[1]);
    if (n < 1) throw ParseError(line.number, "vertex count must be >= 1");
    if (m < 2) throw ParseError(line.number, "group order must be >= 2");
    return {static_cast<int>(n), GroupOrder(static_cast<int>(m))};
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return in;
}

}  // namespace

GainGraph parse_graph(std::istream& in, bool validate_neighbor_graph) {
    const auto lines = tokenize(in);
    if (lines.empty()) throw ParseError(0, "empty graph file");
    if (lines.front().fields.size() != 2) throw ParseError(lines.front().number, "expected header 'n m'");
    const auto [n, order] = parse_header_nm(lines.front());
    const std::vector<Line> arcs(lines.begin() + 1, lines.end());
    return build_graph(arcs, n, order, validate_neighbor_graph, lines.front().number);
}

GainGraph read_graph_file(const std::filesystem::path& path, bool validate_neighbor_graph) {
    auto in = open_or_throw(path);
    return parse_graph(in, validate_neighbor_graph);
}

std::string serialize_graph(const ArcSet& g) {
    std::ostringstream out;
    out << g.n() << ' ' << g.order().value() << '\n';
    for (const Arc& a : g.arcs()) out << a.tail << ' ' << a.head << ' ' << a.gain.value() << '\n';
    return out.str();
}

GraphSequence parse_sequence(std::istream& in) {
    const auto lines = tokenize(in);
    if (lines.empty()) throw ParseError(0, "empty sequence file");
    const Line& header = lines.front();
    if (header.fields.size() != 3) throw ParseError(header.number, "expected header 'n m period'");
    const auto [n, order] = parse_header_nm(header);
    const long long period = to_integer(header, header.fields[2]);
    if (period < 0) throw ParseError(header.number, "period must be >= 0");

    std::vector<GainGraph> graphs;
    std::vector<Line> block;
    int block_line = header.number;
    auto flush = [&](bool allow_empty) {
        if (block.empty()) {
            if (!allow_empty) throw ParseError(block_line, "empty graph block");
            return;
        }
        graphs.push_back(build_graph(block, n, order, true, block_line));
        block.clear();
    };
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const Line& line = lines[k];
        if (line.fields.size() == 1 && line.fields[0] == "---") {
            flush(graphs.empty());
            block_line = line.number;
            continue;
        }
        if (block.empty()) block_line = line.number;
        block.push_back(line);
    }
    flush(true);
    if (graphs.empty()) throw ParseError(header.number, "sequence has no graphs");

    try {
        if (period == 0) return GraphSequence::finite(std::move(graphs));
        return GraphSequence::periodic(std::move(graphs), static_cast<std::size_t>(period));
    } catch (const std::invalid_argument& e) {
        throw ParseError(header.number, e.what());
    }
}

GraphSequence read_sequence_file(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    return parse_sequence(in);
}

std::string serialize_sequence(const GraphSequence& seq) {
    std::ostringstream out;
    out << seq.n() << ' ' << seq.order().value() << ' ' << (seq.is_periodic() ? seq.period() : 0)
        << '\n';
    for (std::size_t k = 0; k < seq.graphs().size(); ++k) {
        if (k > 0) out << "---\n";
        for (const Arc& a : seq.graphs()[k].arcs()) {
            out << a.tail << ' ' << a.head << ' ' << a.gain.value() << '\n';
        }
    }
    return out.str();
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_fraction_csv(std::ostream& out, const LiftedMatrix& gbar) {
    for (int r = 1; r <= gbar.size(); ++r) {
        for (int c = 1; c <= gbar.size(); ++c) {
            if (c > 1) out << ',';
            out << gbar.at(r, c).to_string();
        }
        out << '\n';
    }
}

void write_complex_csv(std::ostream& out, const GainMatrix& g) {
    for (int j = 1; j <= g.n(); ++j) out << (j > 1 ? "," : "") << "re_" << j << ",im_" << j;
    out << '\n';
    for (int i = 1; i <= g.n(); ++i) {
        for (int j = 1; j <= g.n(); ++j) {
            const Complex v = g.complex_at(i, j);
            out << (j > 1 ? "," : "") << format_double(v.real()) << ',' << format_double(v.imag());
        }
        out << '\n';
    }
}

void write_trace_csv(std::ostream& out, const SimulationTrace& trace) {
    const std::size_t n = trace.states.empty() ? 0 : trace.states.front().size();
    out << 't';
    for (std::size_t i = 1; i <= n; ++i) out << ",re_" << i << ",im_" << i;
    out << ",modulus_spread,cluster_disagreement,max_modulus\n";
    for (std::size_t t = 0; t < trace.length(); ++t) {
        out << t;
        for (const Complex& v : trace.states[t]) {
            out << ',' << format_double(v.real()) << ',' << format_double(v.imag());
        }
        out << ',' << format_double(trace.modulus_spread[t]) << ','
            << (trace.b ? format_double(trace.cluster_disagreement[t]) : std::string("nan")) << ','
            << format_double(trace.max_modulus[t]) << '\n';
    }
}

nlohmann::json to_json(const ClusteringVector& b) { return b.exponents(); }

nlohmann::json to_json(const ArcSet& g, const BalanceVerdict& v) {
    nlohmann::json out;
    if (const auto* bal = std::get_if<Balanced>(&v)) {
        out["verdict"] = "balanced";
        out["b"] = to_json(bal->b);
        out["partition"] = bal->b.partition();
        return out;
    }
    const auto& unb = std::get<Unbalanced>(v);
    out["verdict"] = "unbalanced";
    out["witness_gain"] = unb.gain.value();
    out["witness_start"] = unb.witness.start;
    nlohmann::json steps = nlohmann::json::array();
    for (const Step& s : unb.witness.steps) {
        const Arc& a = g.arc(s.arc);
        steps.push_back({{"tail", a.tail},
                         {"head", a.head},
                         {"gain", a.gain.value()},
                         {"direction", s.direction == Direction::Forward ? "forward" : "backward"}});
    }
    out["witness"] = std::move(steps);
    return out;
}

nlohmann::json to_json(const ComponentReport& r, int n, int m) {
    nlohmann::json out;
    switch (r.kind) {
        case StructureKind::Balanced: out["classification"] = "balanced-structure"; break;
        case StructureKind::Unbalanced: out["classification"] = "unbalanced-structure"; break;
        case StructureKind::Other: out["classification"] = "other"; break;
    }
    out["sccs"] = r.sccs;
    out["component_count"] = r.component_count;
    out["min_size"] = r.min_size;
    out["max_size"] = r.max_size;
    out["has_singleton"] = r.has_singleton;
    if (r.b) {
        out["b"] = to_json(*r.b);
        out["predicted"] = r.predicted;
        out["matches_prediction"] = r.matches_prediction;
    } else {
        out["bound_max_components"] = m / 2;
        out["bound_min_size"] = 2 * n;
        out["within_bounds"] = r.within_unbalanced_bounds;
    }
    out["counterexample"] = r.is_counterexample();
    return out;
}

nlohmann::json to_json(const SequenceVerdict& v) {
    nlohmann::json out;
    out["verdict"] = to_string(v.kind);
    if (v.b) out["b"] = to_json(*v.b);
    nlohmann::json windows = nlohmann::json::array();
    for (const WindowReport& w : v.windows) {
        nlohmann::json rec{{"k", w.k},
                           {"first_time", w.first_time},
                           {"strongly_connected", w.strongly_connected},
                           {"balanced", w.b.has_value()}};
        if (w.b) rec["b"] = to_json(*w.b);
        windows.push_back(std::move(rec));
    }
    out["windows"] = std::move(windows);
    return out;
}

nlohmann::json to_json(const RateFit& fit) {
    nlohmann::json out;
    if (fit.hit_zero) {
        out["rate"] = "-inf";
    } else {
        out["rate"] = fit.slope;
    }
    out["r_squared"] = fit.r_squared;
    out["fit_samples"] = fit.samples;
    return out;
}

nlohmann::json to_json(const LimitVerdict& v) {
    nlohmann::json out;
    out["verdict"] = verdict_name(v);
    if (const auto* mc = std::get_if<MModulusConsensus>(&v)) {
        out["b_hat"] = to_json(mc->b_hat);
        nlohmann::json clusters = nlohmann::json::array();
        for (const auto& [e, value] : mc->cluster_values) {
            clusters.push_back({{"exponent", e}, {"re", value.real()}, {"im", value.imag()}});
        }
        out["clusters"] = std::move(clusters);
        out["occupied_classes"] = mc->cluster_values.size();
        out["fit"] = to_json(mc->rate);
    } else if (const auto* z = std::get_if<ZeroLimit>(&v)) {
        out["fit"] = to_json(z->rate);
    }
    return out;
}

std::string format_partition(const ClusteringVector& b) {
    std::ostringstream out;
    const auto parts = b.partition();
    for (std::size_t p = 0; p < parts.size(); ++p) {
        if (p > 0) out << ' ';
        out << 'V' << (p + 1) << "={";
        for (std::size_t k = 0; k < parts[p].size(); ++k) out << (k > 0 ? "," : "") << parts[p][k];
        out << '}';
    }
    return out.str();
}

}  // namespace gaincons
