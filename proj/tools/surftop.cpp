// surftop: classify surfaces from gluing words, compute fundamental-group
// presentations, and analyze Morse functions and vector fields on charts.
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "topo/classify.hpp"
#include "topo/complex.hpp"
#include "topo/expr.hpp"
#include "topo/flow.hpp"
#include "topo/morse.hpp"
#include "topo/presentation.hpp"
#include "topo/word.hpp"

namespace {

using json = nlohmann::json;
using namespace topo;

constexpr int kExitParse = 2;
constexpr int kExitBadWord = 3;
constexpr int kExitTopology = 4;
constexpr int kExitNumeric = 5;

// Ordered key-value report, printable as text or JSON.
class Report {
public:
    Report(std::string command, const std::string& inputs) : command_(std::move(command)) {
        add("command", command_);
        add("digest", fnv1a(inputs));
    }

    void add(const std::string& key, const std::string& value) {
        entries_.emplace_back(key, value);
    }
    void add(const std::string& key, const char* value) {
        add(key, std::string(value));
    }
    void add(const std::string& key, double value) {
        std::ostringstream os;
        os.precision(12);
        os << value;
        add(key, os.str());
    }
    void add(const std::string& key, int value) { add(key, std::to_string(value)); }
    void add(const std::string& key, bool value) {
        add(key, std::string(value ? "true" : "false"));
    }
    void warn(const std::string& msg) { warnings_.push_back(msg); }

    void print(bool as_json) const {
        if (as_json) {
            json j;
            for (const auto& [k, v] : entries_) j[k] = v;
            j["warnings"] = warnings_;
            std::cout << j.dump(2) << "\n";
        } else {
            for (const auto& [k, v] : entries_) std::cout << k << ": " << v << "\n";
            for (const auto& w : warnings_) std::cout << "warning: " << w << "\n";
        }
    }

private:
    static std::string fnv1a(const std::string& s) {
        std::uint64_t h = 1469598103934665603ull;
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        std::ostringstream os;
        os << std::hex << h;
        return os.str();
    }

    std::string command_;
    std::vector<std::pair<std::string, std::string>> entries_;
    std::vector<std::string> warnings_;
};

std::string format_point(Vec2 p) {
    std::ostringstream os;
    os.precision(9);
    os << "(" << p[0] << ", " << p[1] << ")";
    return os.str();
}

// --------------------------------------------------------------------------
// Chart flags shared by the morse and flow commands.

struct ChartSpec {
    std::string range, urange, vrange;
    bool periodic_u = false, periodic_v = false;

    static std::pair<double, double> parse_range(const std::string& text) {
        const auto colon = text.find(':');
        if (colon == std::string::npos)
            throw ParseError(0, "range must be lo:hi");
        std::size_t used = 0;
        const double lo = std::stod(text.substr(0, colon), &used);
        const double hi = std::stod(text.substr(colon + 1));
        return {lo, hi};
    }

    SurfaceChart build() const {
        auto u = std::pair<double, double>{0.0, 1.0};
        auto v = u;
        if (!range.empty()) u = v = parse_range(range);
        if (!urange.empty()) u = parse_range(urange);
        if (!vrange.empty()) v = parse_range(vrange);
        return SurfaceChart(u.first, u.second, v.first, v.second, periodic_u,
                            periodic_v);
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--range", range, "u and v range as lo:hi");
        cmd->add_option("--urange", urange, "u range as lo:hi");
        cmd->add_option("--vrange", vrange, "v range as lo:hi");
        cmd->add_flag("--periodic-u", periodic_u, "wrap the u axis");
        cmd->add_flag("--periodic-v", periodic_v, "wrap the v axis");
    }
};

// --------------------------------------------------------------------------
// Complex file: `vertex <id>`, `edge <id> <from> <to>`,
// `face <id> <edge word>`, comments with '#'.

CellComplex load_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open complex file: " + path);
    CellComplex c;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        if (kind == "vertex") {
            std::string id;
            if (!(ls >> id))
                throw ParseError(lineno, "vertex needs an id");
            c.vertices.push_back(id);
        } else if (kind == "edge") {
            Edge e;
            if (!(ls >> e.id >> e.from >> e.to))
                throw ParseError(lineno, "edge needs id, from, to");
            c.edges.push_back(std::move(e));
        } else if (kind == "face") {
            Face f;
            if (!(ls >> f.id))
                throw ParseError(lineno, "face needs an id");
            std::string rest;
            std::getline(ls, rest);
            f.boundary = parse_letter_word(rest);
            c.faces.push_back(std::move(f));
        } else {
            throw ParseError(lineno, "unknown record '" + kind + "'");
        }
    }
    return c;
}

// --------------------------------------------------------------------------

int cmd_classify(const std::string& word_text, bool as_json) {
    Report rep("classify", word_text);
    rep.add("input", word_text);
    const GluingWord w = parse_gluing_word(word_text);
    const CellComplex c = word_to_complex(w);
    rep.add("V", static_cast<int>(c.vertices.size()));
    rep.add("E", static_cast<int>(c.edges.size()));
    rep.add("F", static_cast<int>(c.faces.size()));
    rep.add("chi", euler_characteristic(c));
    rep.add("orientable", orientability(w));
    const SurfaceType t = classify_surface(w);
    rep.add("type", t.to_string());
    rep.add("canonical", print_word(canonical_word(t)));
    rep.print(as_json);
    return 0;
}

int cmd_pi1(const std::string& path, const std::string& basepoint, bool abelian,
            bool as_json) {
    const CellComplex c = load_complex(path);
    std::ostringstream digest_src;
    for (const auto& v : c.vertices) digest_src << "v " << v << ";";
    for (const auto& e : c.edges) digest_src << "e " << e.id << ";";
    for (const auto& f : c.faces) digest_src << "f " << print_word(f.boundary) << ";";
    Report rep("pi1", digest_src.str());
    rep.add("input", path);
    const ValidationReport vr = validate_complex(c);
    if (!vr.ok()) {
        for (const auto& v : vr.violations) std::cerr << "error: " << v << "\n";
        return kExitTopology;
    }
    for (const auto& w : vr.warnings) rep.warn(w);
    const std::string bp = basepoint.empty()
                               ? (c.vertices.empty() ? "" : c.vertices.front())
                               : basepoint;
    const GroupPresentation p = pi1_from_complex(c, bp);
    rep.add("presentation", p.to_string());
    if (abelian) {
        const AbelianInvariants inv = abelianization(p);
        rep.add("free_rank", inv.free_rank);
        std::ostringstream tor;
        tor << "[";
        for (std::size_t i = 0; i < inv.torsion.size(); ++i)
            tor << (i ? ", " : "") << inv.torsion[i];
        tor << "]";
        rep.add("torsion", tor.str());
    }
    rep.print(as_json);
    return 0;
}

int cmd_morse(const std::string& expr_text, const ChartSpec& spec, int grid,
              double level, bool has_level, int resolution, bool as_json) {
    const Expression expr = Expression::parse(expr_text);
    const ScalarField f{expr.fn(), spec.build()};
    Report rep("morse", expr_text);
    rep.add("field", expr_text);
    SolverOptions opts;
    opts.grid_n = grid;
    const MorseReport report = is_morse(f, opts);
    rep.add("critical_points", static_cast<int>(report.points.size()));
    rep.add("is_morse", report.is_morse);
    int i = 0;
    for (const auto& p : report.points) {
        const std::string prefix = "point" + std::to_string(i++);
        rep.add(prefix + ".position", format_point(p.position));
        rep.add(prefix + ".value", f(p.position));
        if (p.degenerate)
            rep.add(prefix + ".index", "degenerate");
        else
            rep.add(prefix + ".index", p.index);
        rep.add(prefix + ".eigenvalues",
                format_point({p.eigenvalues[0], p.eigenvalues[1]}));
    }
    if (report.is_morse) rep.add("index_sum", euler_from_indices(report));
    if (has_level)
        rep.add("level_components", level_component_count(f, level, resolution));
    rep.print(as_json);
    return 0;
}

int cmd_flow(const std::vector<std::string>& components, const std::string& gradient_of,
             const ChartSpec& spec, bool ms_check, const std::string& graph_out,
             const std::string& dot_out, const std::string& dump_dir, int grid,
             bool as_json) {
    const SurfaceChart chart = spec.build();
    VectorField X{nullptr, chart};
    std::string field_desc;
    if (!gradient_of.empty()) {
        const Expression expr = Expression::parse(gradient_of);
        X = gradient_field(ScalarField{expr.fn(), chart});
        field_desc = "grad(" + gradient_of + ")";
    } else {
        if (components.size() != 2)
            throw ParseError(0, "flow needs two component expressions or --gradient-of");
        const Expression e1 = Expression::parse(components[0]);
        const Expression e2 = Expression::parse(components[1]);
        auto f1 = e1.fn();
        auto f2 = e2.fn();
        X = VectorField{[f1, f2](double u, double v) -> Vec2 {
                            return {f1(u, v), f2(u, v)};
                        },
                        chart};
        field_desc = "{" + components[0] + ", " + components[1] + "}";
    }
    Report rep("flow", field_desc);
    rep.add("field", field_desc);

    FlowOptions opts;
    opts.grid_n = grid;
    const bool is_gradient = !gradient_of.empty();

    if (!ms_check && graph_out.empty() && dot_out.empty()) {
        const auto pts = find_singular_points(X, opts);
        rep.add("singular_points", static_cast<int>(pts.size()));
        int i = 0;
        for (const auto& s : pts) {
            const std::string prefix = "point" + std::to_string(i++);
            rep.add(prefix + ".position", format_point(s.position));
            rep.add(prefix + ".kind", to_string(s.kind));
        }
        rep.print(as_json);
        return 0;
    }

    const MSVerdict v = morse_smale_check(X, opts);
    rep.add("singular_points", static_cast<int>(v.singular_points.size()));
    int i = 0;
    for (const auto& s : v.singular_points) {
        const std::string prefix = "point" + std::to_string(i++);
        rep.add(prefix + ".position", format_point(s.position));
        rep.add(prefix + ".kind", to_string(s.kind));
    }
    rep.add("status", to_string(v.status));
    rep.add("is_morse_smale", v.is_morse_smale());
    rep.add("all_nondegenerate", v.all_nondegenerate);
    rep.add("closed_orbit_found", v.closed_orbit_found);
    rep.add("saddle_connections", static_cast<int>(v.saddle_connections.size()));
    i = 0;
    for (const auto& sc : v.saddle_connections) {
        const std::string prefix = "connection" + std::to_string(i++);
        rep.add(prefix,
                format_point(v.singular_points[sc.from_saddle].position) + " -> " +
                    format_point(v.singular_points[sc.to_saddle].position));
    }
    if (v.status == MSStatus::NotClosedManifold)
        rep.warn("chart is not a closed surface; trajectory condition cannot hold");

    if (!graph_out.empty() || !dot_out.empty()) {
        const MorseSmaleGraph g = ms_graph_from_verdict(v, is_gradient);
        if (!graph_out.empty()) {
            std::ofstream out(graph_out);
            for (std::size_t n = 0; n < g.nodes.size(); ++n) {
                out << "node " << n << " " << to_string(g.nodes[n].kind) << " "
                    << g.nodes[n].position[0] << " " << g.nodes[n].position[1];
                if (g.nodes[n].morse_index >= 0)
                    out << " index=" << g.nodes[n].morse_index;
                out << "\n";
            }
            for (const auto& e : g.edges)
                out << "edge " << e.saddle << " " << e.target << " "
                    << (e.stable ? "stable" : "unstable") << " slot=" << e.slot << "\n";
            rep.add("graph_file", graph_out);
        }
        if (!dot_out.empty()) {
            std::ofstream out(dot_out);
            out << "digraph ms {\n";
            for (std::size_t n = 0; n < g.nodes.size(); ++n)
                out << "  n" << n << " [label=\"" << to_string(g.nodes[n].kind)
                    << "\"];\n";
            for (const auto& e : g.edges)
                out << "  n" << e.saddle << " -> n" << e.target << " [label=\""
                    << (e.stable ? "stable" : "unstable") << "\"];\n";
            out << "}\n";
            rep.add("dot_file", dot_out);
        }
    }
    if (!dump_dir.empty()) {
        std::filesystem::create_directories(dump_dir);
        int t = 0;
        for (const auto& ts : v.separatrix_evidence) {
            std::ofstream out(dump_dir + "/separatrix" + std::to_string(t++) + ".csv");
            out << "t,u,v\n";
            for (const auto& s : ts.sep.trajectory.samples)
                out << s[0] << "," << s[1] << "," << s[2] << "\n";
        }
        rep.add("trajectories_dumped", t);
    }
    rep.print(as_json);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"closed-surface and Morse/flow analysis toolkit"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit machine-readable JSON");

    auto* classify = app.add_subcommand("classify", "classify a polygon gluing word");
    std::string word_text;
    classify->add_option("word", word_text, "gluing word, e.g. \"a b a^-1 b^-1\"")
        ->required();

    auto* pi1 = app.add_subcommand("pi1", "fundamental group of a complex file");
    std::string complex_path, basepoint;
    bool abelian = false;
    pi1->add_option("file", complex_path, "cell complex file")->required();
    pi1->add_option("--basepoint", basepoint, "basepoint vertex id");
    pi1->add_flag("--abelian", abelian, "also print abelian invariants");

    auto* morse = app.add_subcommand("morse", "critical points of a scalar field");
    std::string morse_expr;
    ChartSpec morse_chart;
    int morse_grid = 64;
    double level = 0.0;
    int resolution = 256;
    morse->add_option("field", morse_expr, "expression in u, v")->required();
    morse_chart.attach(morse);
    morse->add_option("--grid", morse_grid, "Newton seed grid size");
    auto* level_opt = morse->add_option("--level", level, "count components of f=level");
    morse->add_option("--resolution", resolution, "level-set grid resolution");

    auto* flow = app.add_subcommand("flow", "singular points and Morse-Smale check");
    std::vector<std::string> flow_components;
    std::string gradient_of, graph_out, dot_out, dump_dir;
    bool ms_check = false;
    ChartSpec flow_chart;
    int flow_grid = 64;
    flow->add_option("components", flow_components, "field components X1 X2");
    flow->add_option("--gradient-of", gradient_of, "use the gradient of this expression");
    flow_chart.attach(flow);
    flow->add_flag("--ms-check", ms_check, "run the Morse-Smale analysis");
    flow->add_option("--graph", graph_out, "write the separatrix graph here");
    flow->add_option("--dot", dot_out, "write a DOT edge list here");
    flow->add_option("--dump-trajectories", dump_dir, "CSV trajectory directory");
    flow->add_option("--grid", flow_grid, "Newton seed grid size");

    CLI11_PARSE(app, argc, argv);

    try {
        if (classify->parsed()) return cmd_classify(word_text, as_json);
        if (pi1->parsed())
            return cmd_pi1(complex_path, basepoint, abelian, as_json);
        if (morse->parsed())
            return cmd_morse(morse_expr, morse_chart, morse_grid, level,
                             level_opt->count() > 0, resolution, as_json);
        if (flow->parsed())
            return cmd_flow(flow_components, gradient_of, flow_chart, ms_check,
                            graph_out, dot_out, dump_dir, flow_grid, as_json);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const MalformedSurfaceWord& e) {
        std::cerr << "invalid surface word: " << e.what() << "\n";
        return kExitBadWord;
    } catch (const NotConnected& e) {
        std::cerr << "topology error: " << e.what() << "\n";
        return kExitTopology;
    } catch (const HasFaces& e) {
        std::cerr << "topology error: " << e.what() << "\n";
        return kExitTopology;
    } catch (const NotMorseSmale& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTopology;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return 0;
}
