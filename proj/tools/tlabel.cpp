// tlabel: generate graphs, label them, solve small ones exactly, verify
// labelings and audit the discharging argument.
//
// Exit status: 0 success, 1 invalid input, 2 invariant failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tlabel/discharging.hpp"
#include "tlabel/exact.hpp"
#include "tlabel/generators.hpp"
#include "tlabel/io.hpp"
#include "tlabel/json_io.hpp"
#include "tlabel/reduction.hpp"

namespace fs = std::filesystem;
using namespace tlabel;

namespace {

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_file(path, text);
}

int default_m(const Graph& g, std::optional<int> m) { return m ? *m : std::max(12, g.max_degree()); }

void require_m(const Graph& g, int M) {
    if (M < 12)
        throw InputError("M=" + std::to_string(M) + " is below 12; the planar labeler needs M >= 12 (use `exact` "
                         "for small graphs)");
    if (g.max_degree() > M)
        throw InputError("maximum degree " + std::to_string(g.max_degree()) + " exceeds M=" + std::to_string(M) +
                         "; pass -M " + std::to_string(g.max_degree()) + " or larger");
}

std::vector<std::string> expand_inputs(const std::vector<std::string>& inputs) {
    std::vector<std::string> files;
    for (const auto& in : inputs) {
        if (fs::is_directory(in)) {
            std::vector<std::string> found;
            for (const auto& entry : fs::directory_iterator(in))
                if (entry.is_regular_file() && entry.path().extension() == ".g")
                    found.push_back(entry.path().string());
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else {
            files.push_back(in);
        }
    }
    return files;
}

struct BenchRow {
    std::string file;
    int n = 0, m = 0, delta = 0, M = 0;
    int max_color = -1;
    std::size_t reductions = 0;
    std::string verdict;
    std::string status = "ok";
    double ms = 0;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"(d,1)-total labeling toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "write a generated plane graph");
    std::string family, gen_out;
    int gen_n = 0;
    GeneratorParams gp;
    int gen_cap = 0;
    gen->add_option("family", family, "wheel | cycle | star | stacked_triangulation | random_planar | decorated_triangulation")->required();
    gen->add_option("n", gen_n, "size parameter")->required();
    gen->add_option("--seed", gp.seed, "random seed");
    gen->add_option("--max-degree", gen_cap, "reject steps that exceed this degree");
    gen->add_option("--delete-prob", gp.delete_probability,
                    "random_planar edge deletion / decorated_triangulation edge conversion probability")
        ->check(CLI::Range(0.0, 1.0));
    gen->add_option("--stack-prob", gp.stack_probability, "decorated_triangulation 3-vertex probability")
        ->check(CLI::Range(0.0, 1.0));
    gen->add_option("-o,--output", gen_out, "output file (default stdout)");

    // label
    auto* label = app.add_subcommand("label", "(2,1)-total labeling with colors 0..M+2");
    std::string label_in, label_out, label_trace;
    std::optional<int> label_m;
    label->add_option("graph", label_in)->required();
    label->add_option("-M", label_m, "degree bound (default max(12, Δ))");
    label->add_option("-o,--output", label_out, "labeling file (default stdout)");
    label->add_option("--trace", label_trace, "write the extension trace as JSON");

    // exact
    auto* exact = app.add_subcommand("exact", "exact λ_d^T by backtracking");
    std::string exact_in;
    int exact_d = 2;
    std::uint64_t exact_budget = 50'000'000;
    bool exact_json = false;
    exact->add_option("graph", exact_in)->required();
    exact->add_option("-d", exact_d, "separation")->check(CLI::PositiveNumber);
    exact->add_option("--budget", exact_budget, "search node limit");
    exact->add_flag("--json", exact_json);

    // verify
    auto* verify = app.add_subcommand("verify", "check a labeling against a graph");
    std::string verify_graph, verify_lab;
    int verify_d = 2;
    std::optional<int> verify_k;
    verify->add_option("graph", verify_graph)->required();
    verify->add_option("labeling", verify_lab)->required();
    verify->add_option("-d", verify_d, "separation")->check(CLI::PositiveNumber);
    verify->add_option("-k", verify_k, "largest color (default max(12, Δ) + 2)");

    // audit
    auto* aud = app.add_subcommand("audit", "structural scan and discharging ledger");
    std::string audit_in;
    std::optional<int> audit_m;
    bool audit_json_flag = false;
    aud->add_option("graph", audit_in)->required();
    aud->add_option("-M", audit_m, "degree bound (default max(12, Δ))");
    aud->add_flag("--json", audit_json_flag);

    // bench
    auto* bench = app.add_subcommand("bench", "label, verify and audit a corpus");
    std::vector<std::string> bench_in;
    std::optional<int> bench_m;
    bool bench_json = false;
    bench->add_option("inputs", bench_in, "graph files or directories of *.g files")->required();
    bench->add_option("-M", bench_m, "degree bound (default max(12, Δ) per graph)");
    bench->add_flag("--json", bench_json, "JSON summary without timings");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*gen) {
            gp.n = gen_n;
            if (gen_cap > 0)
                gp.max_degree = gen_cap;
            emit(serialize_graph(generate(family, gp)), gen_out);
            return 0;
        }

        if (*label) {
            auto gf = load_graph(label_in);
            const int M = default_m(gf.graph, label_m);
            require_m(gf.graph, M);
            auto run = label_planar(gf.plane(false), M);
            emit(serialize_labeling(run.labeling, &gf.names), label_out);
            if (!label_trace.empty())
                write_file(label_trace, Json{{"schema", 1}, {"M", M}, {"steps", trace_json(run.steps)}}.dump(2) + "\n");
            return 0;
        }

        if (*exact) {
            auto gf = load_graph(exact_in);
            auto res = lambda_exact(gf.graph, exact_d, exact_budget);
            if (exact_json) {
                std::cout << solve_json(res).dump(2) << '\n';
            } else if (res.lambda) {
                std::cout << "lambda " << *res.lambda << "\nnodes " << res.nodes << '\n'
                          << serialize_labeling(res.witness, &gf.names);
            } else {
                std::cout << "lambda unknown (budget of " << exact_budget << " nodes exhausted)\nnodes "
                          << res.nodes << '\n';
            }
            return res.lambda ? 0 : 2;
        }

        if (*verify) {
            auto gf = load_graph(verify_graph);
            auto phi = parse_labeling(read_file(verify_lab), gf);
            const int k = verify_k ? *verify_k : std::max(12, gf.graph.max_degree()) + 2;
            auto violations = validate(gf.graph, phi, ColorInterval{k, verify_d});
            for (const auto& v : violations)
                std::cout << to_string(v) << '\n';
            int missing = 0;
            for (Vertex v = 0; v < gf.graph.num_vertices(); ++v)
                missing += phi.vertex(v) ? 0 : 1;
            for (const Edge& e : gf.graph.edges())
                missing += phi.edge(e) ? 0 : 1;
            if (violations.empty() && missing == 0) {
                std::cout << "valid total labeling, max color " << phi.max_color() << " <= " << k << '\n';
                return 0;
            }
            std::cout << violations.size() << " violation(s), " << missing << " uncolored element(s)\n";
            return 1;
        }

        if (*aud) {
            auto gf = load_graph(audit_in);
            const int M = default_m(gf.graph, audit_m);
            require_m(gf.graph, M);
            auto rep = audit(gf.plane(true), M);
            if (audit_json_flag) {
                std::cout << audit_json(rep).dump(2) << '\n';
            } else {
                std::cout << "verdict " << rep.verdict << '\n';
                for (const auto& f : rep.structure.findings) {
                    std::cout << f.property << ' ' << (f.holds ? "holds" : "violated");
                    if (!f.holds) {
                        std::cout << " witness";
                        for (Vertex v : f.witness)
                            std::cout << ' ' << gf.names[v];
                        if (!f.detail.empty())
                            std::cout << " (" << f.detail << ')';
                    }
                    std::cout << '\n';
                }
                for (const auto& note : rep.structure.notes)
                    std::cout << "note " << note << '\n';
                std::cout << "initial_total " << to_string(rep.initial.total()) << "\nfinal_total "
                          << to_string(rep.final_ledger.total()) << '\n';
            }
            return rep.verdict == "reducible" ? 0 : 2;
        }

        if (*bench) {
            std::vector<BenchRow> rows;
            bool failed = false;
            for (const auto& file : expand_inputs(bench_in)) {
                BenchRow row;
                row.file = file;
                const auto start = std::chrono::steady_clock::now();
                try {
                    auto gf = load_graph(file);
                    row.n = gf.graph.num_vertices();
                    row.m = gf.graph.num_edges();
                    row.delta = gf.graph.max_degree();
                    row.M = default_m(gf.graph, bench_m);
                    require_m(gf.graph, row.M);
                    auto run = label_planar(gf.plane(false), row.M);
                    row.max_color = run.labeling.max_color();
                    row.reductions = run.steps.size();
                    row.verdict = gf.rotation ? audit(gf.plane(true), row.M).verdict : "-";
                    if (row.verdict == "CONTRADICTION-CANDIDATE")
                        row.status = "audit-failure";
                } catch (const InputError& e) {
                    row.status = std::string("input-error: ") + e.what();
                } catch (const Error& e) {
                    row.status = std::string("invariant-failure: ") + e.what();
                }
                row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
                failed = failed || row.status != "ok";
                rows.push_back(row);
            }
            if (bench_json) {
                Json out{{"schema", 1}};
                Json items = Json::array();
                for (const auto& r : rows)
                    items.push_back({{"file", r.file},      {"n", r.n},
                                     {"m", r.m},            {"max_degree", r.delta},
                                     {"M", r.M},            {"max_color", r.max_color},
                                     {"reductions", r.reductions}, {"verdict", r.verdict},
                                     {"status", r.status}});
                out["instances"] = std::move(items);
                std::cout << out.dump(2) << '\n';
            } else {
                std::cout << std::left << std::setw(32) << "file" << std::right << std::setw(6) << "n"
                          << std::setw(7) << "m" << std::setw(5) << "deg" << std::setw(4) << "M" << std::setw(6)
                          << "max" << std::setw(8) << "steps" << std::setw(11) << "ms" << "  verdict\n";
                for (const auto& r : rows) {
                    std::cout << std::left << std::setw(32) << r.file << std::right << std::setw(6) << r.n
                              << std::setw(7) << r.m << std::setw(5) << r.delta << std::setw(4) << r.M
                              << std::setw(6) << r.max_color << std::setw(8) << r.reductions << std::setw(11)
                              << std::fixed << std::setprecision(1) << r.ms << "  "
                              << (r.status == "ok" ? r.verdict : r.status) << '\n';
                }
            }
            return failed ? 2 : 0;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        std::cerr << "invariant failure: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
