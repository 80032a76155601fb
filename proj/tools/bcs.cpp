#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bcs/benchmarks.hpp"
#include "bcs/parser.hpp"
#include "bcs/report.hpp"
#include "bcs/search.hpp"

namespace {

bcs::NCSP load_problem(const std::string& spec) {
    if (!spec.empty() && spec[0] == '@') {
        std::ifstream in(spec.substr(1), std::ios::binary);
        if (!in) throw std::runtime_error("cannot open '" + spec.substr(1) + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return bcs::parse_problem(ss.str());
    }
    return bcs::benchmark(spec);
}

int cmd_solve(const std::string& problem, const std::string& algo_s,
              double eps, const std::string& split, const std::string& memo,
              double frag, int dstop, const std::string& order,
              const std::string& cb_policy, const std::string& out,
              const std::string& stats, const std::string& svg) {
    auto algo = bcs::algo_from_name(algo_s);
    if (!algo) {
        std::cerr << "unknown algorithm '" << algo_s << "'\n";
        return 1;
    }
    bcs::NCSP p = load_problem(problem);
    bcs::SolveOptions opts;
    opts.eps = bcs::eps_vector(eps, p.dim());
    if (split == "ds") opts.split = bcs::SplitPolicy::ds;
    else if (split == "bs-ds") opts.split = bcs::SplitPolicy::bs_ds;
    else if (!split.empty()) {
        std::cerr << "bad --split value '" << split << "'\n";
        return 1;
    }
    if (memo == "on") opts.memo = true;
    else if (memo == "off") opts.memo = false;
    else if (!memo.empty()) {
        std::cerr << "bad --memo value '" << memo << "'\n";
        return 1;
    }
    opts.frag_ratio = frag;
    opts.d_stop = dstop;
    if (order == "dfs") opts.order = bcs::Order::dfs;
    else if (order == "bfs") opts.order = bcs::Order::bfs;
    else {
        std::cerr << "bad --order value '" << order << "'\n";
        return 1;
    }
    if (!cb_policy.empty() && cb_policy != "all") {
        if (cb_policy.rfind("first-", 0) == 0) {
            opts.cb_first_k = std::stoi(cb_policy.substr(6));
            if (opts.cb_first_k < 1) {
                std::cerr << "bad --cb-policy value\n";
                return 1;
            }
        } else {
            std::cerr << "bad --cb-policy value '" << cb_policy << "'\n";
            return 1;
        }
    }

    bcs::PavingResult res = bcs::solve(p, *algo, opts);

    bcs::RunReport rep;
    rep.problem = p.name;
    rep.algorithm = bcs::algo_name(*algo);
    {
        std::ostringstream oe;
        oe << "eps=" << eps << " split="
           << (opts.split ? (*opts.split == bcs::SplitPolicy::ds ? "ds" : "bs-ds")
                          : "default")
           << " memo=" << (opts.memo ? (*opts.memo ? "on" : "off") : "default")
           << " frag=" << frag << " dstop=" << dstop << " order=" << order;
        rep.options_echo = oe.str();
    }
    rep.stats = res.stats;
    if (!out.empty()) {
        bcs::write_boxes(res, p, opts.eps, out);
        rep.files_written.push_back(out);
    }
    if (!svg.empty()) {
        bcs::write_svg(res, p.domain, svg);
        rep.files_written.push_back(svg);
    }
    if (!stats.empty()) {
        bcs::stats_json(rep, stats);
        rep.files_written.push_back(stats);
    }
    std::cout << "problem " << p.name << " algo " << rep.algorithm << "\n"
              << "inner boxes " << res.stats.inner_count << " volume "
              << (double)res.stats.inner_volume << "\n"
              << "boundary boxes " << res.stats.boundary_count << " volume "
              << (double)res.stats.boundary_volume << "\n"
              << "ratio "
              << (res.stats.ratio >= 0 ? std::to_string(res.stats.ratio)
                                       : std::string("n/a"))
              << "\n"
              << "nodes " << res.stats.nodes_expanded << " dr " << res.stats.dr_calls
              << " cb " << res.stats.cb_calls << " ds " << res.stats.ds_splits
              << " bs " << res.stats.bs_splits << "\n"
              << "time " << res.stats.wall_seconds << " s\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"branch-and-prune inner/boundary box cover solver"};
    app.require_subcommand(1);

    auto* solve = app.add_subcommand("solve", "solve a problem");
    std::string problem, algo = "uca6_plus", split, memo, order = "dfs",
                cb_policy, out, stats, svg;
    double eps = 0.1, frag = 0.25;
    int dstop = 1;
    solve->add_option("--problem", problem,
                      "benchmark name or @file with a problem definition")
        ->required();
    solve->add_option("--algo", algo,
                      "dmbc|dmbc_plus|uca5|uca6|uca6_plus");
    solve->add_option("--eps", eps, "precision (broadcast to all variables)");
    solve->add_option("--split", split, "ds|bs-ds (default per algorithm)");
    solve->add_option("--memo", memo, "on|off (default per algorithm)");
    solve->add_option("--frag", frag, "fragmentation ratio in (0,1)");
    solve->add_option("--dstop", dstop, "DimStop active-variable threshold");
    solve->add_option("--order", order, "dfs|bfs waiting-list order");
    solve->add_option("--cb-policy", cb_policy, "all|first-<k>");
    solve->add_option("--out", out, "box list output path");
    solve->add_option("--stats", stats, "JSON statistics output path");
    solve->add_option("--svg", svg, "SVG rendering output path (2-D only)");

    auto* list = app.add_subcommand("list", "list built-in benchmark problems");

    auto* check = app.add_subcommand("check", "parse and validate a problem file");
    std::string check_file;
    check->add_option("file", check_file, "problem file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 1 : 0;
    }

    try {
        if (solve->parsed()) {
            return cmd_solve(problem, algo, eps, split, memo, frag, dstop, order,
                             cb_policy, out, stats, svg);
        }
        if (list->parsed()) {
            for (const auto& n : bcs::benchmark_names()) {
                bcs::NCSP p = bcs::benchmark(n);
                std::cout << n << "  vars " << p.dim() << "  constraints "
                          << p.constraints.size() << "\n";
            }
            return 0;
        }
        if (check->parsed()) {
            std::ifstream in(check_file, std::ios::binary);
            if (!in) {
                std::cerr << "cannot open '" << check_file << "'\n";
                return 1;
            }
            std::ostringstream ss;
            ss << in.rdbuf();
            bcs::NCSP p = bcs::parse_problem(ss.str());
            std::cout << "ok: " << (p.name.empty() ? "unnamed" : p.name)
                      << " with " << p.dim() << " variables, "
                      << p.constraints.size() << " constraints\n";
            return 0;
        }
    } catch (const bcs::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
