#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "ssred/ssred.hpp"

namespace {

void write_out(const std::string& path, const std::string& body) {
    if (path.empty() || path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << body;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "ssred: exact p-adic engine for reductions of 2-dimensional semistable "
        "representations via Kisin-module descent"};

    ssred::RunConfig cfg;
    std::string L_literal, L_val_str, sweep_spec, out_path, format = "json";
    int jobs = 1;

    app.add_option("--p", cfg.p, "odd prime p");
    app.add_option("--k", cfg.k, "weight k >= 3 (h = k-1)");
    app.add_option("--L", L_literal,
                   "L-invariant literal: a/b, a/b*w^e (w = sqrt(p)), p^v, or inf");
    app.add_option("--L-val", L_val_str, "valuation of L only (half-integer rational)");
    app.add_option("--prec", cfg.prec, "absolute p-adic working precision (default: auto)");
    app.add_option("--deg-u", cfg.deg_u, "series truncation degree, >= p^2 (default: auto)");
    app.add_flag("--weak-bound", cfg.weak_bound, "use the weakened bound (admits p=3, h=2)");
    app.add_flag("--per-round", cfg.per_round, "record per-round descent progress measures");
    app.add_option("--sweep", sweep_spec, "grid sweep, e.g. p=3,5;k=4..8:2;lval=-4..-1");
    app.add_option("--out", out_path, "output path (default: stdout)");
    app.add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--jobs", jobs, "concurrent sweep cells")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (!sweep_spec.empty()) {
            ssred::SweepSpec spec = ssred::parse_sweep_spec(sweep_spec);
            auto reports = ssred::run_sweep(spec, cfg, jobs);
            write_out(out_path, format == "json" ? ssred::sweep_to_json(reports).dump(2) + "\n"
                                                 : ssred::sweep_to_text(reports));
            int exit_code = 0;
            for (const auto& r : reports) {
                if (r.exit_code == 1) exit_code = 1;
                if (r.exit_code == 3 && exit_code == 0) exit_code = 3;
            }
            return exit_code;
        }

        if (cfg.p == 0 || cfg.k == 0) {
            std::cerr << "--p and --k are required for a single run\n";
            return 2;
        }
        if (!L_val_str.empty() && !L_literal.empty()) {
            std::cerr << "--L and --L-val are mutually exclusive\n";
            return 2;
        }
        if (!L_val_str.empty()) {
            cfg.L_by_valuation = true;
            cfg.L_val = ssred::detail::parse_halfint(L_val_str);
        } else if (L_literal == "inf") {
            cfg.crystalline = true;
        } else if (!L_literal.empty()) {
            cfg.L_input = L_literal;
        } else {
            std::cerr << "one of --L or --L-val is required\n";
            return 2;
        }

        ssred::RunReport rep = ssred::run_pipeline(cfg);
        write_out(out_path, format == "json" ? ssred::report_to_json(rep).dump(2) + "\n"
                                             : ssred::report_to_text(rep));
        return rep.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
