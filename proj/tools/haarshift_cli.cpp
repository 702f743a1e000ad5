// haarshift: solve for the Haar-shift coefficient function of an odd kernel
// and check the representation by quadrature, Monte Carlo and operator
// application.
//
// Exit codes: 0 ok, 2 numerical failure, 64 usage error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "haarshift/haar_operator.hpp"
#include "haarshift/io.hpp"
#include "haarshift/reconstruct.hpp"
#include "haarshift/solver.hpp"

namespace {

using namespace haarshift;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 2;
constexpr int kExitUsage = 64;
constexpr const char* kVersion = "0.1.0";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

KernelSpec kernel_or_throw(const std::string& name) {
    auto spec = find_kernel(name);
    if (!spec) {
        std::string known;
        for (const auto& n : builtin_kernel_names()) known += (known.empty() ? "" : ", ") + n;
        throw UsageError("unknown kernel '" + name + "' (known: " + known + ")");
    }
    return *spec;
}

// "" -> none; "logspace:A:B:N"; or a comma-separated list.
std::vector<double> parse_probes(const std::string& text) {
    std::vector<double> out;
    if (text.empty()) return out;
    try {
        if (text.rfind("logspace:", 0) == 0) {
            std::vector<std::string> parts;
            std::stringstream ss(text.substr(9));
            std::string item;
            while (std::getline(ss, item, ':')) parts.push_back(item);
            if (parts.size() != 3) throw UsageError("--probes must be logspace:A:B:N");
            const double a = io::parse_double(parts[0]);
            const double b = io::parse_double(parts[1]);
            const auto n = static_cast<std::size_t>(std::stoul(parts[2]));
            if (!(a > 0.0 && b >= a)) throw UsageError("logspace probes need 0 < A <= B");
            return log_probes(a, b, n);
        }
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) out.push_back(io::parse_double(item));
        }
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(std::string("bad --probes value: ") + e.what());
    }
    return out;
}

json provenance(const std::string& command, json flags) {
    return {{"tool", "haarshift"}, {"version", kVersion}, {"command", command}, {"flags", std::move(flags)}};
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Haar shift representation of odd convolution kernels"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "Worker threads (default: all cores)");

    // solve
    auto* solve = app.add_subcommand("solve", "Solve for the coefficient table of a kernel");
    std::string solve_kernel;
    std::vector<double> window{-16.0, 16.0};
    SolverOptions solve_opts;
    std::string solve_out;
    solve->add_option("--kernel", solve_kernel, "Kernel name")->required();
    solve->add_option("--window", window, "Log-axis window U0 U1")->expected(2);
    solve->add_option("--step", solve_opts.step, "Log-axis step");
    solve->add_option("--tol", solve_opts.tol, "Fixed-point tolerance");
    solve->add_option("--max-iter", solve_opts.max_iter, "Iteration cap");
    solve->add_option("--out", solve_out, "Table CSV path (sidecar .json written next to it)");

    // verify
    auto* verify = app.add_subcommand("verify", "Compare the reconstructed kernel with K");
    std::string verify_table;
    std::string verify_kernel;
    std::string verify_probes = "logspace:1e-3:1e3:50";
    std::string verify_out;
    verify->add_option("--table", verify_table, "Table CSV")->required();
    verify->add_option("--kernel", verify_kernel, "Kernel name (default: from the table sidecar)");
    verify->add_option("--probes", verify_probes, "Probes: logspace:A:B:N, comma list, or empty");
    verify->add_option("--out", verify_out, "Write the JSON report here instead of stdout");

    // mc
    auto* mc = app.add_subcommand("mc", "Monte-Carlo average of the Haar shift kernel over random grids");
    std::string mc_table;
    double mc_x = 0.0;
    double mc_y = 0.0;
    long mc_samples = 1000000;
    std::uint64_t mc_seed = 1;
    double mc_tail = 1e-4;
    mc->add_option("--table", mc_table, "Table CSV")->required();
    mc->add_option("--x", mc_x, "First point")->required();
    mc->add_option("--y", mc_y, "Second point")->required();
    mc->add_option("--samples", mc_samples, "Number of grids M");
    mc->add_option("--seed", mc_seed, "Random seed");
    mc->add_option("--tail-tol", mc_tail, "Bound on the truncated large-scale tail");

    // apply
    auto* apply = app.add_subcommand("apply", "Apply the averaged Haar shift operator to a test function");
    std::string apply_table;
    std::string apply_kernel;
    std::string apply_f = "indicator";
    std::vector<double> apply_xs;
    long apply_samples = 100000;
    std::uint64_t apply_seed = 1;
    double apply_tail = 1e-4;
    std::string apply_out;
    apply->add_option("--table", apply_table, "Table CSV")->required();
    apply->add_option("--kernel", apply_kernel, "Kernel name for the direct p.v. integral")->required();
    apply->add_option("--f", apply_f, "Test function")->check(CLI::IsMember({"indicator", "triangle"}));
    apply->add_option("--x", apply_xs, "Evaluation points")->delimiter(',')->required();
    apply->add_option("--samples", apply_samples, "Number of grids M");
    apply->add_option("--seed", apply_seed, "Random seed");
    apply->add_option("--tail-tol", apply_tail, "Bound on the truncated large-scale tail");
    apply->add_option("--out", apply_out, "CSV output path (default stdout)");

    // adiag
    auto* adiag = app.add_subcommand("adiag", "Scan |a(w)| of the recursion symbol");
    double omega_max = 1e4;
    double omega_step = 1e-2;
    std::string adiag_out;
    adiag->add_option("--omega-max", omega_max, "Scan w in [-W, W]");
    adiag->add_option("--step", omega_step, "Scan step");
    adiag->add_option("--out", adiag_out, "CSV of (omega, |a|); default stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    if (threads > 0) set_threads(threads);

    try {
        if (solve->parsed()) {
            const KernelSpec spec = kernel_or_throw(solve_kernel);
            if (window.size() != 2 || !(window[1] > window[0])) throw UsageError("--window needs U0 < U1");
            solve_opts.u_min = window[0];
            solve_opts.u_max = window[1];
            if (!(solve_opts.step > 0.0) || !(solve_opts.tol > 0.0)) throw UsageError("--step and --tol must be > 0");
            const auto report = validate_kernel(spec, log_probes(1e-6, 1e6, 121));
            for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
            CoefficientTable table;
            try {
                table = solve_c(spec, solve_opts);
            } catch (const SolverError& e) {
                std::cerr << "solver error: " << e.what() << '\n';
                return kExitNumerical;
            }
            const std::string out = solve_out.empty() ? spec.name + ".csv" : solve_out;
            io::write_table(table, out,
                            provenance("solve", {{"kernel", spec.name},
                                                 {"window", window},
                                                 {"step", solve_opts.step},
                                                 {"tol", solve_opts.tol},
                                                 {"max_iter", solve_opts.max_iter}}));
            emit({{"table", out},
                  {"sidecar", io::sidecar_path(out).string()},
                  {"iterations", table.iterations},
                  {"residual_sup", table.residual_sup},
                  {"sup_gamma", table.sup_abs()},
                  {"max_contraction_ratio", table.max_contraction_ratio}},
                 "");
            return table.residual_sup <= solve_opts.tol ? kExitOk : kExitNumerical;
        }

        if (verify->parsed()) {
            const CoefficientTable table = io::read_table(verify_table);
            const KernelSpec spec = kernel_or_throw(verify_kernel.empty() ? table.kernel_name : verify_kernel);
            const auto probes = parse_probes(verify_probes);
            const auto report = compare_report(spec, table, probes);
            emit(io::to_json(report), verify_out);
            return kExitOk;
        }

        if (mc->parsed()) {
            if (mc_samples < 1) throw UsageError("--samples must be >= 1");
            if (mc_x == mc_y) throw UsageError("--x and --y must differ");
            if (!(mc_tail > 0.0)) throw UsageError("--tail-tol must be > 0");
            const CoefficientTable table = io::read_table(mc_table);
            const McEstimate est = mc_estimate(table, mc_x, mc_y, mc_samples, mc_tail, mc_seed);
            if (!est.stderr_defined()) std::cerr << "warning: stderr undefined for a single sample\n";
            emit(io::to_json(est), "");
            return kExitOk;
        }

        if (apply->parsed()) {
            if (apply_samples < 1) throw UsageError("--samples must be >= 1");
            if (!(apply_tail > 0.0)) throw UsageError("--tail-tol must be > 0");
            const KernelSpec spec = kernel_or_throw(apply_kernel);
            const CoefficientTable table = io::read_table(apply_table);
            const TestFunction f = apply_f == "triangle" ? triangle_test_function() : indicator_test_function();
            const auto estimates = apply_averaged(table, f, apply_xs, apply_samples, apply_tail, apply_seed);
            std::vector<double> direct;
            for (double x : apply_xs) direct.push_back(direct_pv(spec, f, x));
            if (apply_out.empty()) {
                io::write_operator_csv(std::cout, estimates, direct);
            } else {
                std::ofstream out(apply_out);
                if (!out) throw std::runtime_error("cannot write " + apply_out);
                io::write_operator_csv(out, estimates, direct);
            }
            return kExitOk;
        }

        if (adiag->parsed()) {
            if (!(omega_step > 0.0) || !(omega_max >= 0.0)) throw UsageError("--step must be > 0 and --omega-max >= 0");
            const double min_mod = min_modulus_scan(-omega_max, omega_max, omega_step);
            const auto a0 = a_of_omega(0.0);
            const auto count = static_cast<long>(std::floor(2.0 * omega_max / omega_step + 1e-9)) + 1;
            json summary = {{"min_modulus", min_mod},
                            {"a0", {a0.real(), a0.imag()}},
                            {"omega_max", omega_max},
                            {"step", omega_step},
                            {"points", count}};
            std::ofstream file;
            if (!adiag_out.empty()) {
                file.open(adiag_out);
                if (!file) throw std::runtime_error("cannot write " + adiag_out);
            }
            std::ostream& csv = adiag_out.empty() ? std::cout : file;
            csv << "omega,modulus\n";
            for (long i = 0; i < count; ++i) {
                const double w = -omega_max + static_cast<double>(i) * omega_step;
                csv << io::format_double(w) << ',' << io::format_double(std::abs(a_of_omega(w))) << '\n';
            }
            (adiag_out.empty() ? std::cerr : std::cout) << summary.dump(2) << '\n';
            return kExitOk;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitUsage;
}
