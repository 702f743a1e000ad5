#include "haarshift/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace haarshift::io {

using nlohmann::json;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end) throw std::runtime_error("not a number: '" + text + "'");
    return v;
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
    auto p = csv;
    p.replace_extension(".json");
    return p;
}

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

void write_table(const CoefficientTable& table, const std::filesystem::path& csv, const json& provenance) {
    {
        std::ofstream out(csv);
        if (!out) throw std::runtime_error("cannot write " + csv.string());
        out << "u,c\n";
        for (std::size_t i = 0; i < table.samples.size(); ++i) {
            out << format_double(table.node(i)) << ',' << format_double(table.samples[i]) << '\n';
        }
        if (!out) throw std::runtime_error("write failed: " + csv.string());
    }
    json meta = {
        {"u_min", table.u_min},
        {"u_max", table.u_max},
        {"step", table.step},
        {"samples", table.samples.size()},
        {"tails", {{"left", table.tail_left}, {"right", table.tail_right}}},
        {"residual_sup", number_or_null(table.residual_sup)},
        {"iterations", table.iterations},
        {"kernel_name", table.kernel_name},
        {"max_contraction_ratio", table.max_contraction_ratio},
        {"m_sup", table.m_sup},
        {"provenance", provenance},
    };
    std::ofstream side(sidecar_path(csv));
    if (!side) throw std::runtime_error("cannot write " + sidecar_path(csv).string());
    side << meta.dump(2) << '\n';
}

CoefficientTable read_table(const std::filesystem::path& csv) {
    std::ifstream side(sidecar_path(csv));
    if (!side) throw std::runtime_error("missing sidecar " + sidecar_path(csv).string());
    const json meta = json::parse(side);

    CoefficientTable t;
    t.u_min = meta.at("u_min").get<double>();
    t.u_max = meta.at("u_max").get<double>();
    t.step = meta.at("step").get<double>();
    t.tail_left = meta.at("tails").at("left").get<double>();
    t.tail_right = meta.at("tails").at("right").get<double>();
    t.residual_sup = meta.at("residual_sup").is_null() ? NAN : meta.at("residual_sup").get<double>();
    t.iterations = meta.at("iterations").get<int>();
    t.kernel_name = meta.at("kernel_name").get<std::string>();
    t.max_contraction_ratio = meta.value("max_contraction_ratio", 0.0);
    t.m_sup = meta.value("m_sup", 0.0);

    std::ifstream in(csv);
    if (!in) throw std::runtime_error("cannot read " + csv.string());
    std::string line;
    if (!std::getline(in, line) || line != "u,c") throw std::runtime_error("table csv: expected header 'u,c'");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("table csv: malformed row '" + line + "'");
        t.samples.push_back(parse_double(line.substr(comma + 1)));
    }
    const auto expected = meta.at("samples").get<std::size_t>();
    if (t.samples.size() != expected) throw std::runtime_error("table csv: row count disagrees with sidecar");
    return t;
}

json to_json(const CompareReport& report) {
    json probes = json::array();
    for (const auto& row : report.rows) {
        probes.push_back({{"x", row.x}, {"K", row.k}, {"Khat", row.k_hat}, {"rel_err", row.rel_err}});
    }
    return {{"kernel", report.kernel}, {"probes", probes}, {"max_rel_err", report.max_rel_err}};
}

json to_json(const McEstimate& est) {
    return {
        {"x", est.x},
        {"y", est.y},
        {"M", est.samples},
        {"mean", est.mean},
        {"stderr", number_or_null(est.stderr_)},
        {"stderr_defined", est.stderr_defined()},
        {"tail_bound", est.tail_bound},
        {"seed", est.seed},
        {"levels", {est.levels.n_min, est.levels.n_max}},
    };
}

void write_operator_csv(std::ostream& os, std::span<const OperatorEstimate> estimates, std::span<const double> direct) {
    if (estimates.size() != direct.size()) throw std::invalid_argument("operator csv: column length mismatch");
    os << "x,averaged,stderr,direct,abs_err\n";
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        const auto& e = estimates[i];
        os << format_double(e.x) << ',' << format_double(e.mean) << ',' << format_double(e.stderr_) << ','
           << format_double(direct[i]) << ',' << format_double(std::abs(e.mean - direct[i])) << '\n';
    }
}

}  // namespace haarshift::io
