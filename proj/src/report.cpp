#include "paracalc/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace paracalc {

json config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["id"] = cfg.id;
    j["theorem"] = cfg.theorem;
    j["variant"] = cfg.variant;
    j["grid"] = {{"d", cfg.d}, {"n", cfg.n_pts}, {"L", cfg.length}};
    j["sigma1"] = {{"id", cfg.sigma1.id}, {"m", cfg.sigma1.m},
                   {"amplitude", cfg.sigma1.amplitude}, {"s0", cfg.sigma1.s0},
                   {"seed", cfg.sigma1.seed}};
    j["sigma2"] = {{"id", cfg.sigma2.id}, {"m", cfg.sigma2.m},
                   {"amplitude", cfg.sigma2.amplitude}, {"s0", cfg.sigma2.s0},
                   {"seed", cfg.sigma2.seed}};
    j["s"] = cfg.s;
    j["t0"] = cfg.t0;
    j["s0"] = cfg.s0;
    j["n"] = cfg.n;
    j["probes"] = cfg.probes;
    j["seed"] = cfg.seed;
    j["j_lo"] = cfg.j_lo;
    j["j_hi"] = cfg.j_hi;
    j["trim_lo"] = cfg.trim_lo;
    j["trim_hi"] = cfg.trim_hi;
    j["slope_tol"] = cfg.slope_tol;
    return j;
}

namespace {

SymbolSpec spec_from_json(const json& j) {
    SymbolSpec s;
    s.id = j.at("id").get<std::string>();
    if (j.contains("m")) s.m = j.at("m").get<double>();
    if (j.contains("amplitude")) s.amplitude = j.at("amplitude").get<double>();
    if (j.contains("s0")) s.s0 = j.at("s0").get<double>();
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    return s;
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig cfg;
    cfg.id = j.value("id", cfg.id);
    cfg.theorem = j.at("theorem").get<std::string>();
    cfg.variant = j.value("variant", cfg.variant);
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        cfg.d = g.value("d", cfg.d);
        cfg.n_pts = g.value("n", cfg.n_pts);
        if (g.contains("L")) {
            if (g.at("L").is_string()) {
                std::string s = g.at("L").get<std::string>();
                if (s.size() > 2 && s.substr(s.size() - 2) == "pi")
                    cfg.length = std::stod(s.substr(0, s.size() - 2)) * kPi;
                else
                    cfg.length = std::stod(s);
            } else {
                cfg.length = g.at("L").get<double>();
            }
        }
    }
    if (j.contains("sigma1")) cfg.sigma1 = spec_from_json(j.at("sigma1"));
    if (j.contains("sigma2")) cfg.sigma2 = spec_from_json(j.at("sigma2"));
    cfg.s = j.value("s", cfg.s);
    cfg.t0 = j.value("t0", cfg.d == 2 ? 1.5 : 1.0);
    cfg.s0 = j.value("s0", cfg.s0);
    cfg.n = j.value("n", cfg.n);
    cfg.probes = j.value("probes", cfg.probes);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.j_lo = j.value("j_lo", cfg.j_lo);
    cfg.j_hi = j.value("j_hi", cfg.j_hi);
    cfg.trim_lo = j.value("trim_lo", cfg.trim_lo);
    cfg.trim_hi = j.value("trim_hi", cfg.trim_hi);
    cfg.slope_tol = j.value("slope_tol", cfg.slope_tol);
    return cfg;
}

json report_to_json(const EstimateReport& rep) {
    json j;
    j["schema"] = "paracalc-report-v1";
    j["id"] = rep.id;
    j["theorem"] = rep.theorem;
    j["config"] = config_to_json(rep.config);
    json rows = json::array();
    for (const auto& r : rep.rows)
        rows.push_back({{"probe", r.probe}, {"label", r.label}, {"numerator", r.num},
                        {"denominator", r.den}, {"ratio", r.ratio}});
    j["ratios"] = rows;
    j["c_emp"] = rep.c_emp;
    j["degenerate_zero"] = rep.degenerate_zero;
    if (rep.slope) {
        j["slope"] = {{"value", rep.slope->value},
                      {"stderr", rep.slope->stderr_},
                      {"expected", rep.slope->expected},
                      {"deviation", rep.slope->deviation},
                      {"points", rep.slope->points}};
    } else {
        j["slope"] = nullptr;
    }
    json terms = json::object();
    for (const auto& [k, v] : rep.terms) terms[k] = v;
    j["terms"] = terms;
    j["pass"] = rep.pass;
    j["note"] = rep.note;
    return j;
}

json sweep_to_json(const SweepReport& sweep) {
    json j;
    j["schema"] = "paracalc-sweep-v1";
    json reports = json::array();
    for (const auto& r : sweep.reports) reports.push_back(report_to_json(r));
    j["reports"] = reports;
    j["stability"] = sweep.stability;
    return j;
}

void write_text_atomic(const std::string& path, const std::string& text) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) throw InputError("cannot open for writing: " + tmp);
        os << text;
        if (!os) throw InputError("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw InputError("atomic rename failed: " + path);
}

void write_report_json(const std::string& path, const EstimateReport& rep) {
    write_text_atomic(path, report_to_json(rep).dump(2) + "\n");
}

namespace {
std::string csv_quote(const std::string& s) {
    bool needs = s.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}
}  // namespace

void write_report_csv(const std::string& path, const EstimateReport& rep) {
    std::ostringstream os;
    os << "id,theorem,probe,label,numerator,denominator,ratio\r\n";
    for (const auto& r : rep.rows) {
        os << csv_quote(rep.id) << ',' << csv_quote(rep.theorem) << ',' << r.probe << ','
           << csv_quote(r.label) << ',' << fmt_double(r.num) << ',' << fmt_double(r.den)
           << ',' << fmt_double(r.ratio) << "\r\n";
    }
    write_text_atomic(path, os.str());
}

void write_plot_data(const std::string& path, const EstimateReport& rep) {
    std::ostringstream os;
    if (rep.slope) {
        os << "# j  log2_l2_residual\n";
        for (const auto& r : rep.rows)
            os << r.probe << "  " << fmt_double(std::log2(std::max(r.num, 1e-300))) << "\n";
    } else {
        os << "# probe  ratio\n";
        for (const auto& r : rep.rows) os << r.probe << "  " << fmt_double(r.ratio) << "\n";
    }
    write_text_atomic(path, os.str());
    std::ostringstream stub;
    stub << "# gnuplot stub\n"
         << "set xlabel '" << (rep.slope ? "j" : "probe") << "'\n"
         << "set ylabel '" << (rep.slope ? "log2 |residual|_2" : "ratio") << "'\n"
         << "plot '" << path << "' using 1:2 with linespoints title '" << rep.id << "'\n";
    write_text_atomic(path + ".gp", stub.str());
}

namespace {
std::string verify_report_json(const json& j);
}

std::string verify_report_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) return "cannot open " + path;
    json j;
    try {
        is >> j;
    } catch (const std::exception& e) {
        return std::string("invalid JSON: ") + e.what();
    }
    if (j.value("schema", "") == "paracalc-sweep-v1") {
        if (!j.contains("reports") || !j["reports"].is_array() || j["reports"].empty())
            return "sweep file without reports";
        for (const auto& rep : j["reports"]) {
            std::string msg = verify_report_json(rep);
            if (!msg.empty()) return msg;
        }
        return "";
    }
    return verify_report_json(j);
}

namespace {
std::string verify_report_json(const json& j) {
    if (j.value("schema", "") != "paracalc-report-v1") return "missing or wrong schema tag";
    for (const char* key : {"id", "theorem", "config", "ratios", "c_emp", "pass"})
        if (!j.contains(key)) return std::string("missing key: ") + key;
    if (!j["ratios"].is_array()) return "ratios is not an array";
    double max_ratio = 0.0;
    bool has_rows = false;
    for (const auto& r : j["ratios"]) {
        for (const char* key : {"probe", "numerator", "denominator", "ratio"})
            if (!r.contains(key)) return std::string("ratio row missing key: ") + key;
        double num = r["numerator"].get<double>();
        double den = r["denominator"].get<double>();
        double ratio = r["ratio"].get<double>();
        if (!std::isfinite(ratio)) return "non-finite ratio in rows";
        if (den != 0.0 && std::abs(ratio - num / den) > 1e-9 * std::max(1.0, std::abs(ratio)))
            return "ratio inconsistent with numerator/denominator";
        max_ratio = std::max(max_ratio, ratio);
        has_rows = true;
    }
    bool is_slope = !j["slope"].is_null();
    if (has_rows && !is_slope) {
        double c = j["c_emp"].get<double>();
        if (std::abs(c - max_ratio) > 1e-9 * std::max(1.0, std::abs(c)))
            return "c_emp does not equal the max row ratio";
    }
    if (is_slope) {
        const auto& s = j["slope"];
        double dev = std::abs(s["value"].get<double>() - s["expected"].get<double>());
        if (std::abs(dev - s["deviation"].get<double>()) > 1e-9)
            return "slope deviation inconsistent";
    }
    return "";
}
}  // namespace

}  // namespace paracalc
