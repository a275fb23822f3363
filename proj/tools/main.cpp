#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "subsym/density.hpp"
#include "subsym/mc.hpp"
#include "subsym/model_io.hpp"
#include "subsym/pricing.hpp"

namespace {

using namespace subsym;

const TcbmModel& require_tcbm(const AnyModel& m, const char* op) {
    const TcbmModel* t = std::get_if<TcbmModel>(&m);
    if (!t)
        throw ValidationError("model", std::string(op) + " needs a tcbm model");
    return *t;
}

std::string json_pair(const char* key, double v) {
    return std::string("\"") + key + "\":" + format_number(v);
}

void emit(const std::string& body) { std::cout << body << "\n"; }

void cmd_cf_eval(const std::string& model_path, const std::vector<double>& zs) {
    const AnyModel m = load_model(model_path);
    std::ostringstream out;
    out << "{\"points\":[";
    for (std::size_t i = 0; i < zs.size(); ++i) {
        const Complex v = char_exponent(m, Complex(zs[i], 0.0));
        if (i) out << ",";
        out << "{" << json_pair("z", zs[i]) << "," << json_pair("re", v.real()) << ","
            << json_pair("im", v.imag()) << "}";
    }
    out << "]}";
    emit(out.str());
}

void cmd_density(const std::string& model_path, const std::vector<double>& xs, bool even) {
    const AnyModel m = load_model(model_path);
    const LevyDensity1D nu = levy_density(m);
    const TcbmModel* t = std::get_if<TcbmModel>(&m);
    if (even && !t) throw ValidationError("even", "even factor needs a tcbm model");
    std::cout << (even ? "x,nu,even_factor\n" : "x,nu\n");
    for (double x : xs) {
        std::cout << format_number(x) << "," << format_number(nu(x));
        if (even) std::cout << "," << format_number(even_factor(*t, x));
        std::cout << "\n";
    }
}

void cmd_symmetry(const std::string& model_path, double tol) {
    const AnyModel m = load_model(model_path);
    SymmetryReport rep = classify_symmetry(m);
    if (rep.criterion_used == SymmetryCriterion::density_grid || tol != 1e-6) {
        // re-evaluate the grid residual under the requested tolerance
        const SymmetryReport grid =
            symmetry_residual(levy_density(m), default_symmetry_grid(), tol);
        rep.sup_residual = grid.sup_residual;
        rep.scale = grid.scale;
    }
    std::ostringstream out;
    out << "{\"symmetric\":" << (rep.symmetric ? "true" : "false") << ",\"criterion\":\""
        << to_string(rep.criterion_used) << "\"," << json_pair("sup_residual", rep.sup_residual)
        << "," << json_pair("scale", rep.scale);
    if (rep.drift) out << "," << json_pair("drift", *rep.drift);
    if (rep.normalized_drift)
        out << "," << json_pair("normalized_drift", *rep.normalized_drift);
    out << "}";
    emit(out.str());
}

void cmd_calibrate(const std::string& model_path, const std::string& market_path,
                   const std::string& out_path) {
    const AnyModel m = load_model(model_path);
    const MarketSpec mkt = load_market(market_path);
    const TcbmModel& t = require_tcbm(m, "calibrate");
    const double before = martingale_gap(t, mkt);
    const TcbmModel cal = calibrate_drift(t, mkt);
    const double after = martingale_gap(cal, mkt);
    const std::string model_json = to_json(AnyModel{cal});
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f || !(f << model_json << "\n"))
            throw IoError("cannot write " + out_path);
    }
    std::ostringstream out;
    out << "{" << json_pair("gap_before", before) << "," << json_pair("gamma", cal.gamma)
        << "," << json_pair("gap_after", after) << ",\"model\":" << model_json << "}";
    emit(out.str());
}

void cmd_price(const std::string& model_path, const std::string& market_path, double strike,
               double maturity, const std::string& kind, const PricerOptions& opt) {
    const AnyModel m = load_model(model_path);
    const MarketSpec mkt = load_market(market_path);
    if (kind != "call" && kind != "put")
        throw ValidationError("kind", "must be call or put");
    const OptionSpec o{strike, maturity,
                       kind == "call" ? OptionKind::call : OptionKind::put};
    const double p = price_european(m, mkt, o, opt);
    std::ostringstream out;
    out << "{\"kind\":\"" << kind << "\"," << json_pair("strike", strike) << ","
        << json_pair("maturity", maturity) << "," << json_pair("price", p) << "}";
    emit(out.str());
}

void cmd_duality(const std::string& model_path, const std::string& market_path,
                 double strike, double maturity) {
    const AnyModel m = load_model(model_path);
    const MarketSpec mkt = load_market(market_path);
    const DualityReport rep =
        duality_check(require_tcbm(m, "duality-check"), mkt, strike, maturity);
    std::ostringstream out;
    out << "{" << json_pair("call", rep.call_price) << ","
        << json_pair("dual_put", rep.dual_put_price) << ","
        << json_pair("residual", rep.residual) << "}";
    emit(out.str());
}

void cmd_cm(const std::string& model_path, int order, double step) {
    const AnyModel m = load_model(model_path);
    CmOptions opt;
    opt.order = order;
    opt.grid_step = step;
    const CmReport rep = complete_monotonicity_check(require_tcbm(m, "cm-check"), opt);
    std::ostringstream out;
    out << "{\"passes\":" << (rep.passes ? "true" : "false")
        << ",\"condition2_ok\":" << (rep.condition2_ok ? "true" : "false") << ","
        << json_pair("condition2_residual", rep.condition2_residual) << ",\"first_failure\":";
    if (rep.first_failure)
        out << "{\"order\":" << rep.first_failure->first << ","
            << json_pair("u", rep.first_failure->second) << "}";
    else
        out << "null";
    out << "}";
    emit(out.str());
}

void cmd_simulate(const std::string& model_path, double horizon, int steps, int paths,
                  std::uint64_t seed, const std::string& out_path) {
    const AnyModel m = load_model(model_path);
    const TcbmModel& t = require_tcbm(m, "simulate");
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw IoError("cannot write " + out_path);
        os = &file;
    }
    *os << "path,time,clock,y\n";
    visit_paths(t, horizon, steps, paths, seed, [&](int pi, const PathSample& p) {
        for (std::size_t i = 0; i < p.times.size(); ++i)
            *os << pi << "," << format_number(p.times[i]) << ","
                << format_number(p.clock[i]) << "," << format_number(p.y[i]) << "\n";
    });
    if (os == &file && !file) throw IoError("cannot write " + out_path);
}

std::vector<PathSample> read_paths_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open " + path);
    std::string line;
    if (!std::getline(f, line) || line != "path,time,clock,y")
        throw ValidationError("in", "expected a path,time,clock,y CSV header");
    std::vector<PathSample> paths;
    long current = -1;
    std::size_t row = 1;
    while (std::getline(f, line)) {
        ++row;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        double vals[4];
        for (int c = 0; c < 4; ++c) {
            if (!std::getline(ls, tok, ',')) tok.clear();
            std::size_t used = 0;
            try {
                vals[c] = std::stod(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size() || tok.empty())
                throw ValidationError("in", "malformed CSV at row " + std::to_string(row));
        }
        const long pi = static_cast<long>(vals[0]);
        if (pi != current) {
            if (pi != current + 1)
                throw ValidationError("in", "path indices must increase by one");
            paths.emplace_back();
            current = pi;
        }
        paths.back().times.push_back(vals[1]);
        paths.back().clock.push_back(vals[2]);
        paths.back().y.push_back(vals[3]);
    }
    if (paths.empty()) throw ValidationError("in", "no samples in CSV");
    return paths;
}

void cmd_ecf(const std::string& in_path, double z, double t) {
    const auto paths = read_paths_csv(in_path);
    const EmpiricalCf e = empirical_cf(paths, z, t);
    std::ostringstream out;
    out << "{" << json_pair("z", z) << "," << json_pair("t", t) << ","
        << json_pair("estimate_re", e.estimate.real()) << ","
        << json_pair("estimate_im", e.estimate.imag()) << ","
        << json_pair("stderr_re", e.stderr_re) << "," << json_pair("stderr_im", e.stderr_im)
        << ",\"samples\":" << e.samples << "}";
    emit(out.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical toolkit for subordinated Brownian market models"};
    app.require_subcommand(1);

    std::string model_path, market_path, out_path, in_path, kind = "call";
    std::vector<double> zs, xs;
    double tol = 1e-6, strike = 1.0, maturity = 1.0, z = 1.0, t = 1.0;
    double horizon = 1.0, step = 1e-3;
    int steps = 1, paths = 1, order = 6;
    std::uint64_t seed = 1;
    bool even = false;
    PricerOptions popt;

    auto* cf = app.add_subcommand("cf-eval", "evaluate the characteristic exponent");
    cf->add_option("--model", model_path)->required();
    cf->add_option("--z", zs, "real arguments")->required()->expected(-1);
    cf->callback([&] { cmd_cf_eval(model_path, zs); });

    auto* de = app.add_subcommand("density", "evaluate the jump density (CSV)");
    de->add_option("--model", model_path)->required();
    de->add_option("--x", xs, "evaluation points")->required()->expected(-1);
    de->add_flag("--even", even, "add the even-factor column (tcbm)");
    de->callback([&] { cmd_density(model_path, xs, even); });

    auto* sy = app.add_subcommand("symmetry-check", "market-symmetry classification");
    sy->add_option("--model", model_path)->required();
    sy->add_option("--tol", tol, "grid residual tolerance");
    sy->callback([&] { cmd_symmetry(model_path, tol); });

    auto* ca = app.add_subcommand("calibrate", "set gamma so e^{-(r-delta)t} S_t is a martingale");
    ca->add_option("--model", model_path)->required();
    ca->add_option("--market", market_path)->required();
    ca->add_option("--out", out_path, "write the calibrated model JSON here");
    ca->callback([&] { cmd_calibrate(model_path, market_path, out_path); });

    auto* pr = app.add_subcommand("price", "European option via the damped transform");
    pr->add_option("--model", model_path)->required();
    pr->add_option("--market", market_path)->required();
    pr->add_option("--strike", strike)->required();
    pr->add_option("--maturity", maturity)->required();
    pr->add_option("--kind", kind, "call or put");
    pr->add_option("--damping", popt.damping);
    pr->add_option("--grid", popt.grid_points, "Simpson panels");
    pr->callback([&] { cmd_price(model_path, market_path, strike, maturity, kind, popt); });

    auto* du = app.add_subcommand("duality-check", "call vs dual-market put");
    du->add_option("--model", model_path)->required();
    du->add_option("--market", market_path)->required();
    du->add_option("--strike", strike)->required();
    du->add_option("--maturity", maturity)->required();
    du->callback([&] { cmd_duality(model_path, market_path, strike, maturity); });

    auto* cm = app.add_subcommand("cm-check", "complete-monotonicity conditions");
    cm->add_option("--model", model_path)->required();
    cm->add_option("--order", order, "highest difference order");
    cm->add_option("--step", step, "u-grid step");
    cm->callback([&] { cmd_cm(model_path, order, step); });

    auto* si = app.add_subcommand("simulate", "exact-in-law path skeletons (CSV)");
    si->add_option("--model", model_path)->required();
    si->add_option("--horizon", horizon)->required();
    si->add_option("--steps", steps)->required();
    si->add_option("--paths", paths)->required();
    si->add_option("--seed", seed);
    si->add_option("--out", out_path, "CSV file (stdout when absent)");
    si->callback([&] { cmd_simulate(model_path, horizon, steps, paths, seed, out_path); });

    auto* ec = app.add_subcommand("ecf", "empirical characteristic function of simulated paths");
    ec->add_option("--in", in_path, "CSV from simulate")->required();
    ec->add_option("--z", z)->required();
    ec->add_option("--t", t, "grid time")->required();
    ec->callback([&] { cmd_ecf(in_path, z, t); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
