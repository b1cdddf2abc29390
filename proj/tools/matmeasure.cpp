#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "matmeasure/fuzz.hpp"
#include "matmeasure/json_io.hpp"
#include "matmeasure/symbol_parser.hpp"
#include "matmeasure/verify.hpp"

using namespace matmeasure;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitPropertyFailure = 3;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

void emit(const json& j, const std::string& output) {
    if (output.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(output);
    if (!out) throw ParseError("cannot write " + output);
    out << j.dump(2) << "\n";
}

int cmd_analyze(const std::string& input, double tol, const std::string& output) {
    const auto in = operator_from_json(load_json(input), tol);
    json rep;
    rep["n"] = in.op.n();
    rep["d"] = in.phi.d();
    if (in.phi.d() == 0) {
        rep["measure"] = to_json(MatrixMeasure(1));
        rep["cyclic"] = false;
        rep["rank"] = 0;
        emit(rep, output);
        return 0;
    }
    const auto m = spectral_matrix_measure(in.op, in.phi, tol);
    rep["measure"] = to_json(m);
    const int rank = cyclicity_rank(in.op, in.phi);
    rep["rank"] = rank;
    rep["cyclic"] = rank == in.op.n();
    if (rank == in.op.n()) {
        fuzz::Rng rng(7);
        std::vector<BorelSet> omegas;
        for (int k = 0; k < 10; ++k) omegas.push_back(rng.borel_set());
        rep["xmue"] = to_json(verify_xmue(in.op, in.phi, omegas, tol));
    }
    if (!m.is_empty()) {
        const MultOp op(m, PiecewiseScalarFn::identity());
        rep["sigma"] = op.spectrum().to_string();
        rep["sigma_p"] = op.point_spectrum().to_string();
    }
    rep["sigma_ac"] = ac_spectrum(m).to_string();
    emit(rep, output);
    return 0;
}

int cmd_verify_xmue(const std::string& input, double tol, unsigned long long seed,
                    const std::string& output) {
    const auto in = operator_from_json(load_json(input), tol);
    fuzz::Rng rng(seed);
    std::vector<BorelSet> omegas;
    for (int k = 0; k < 20; ++k) omegas.push_back(rng.borel_set());
    const auto rep = verify_xmue(in.op, in.phi, omegas, tol);
    emit(to_json(rep), output);
    return rep.passed(tol * (1.0 + in.op.matrix.frobenius_norm())) ? 0 : kExitPropertyFailure;
}

int cmd_spectrum(const std::string& measure_path, const std::string& symbol, double tol,
                 const std::string& output) {
    const auto m = measure_from_json(load_json(measure_path), tol);
    if (m.is_empty()) throw TrivialSpace("spectrum: the measure is zero");
    const MultOp op(m, parse_symbol(symbol));
    json rep;
    rep["spectrum"] = op.spectrum().to_string();
    rep["point_spectrum"] = op.point_spectrum().to_string();
    rep["op_norm"] = op.op_norm();
    emit(rep, output);
    return 0;
}

int cmd_restrict(const std::string& measure_path, const std::string& set_text, double tol,
                 const std::string& output) {
    const auto m = measure_from_json(load_json(measure_path), tol);
    emit(to_json(m.restrict(BorelSet::parse(set_text))), output);
    return 0;
}

int cmd_acdecomp(const std::string& measure_path, const std::string& set_text, double tol,
                 const std::string& output) {
    const auto m = measure_from_json(load_json(measure_path), tol);
    emit(to_json(ac_window_report(m, BorelSet::parse(set_text), tol)), output);
    return 0;
}

int cmd_verify(const std::string& suite, const verify::Config& cfg) {
    const auto results = verify::run_suites(suite, cfg);
    bool ok = true;
    for (const auto& s : results) {
        for (const auto& p : s.properties) {
            std::printf("%-8s %-52s %4d cases %4d failures  %s\n", s.suite.c_str(),
                        p.name.c_str(), p.cases, p.failures, p.failures == 0 ? "ok" : "FAIL");
            if (p.failures > 0) ok = false;
        }
    }
    return ok ? 0 : kExitPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"matrix measures, L2(M) geometry and multiplication operators"};
    app.require_subcommand(1);

    std::string input, measure_path, set_text, symbol = "x", suite = "all", output;
    double tol = kDefaultTol;
    unsigned long long seed = 42;
    int fuzz_cases = 200;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--tol", tol, "relative tolerance");
        cmd->add_option("--output", output, "write the JSON report to a file");
    };

    auto* analyze = app.add_subcommand("analyze", "full report for an operator/vector-system input");
    analyze->add_option("--input", input, "operator JSON file")->required();
    add_common(analyze);

    auto* vx = app.add_subcommand("verify-xmue", "unitary-equivalence residuals for an input");
    vx->add_option("--input", input, "operator JSON file")->required();
    vx->add_option("--seed", seed, "seed for the sampled Borel sets");
    add_common(vx);

    auto* spec = app.add_subcommand("spectrum", "spectrum of a multiplication operator");
    spec->add_option("--measure", measure_path, "measure JSON file")->required();
    spec->add_option("--symbol", symbol, "symbol, e.g. \"2*x+1\" or \"{ [0,1]: x ; {2}: 5 }\"");
    add_common(spec);

    auto* res = app.add_subcommand("restrict", "restrict a measure to a set");
    res->add_option("--measure", measure_path, "measure JSON file")->required();
    res->add_option("--set", set_text, "set, e.g. \"[0,1]u{2}\"")->required();
    add_common(res);

    auto* acd = app.add_subcommand("acdecomp", "absolute-continuity report for a window");
    acd->add_option("--measure", measure_path, "measure JSON file")->required();
    acd->add_option("--set", set_text, "window G, e.g. \"(0,0.5)\"")->required();
    add_common(acd);

    auto* ver = app.add_subcommand("verify", "run a property suite");
    ver->add_option("--suite", suite, "linalg|measure|l2|multop|cyclic|accont|all");
    ver->add_option("--seed", seed, "fuzz seed");
    ver->add_option("--fuzz-cases", fuzz_cases, "cases per property")->check(CLI::PositiveNumber);
    ver->add_option("--tol", tol, "relative tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!(tol > 0.0)) throw ParseError("--tol must be positive");
        if (analyze->parsed()) return cmd_analyze(input, tol, output);
        if (vx->parsed()) return cmd_verify_xmue(input, tol, seed, output);
        if (spec->parsed()) return cmd_spectrum(measure_path, symbol, tol, output);
        if (res->parsed()) return cmd_restrict(measure_path, set_text, tol, output);
        if (acd->parsed()) return cmd_acdecomp(measure_path, set_text, tol, output);
        if (ver->parsed())
            return cmd_verify(suite, verify::Config{tol, kClusterTol, seed, fuzz_cases});
    } catch (const NotCyclic& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPropertyFailure;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
