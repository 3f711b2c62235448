#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "theta/arithmetic.hpp"
#include "theta/core.hpp"
#include "theta/heyde.hpp"
#include "theta/json_io.hpp"
#include "theta/measure.hpp"
#include "theta/oracle.hpp"

namespace {

using nlohmann::json;

std::string read_input(const std::string& path) {
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream f(path);
        if (!f) throw std::runtime_error("cannot open file: " + path);
        ss << f.rdbuf();
    }
    return ss.str();
}

theta::ThetaParams load_params(const std::string& path) {
    return theta::params_from_json(json::parse(read_input(path)));
}

std::string shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void emit(const json& j) { std::cout << j.dump() << '\n'; }

json attach_classification_report(const theta::ThetaParams& p,
                                  theta::Classification c, std::size_t trials,
                                  std::size_t grid, std::uint64_t seed,
                                  const theta::Tolerance& tol) {
    try {
        if (c == theta::Classification::Boundary)
            return theta::report_to_json(
                theta::verify_indecomposability_search(p, trials, seed, tol));
        return theta::report_to_json(theta::verify_measure_grid(p, grid, tol));
    } catch (const theta::DomainError&) {
        return nullptr;  // atoms: nothing to scan
    }
}

double reconvolution_dev(const theta::Factorization& f,
                         const theta::ThetaParams& p,
                         const theta::Tolerance& tol) {
    const theta::ThetaParams r = theta::reconvolve(f, tol);
    const theta::ThetaParams c = theta::canonicalize(p);
    double dev = std::abs(r.sigma - c.sigma);
    dev = std::max(dev, std::abs(r.sigma_prime - c.sigma_prime));
    dev = std::max(dev, std::abs(r.beta - c.beta));
    dev = std::max(dev, std::abs(r.beta_prime - c.beta_prime));
    dev = std::max(dev, std::abs(theta::resolve_kappa(r, tol) -
                                 theta::resolve_kappa(c, tol)));
    return dev;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"arithmetic of the convolution semigroup of gaussian-type "
                 "distributions on R x Z(2)"};
    app.require_subcommand(1);
    app.fallthrough();

    double tol_rel = 1e-9;
    std::uint64_t seed = 0;
    std::size_t grid = 4096;
    app.add_option("--tol", tol_rel, "relative tolerance for classification");
    app.add_option("--seed", seed, "random seed for sampling and verification");
    app.add_option("--grid", grid, "grid size for the measure verifier");

    std::string file1, file2;
    bool verify_flag = false;

    auto* cmd_classify = app.add_subcommand("classify", "classify parameters");
    std::size_t classify_trials = 1000;
    cmd_classify->add_option("file", file1, "params JSON ('-' for stdin)")->required();
    cmd_classify->add_flag("--verify", verify_flag, "attach an oracle report");
    cmd_classify->add_option("--n", classify_trials, "split trials for boundary inputs");

    auto* cmd_convolve = app.add_subcommand("convolve", "convolve two distributions");
    std::size_t mc_n = 100000;
    cmd_convolve->add_option("file", file1, "first params JSON")->required();
    cmd_convolve->add_option("file2", file2, "second params JSON")->required();
    cmd_convolve->add_flag("--verify", verify_flag, "attach a Monte-Carlo report");
    cmd_convolve->add_option("--n", mc_n, "Monte-Carlo sample count");

    auto* cmd_charfn = app.add_subcommand("charfn", "characteristic function value");
    double arg_s = 0.0;
    int arg_l = 0;
    cmd_charfn->add_option("file", file1)->required();
    cmd_charfn->add_option("--s", arg_s, "real character coordinate")->required();
    cmd_charfn->add_option("--l", arg_l, "Z(2) character coordinate (0 or 1)")->required();

    auto* cmd_density = app.add_subcommand("density", "component density value");
    double arg_t = 0.0;
    int arg_k = 0;
    cmd_density->add_option("file", file1)->required();
    cmd_density->add_option("--t", arg_t, "point on R")->required();
    cmd_density->add_option("--k", arg_k, "component (0 or 1)")->required();

    auto* cmd_sample = app.add_subcommand("sample", "draw i.i.d. samples as CSV");
    std::size_t sample_n = 1000;
    cmd_sample->add_option("file", file1)->required();
    cmd_sample->add_option("--n", sample_n, "number of draws");

    auto* cmd_decompose = app.add_subcommand("decompose", "constructive factorizations");
    std::string mode;
    std::size_t chain_n = 1;
    cmd_decompose->add_option("file", file1)->required();
    cmd_decompose->add_option("--mode", mode, "gauss | chain | lambda-pi")
        ->required()
        ->check(CLI::IsMember({"gauss", "chain", "lambda-pi"}));
    cmd_decompose->add_option("--n", chain_n, "chain length for --mode chain");
    cmd_decompose->add_flag("--verify", verify_flag, "attach an oracle report");

    auto* cmd_root = app.add_subcommand("root", "n-th convolution root");
    unsigned root_n = 2;
    cmd_root->add_option("file", file1)->required();
    cmd_root->add_option("--n", root_n, "root order")->required();

    auto* cmd_verify = app.add_subcommand("verify", "grid verification of the measure criterion");
    cmd_verify->add_option("file", file1)->required();

    auto* cmd_heyde = app.add_subcommand("heyde", "conditional-symmetry defect");
    cmd_heyde->add_option("file", file1, "config JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    const theta::Tolerance tol{tol_rel, 1e-300};

    try {
        if (cmd_classify->parsed()) {
            const theta::ThetaParams p = load_params(file1);
            const theta::Classification c = theta::classify(p, tol);
            json out{{"class", theta::classification_name(c)},
                     {"params", theta::params_to_json(theta::canonicalize(p))}};
            if (verify_flag)
                out["verification"] =
                    attach_classification_report(p, c, classify_trials, grid, seed, tol);
            emit(out);
        } else if (cmd_convolve->parsed()) {
            const theta::ThetaParams p = load_params(file1);
            const theta::ThetaParams q = load_params(file2);
            const theta::ThetaParams r = theta::convolve(p, q, tol);
            if (verify_flag) {
                emit(json{{"params", theta::params_to_json(r)},
                          {"verification", theta::report_to_json(
                               theta::verify_convolution_mc(p, q, mc_n, seed, tol))}});
            } else {
                emit(theta::params_to_json(r));
            }
        } else if (cmd_charfn->parsed()) {
            const auto v = theta::char_fn(load_params(file1), arg_s, arg_l, tol);
            emit(json{{"re", v.real()}, {"im", v.imag()}});
        } else if (cmd_density->parsed()) {
            emit(json{{"density", theta::density(load_params(file1), arg_t, arg_k, tol)}});
        } else if (cmd_sample->parsed()) {
            const auto draws = theta::sample(load_params(file1), sample_n, seed, tol);
            std::cout << "t,k\n";
            for (const theta::SamplePoint& x : draws)
                std::cout << shortest(x.t) << ',' << x.k << '\n';
        } else if (cmd_decompose->parsed()) {
            const theta::ThetaParams p = load_params(file1);
            theta::Factorization f;
            if (mode == "gauss")
                f = theta::max_gaussian_factor(p, tol);
            else if (mode == "chain")
                f = theta::factor_chain(p, chain_n, tol);
            else
                f = theta::lambda_pi_decomposition(p, tol);
            json out = theta::factorization_to_json(f);
            if (verify_flag)
                out["verification"] =
                    json{{"input_report",
                          attach_classification_report(p, theta::classify(p, tol),
                                                       classify_trials, grid, seed, tol)},
                         {"reconvolution_dev", reconvolution_dev(f, p, tol)}};
            emit(out);
        } else if (cmd_root->parsed()) {
            const theta::NthRoot r = theta::nth_root(load_params(file1), root_n, tol);
            emit(json{{"root", theta::params_to_json(r.root)},
                      {"shift", theta::group_element_to_json(r.shift)}});
        } else if (cmd_verify->parsed()) {
            emit(theta::report_to_json(
                theta::verify_measure_grid(load_params(file1), grid, tol)));
        } else if (cmd_heyde->parsed()) {
            const theta::HeydeConfig cfg =
                theta::heyde_config_from_json(json::parse(read_input(file1)));
            // --grid overrides the default 17-point axis
            const std::size_t points = app.count("--grid") ? grid : 17;
            const auto s_grid = theta::default_s_grid(cfg, points);
            emit(json{{"defect", theta::symmetry_defect(cfg, s_grid, tol)},
                      {"hypothesis_ok", theta::hypothesis_ok(cfg)}});
        }
        return 0;
    } catch (const theta::Error& e) {
        std::cerr << json{{"error", e.code()}, {"message", e.what()}}.dump() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "parse_error"}, {"message", e.what()}}.dump() << '\n';
        return 1;
    }
}
