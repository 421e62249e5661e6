// breg: command-line front end for the Bregman-divergence analysis library.
// Subcommands cover divergence evaluation, discrete optimal transport, the
// weighted-chi-square asymptotics, concentration bounds, ambiguity-set
// construction, distributionally robust action selection, pushforward
// distribution learning, and the empirical validation suite.
//
// Exit codes: 0 success, 1 validation failure (`validate` only),
// 2 usage or I/O error.  Primary output is byte-stable for fixed seed and
// flags; every stochastic subcommand echoes its seed.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "breg/ambiguity.hpp"
#include "breg/asymptotics.hpp"
#include "breg/concentration.hpp"
#include "breg/divergence.hpp"
#include "breg/io.hpp"
#include "breg/learn.hpp"
#include "breg/transport.hpp"
#include "breg/validate.hpp"

namespace {

using breg::Vector;
using json = nlohmann::ordered_json;

struct GeneratorFlags {
    std::string name = "squared_l2";
    double delta = 1e-6;
    std::string mahalanobis_json;  // row-major [[...],[...]]

    void attach(CLI::App* cmd) {
        cmd->add_option("--generator", name,
                        "squared_l2 | neg_entropy | itakura_saito | mahalanobis | exponential")
            ->capture_default_str();
        cmd->add_option("--delta", delta,
                        "interior margin for boundary-singular generators")
            ->capture_default_str();
        cmd->add_option("--mahalanobis-matrix", mahalanobis_json,
                        "SPD matrix as a row-major JSON array of rows");
    }

    breg::ConvexGenerator build(int dimension) const {
        breg::BuiltinParams params;
        params.delta = delta;
        if (!mahalanobis_json.empty()) {
            const json rows = json::parse(mahalanobis_json);
            breg::Matrix a(dimension, dimension);
            if (static_cast<int>(rows.size()) != dimension)
                throw std::runtime_error("mahalanobis matrix has wrong row count");
            for (int i = 0; i < dimension; ++i) {
                if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != dimension)
                    throw std::runtime_error("mahalanobis matrix has wrong column count");
                for (int j = 0; j < dimension; ++j)
                    a(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                                  .get<double>();
            }
            params.mahalanobis_matrix = a;
        }
        return breg::make_builtin(name, dimension, params);
    }
};

breg::Direction parse_direction(const std::string& dir) {
    if (dir == "z") return breg::Direction::empirical_first;
    if (dir == "y") return breg::Direction::true_first;
    throw std::runtime_error("direction must be 'z' (empirical first) or 'y' (true first)");
}

breg::BoundForm parse_form(const std::string& form) {
    if (form == "paper") return breg::BoundForm::stated;
    if (form == "mcdiarmid") return breg::BoundForm::mcdiarmid;
    throw std::runtime_error("form must be 'paper' or 'mcdiarmid'");
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write to " + path);
    out << content;
}

Vector parse_eps_grid(const std::string& grid_spec, const std::string& list_spec) {
    Vector grid;
    if (!grid_spec.empty()) {
        double start = 0.0, step = 0.0, stop = 0.0;
        if (std::sscanf(grid_spec.c_str(), "%lf:%lf:%lf", &start, &step, &stop) != 3 ||
            step <= 0.0)
            throw std::runtime_error("--eps-grid must be start:step:stop with step > 0");
        for (double e = start; e <= stop + 1e-15; e += step) grid.push_back(e);
    } else if (!list_spec.empty()) {
        std::istringstream ss(list_spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) grid.push_back(std::stod(tok));
    }
    if (grid.empty()) throw std::runtime_error("provide --eps-grid or --eps-list");
    return grid;
}

// ---------------------------------------------------------------- div
int run_div(const GeneratorFlags& gen, const std::string& x_path, const std::string& y_path) {
    const Vector x = breg::load_vector(x_path);
    const Vector y = breg::load_vector(y_path);
    if (x.size() != y.size()) throw std::runtime_error("x and y have different lengths");
    const auto g = gen.build(static_cast<int>(x.size()));
    std::cout << breg::format_number(breg::bregman_value(g, x, y), 12) << "\n";
    return 0;
}

// ----------------------------------------------------------------- ot
int run_ot(const GeneratorFlags& gen, const std::string& cost_spec, const std::string& src_path,
           const std::string& dst_path, const std::string& method, double epsilon, int max_iter,
           const std::string& plan_path) {
    const auto src = breg::load_distribution(src_path);
    const auto dst = breg::load_distribution(dst_path);

    breg::Matrix cost;
    if (cost_spec.rfind("bregman:", 0) == 0) {
        GeneratorFlags flags = gen;
        flags.name = cost_spec.substr(8);
        const auto g = flags.build(src.dimension());
        cost = breg::bregman_cost_matrix(g, src, dst);
    } else if (cost_spec.rfind("lp:", 0) == 0) {
        cost = breg::metric_cost_matrix(std::stod(cost_spec.substr(3)), src, dst);
    } else {
        throw std::runtime_error("--cost must be bregman:<generator> or lp:<order>");
    }

    breg::TransportPlan plan;
    if (method == "exact") {
        plan = breg::solve_exact(cost, src, dst);
    } else if (method == "sinkhorn") {
        if (!(epsilon > 0.0)) throw std::runtime_error("sinkhorn needs --epsilon > 0");
        plan = breg::solve_sinkhorn(cost, src, dst, epsilon, max_iter);
        if (!plan.converged)
            std::cerr << "# sinkhorn hit max_iter at marginal L1 violation "
                      << breg::format_number(plan.iteration_violation_l1, 6)
                      << "; plan rounded to feasibility\n";
    } else {
        throw std::runtime_error("--method must be exact or sinkhorn");
    }
    std::cout << breg::format_number(plan.cost) << "\n";
    if (!plan_path.empty()) write_output(plan_path, breg::plan_to_csv(plan.coupling));
    return 0;
}

// -------------------------------------------------------- asymptotics
int run_asymptotics(const GeneratorFlags& gen, const std::string& p_path, double alpha, int K,
                    std::uint64_t seed) {
    const Vector p = breg::load_vector(p_path);
    const auto g = gen.build(static_cast<int>(p.size()));
    const breg::SimplexPoint point =
        g.needs_clamping() ? breg::SimplexPoint::clamped(p, g.delta()) : breg::SimplexPoint(p);
    const auto spectrum = breg::limit_spectrum(g, point);
    const double quantile = breg::mc_quantile(spectrum, alpha, K, seed);

    std::ostringstream out;
    out << "# seed=" << seed << "\n";
    out << "r," << spectrum.rank << "\n";
    out << "beta";
    for (double b : spectrum.eigenvalues) out << ',' << breg::format_number(b);
    out << "\nquantile," << breg::format_number(quantile) << "\n";
    std::cout << out.str();
    return 0;
}

// ------------------------------------------------------- validate-law
int run_validate_law(const GeneratorFlags& gen, const std::string& p_path, int n, int M,
                     std::uint64_t seed, const std::string& direction, int limit_draws,
                     const std::string& output) {
    const Vector p = breg::load_vector(p_path);
    const auto g = gen.build(static_cast<int>(p.size()));
    const breg::SimplexPoint point =
        g.needs_clamping() ? breg::SimplexPoint::clamped(p, g.delta()) : breg::SimplexPoint(p);
    const auto result =
        breg::empirical_law_check(g, point, n, M, seed, parse_direction(direction), limit_draws);

    std::ostringstream out;
    out << "# seed=" << seed << "\n";
    out << "ks," << breg::format_number(result.ks) << "\n";
    out << "statistic\n";
    for (double s : result.statistics) out << breg::format_number(s) << "\n";
    write_output(output, out.str());
    return 0;
}

// -------------------------------------------------------------- bound
int run_bound(const GeneratorFlags& gen, const std::string& direction, int n, int d, double eps,
              const std::string& form) {
    const auto g = gen.build(d);
    std::cout << breg::format_number(
                     breg::tail_bound(parse_form(form), parse_direction(direction), g, n, d, eps))
              << "\n";
    return 0;
}

// ----------------------------------------------------------- tailcheck
int run_tailcheck(const GeneratorFlags& gen, const std::string& direction,
                  const std::string& p_path, int n, int M, std::uint64_t seed,
                  const std::string& grid_spec, const std::string& list_spec,
                  const std::string& output) {
    const Vector p = breg::load_vector(p_path);
    const auto g = gen.build(static_cast<int>(p.size()));
    const breg::SimplexPoint point =
        g.needs_clamping() ? breg::SimplexPoint::clamped(p, g.delta()) : breg::SimplexPoint(p);
    const Vector grid = parse_eps_grid(grid_spec, list_spec);
    const auto table =
        breg::empirical_tail_check(parse_direction(direction), g, point, n, M, grid, seed);

    std::ostringstream out;
    out << "# seed=" << seed << "\n";
    out << "eps,freq,paper_bound,mcdiarmid_bound\n";
    for (const auto& row : table.rows)
        out << breg::format_number(row.eps) << ',' << breg::format_number(row.frequency) << ','
            << breg::format_number(row.stated_bound) << ','
            << breg::format_number(row.mcdiarmid_bound) << "\n";
    write_output(output, out.str());
    return 0;
}

// ------------------------------------------------------ ambiguity build
json generator_to_json(const GeneratorFlags& gen, int dimension) {
    json j;
    j["name"] = gen.name;
    j["dimension"] = dimension;
    j["delta"] = gen.delta;
    if (!gen.mahalanobis_json.empty()) j["mahalanobis_matrix"] = json::parse(gen.mahalanobis_json);
    return j;
}

int run_ambiguity_build(const GeneratorFlags& gen, const std::string& mode,
                        const std::string& counts_path, double alpha, int K, std::uint64_t seed,
                        double delta_conf, const std::string& form, const std::string& output) {
    const std::vector<long> counts = breg::load_counts(counts_path);
    const int d = static_cast<int>(counts.size());
    auto g = std::make_shared<const breg::ConvexGenerator>(gen.build(d));

    breg::AmbiguitySet set =
        mode == "asymptotic"
            ? breg::build_asymptotic(g, counts, alpha, K, seed)
            : breg::build_concentration(g, counts, delta_conf, parse_form(form));

    json j;
    j["generator"] = generator_to_json(gen, d);
    j["center"] = set.center.weights();
    j["center_margin"] = set.center.interior_margin();
    j["radius"] = set.radius;
    j["n"] = set.n;
    j["d"] = set.d;
    if (mode == "asymptotic") {
        j["seed"] = seed;
        j["provenance"] = {{"mode", "asymptotic"}, {"alpha", alpha}, {"K", K}, {"seed", seed}};
    } else {
        j["provenance"] = {{"mode", "concentration"}, {"delta_conf", delta_conf}, {"form", form}};
    }
    write_output(output, j.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------- drso
int run_drso(const std::string& losses_path, const std::string& set_path) {
    std::ifstream in(set_path);
    if (!in) throw std::runtime_error("cannot open set file: " + set_path);
    const json j = json::parse(in);

    GeneratorFlags gen;
    gen.name = j.at("generator").at("name").get<std::string>();
    gen.delta = j.at("generator").at("delta").get<double>();
    if (j.at("generator").contains("mahalanobis_matrix"))
        gen.mahalanobis_json = j.at("generator").at("mahalanobis_matrix").dump();
    const int d = j.at("d").get<int>();
    auto g = std::make_shared<const breg::ConvexGenerator>(gen.build(d));

    const Vector center = j.at("center").get<Vector>();
    const double margin = j.contains("center_margin") ? j.at("center_margin").get<double>() : 0.0;
    breg::Provenance prov = breg::ConcentrationProvenance{0.0, breg::BoundForm::mcdiarmid};
    if (j.at("provenance").at("mode") == "asymptotic")
        prov = breg::AsymptoticProvenance{j.at("provenance").at("alpha").get<double>(),
                                          j.at("provenance").at("K").get<int>(),
                                          j.at("provenance").at("seed").get<std::uint64_t>()};
    breg::AmbiguitySet set{breg::SimplexPoint(center, margin), std::move(g),
                           j.at("radius").get<double>(), prov, j.at("n").get<int>(), d};

    const breg::Matrix losses = breg::load_matrix(losses_path);
    const auto result = breg::drso_demo(losses, set);

    std::ostringstream out;
    out << "action,worst_case_value\n";
    for (std::size_t k = 0; k < result.worst_case_values.size(); ++k)
        out << k << ',' << breg::format_number(result.worst_case_values[k]) << "\n";
    out << "best_action," << result.best_action << "\n";
    std::cout << out.str();
    return 0;
}

// --------------------------------------------------------------- learn
int run_learn(const GeneratorFlags& gen, const std::string& target_path,
              const std::string& base_path, const std::string& theta0_spec, int steps, double lr,
              const std::string& output) {
    const auto target = breg::load_distribution(target_path);
    breg::PushforwardFamily family;
    family.base_sample = breg::load_points(base_path);
    const int d = family.dimension();
    if (d == 0) throw std::runtime_error("empty base sample");
    if (target.dimension() != d)
        throw std::runtime_error("target and base sample dimensions differ");

    Vector theta_values;
    {
        std::istringstream ss(theta0_spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) theta_values.push_back(std::stod(tok));
    }
    if (static_cast<int>(theta_values.size()) != 2 * d)
        throw std::runtime_error("--theta0 needs 2*d values: loc_1..loc_d,scale_1..scale_d");
    breg::Theta theta0;
    theta0.loc.assign(theta_values.begin(), theta_values.begin() + d);
    theta0.scale.assign(theta_values.begin() + d, theta_values.end());

    const auto g = gen.build(d);
    const auto result = breg::fit(g, target, family, theta0, steps, lr);

    std::ostringstream out;
    out << "step,objective";
    for (int i = 0; i < d; ++i) out << ",loc" << (i + 1);
    for (int i = 0; i < d; ++i) out << ",scale" << (i + 1);
    out << "\n";
    for (std::size_t s = 0; s < result.trace.size(); ++s) {
        out << s << ',' << breg::format_number(result.trace[s]);
        const breg::Theta& th = result.path[s];
        for (double v : th.loc) out << ',' << breg::format_number(v);
        for (double v : th.scale) out << ',' << breg::format_number(v);
        out << "\n";
    }
    write_output(output, out.str());
    return 0;
}

// ------------------------------------------------------------ validate
int run_validate(bool quick, std::uint64_t seed, const std::string& report_path) {
    const auto results = breg::run_validation(quick, seed);
    // canonical (timing-free) report on stdout; the optional file report
    // carries wall times for humans
    std::cout << breg::render_report_json(results, seed, quick, false);
    if (!report_path.empty())
        write_output(report_path, breg::render_report_json(results, seed, quick, true));
    for (const auto& r : results)
        if (!r.passed) return 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bregman-divergence analysis: divergences, optimal transport, "
                 "concentration bounds, weighted-chi-square asymptotics, DRSO ambiguity sets"};
    app.require_subcommand(1);

    // div
    auto* div_cmd = app.add_subcommand("div", "Bregman divergence between two vectors");
    GeneratorFlags div_gen;
    std::string div_x, div_y;
    div_gen.attach(div_cmd);
    div_cmd->add_option("--x", div_x, "first argument vector file")->required();
    div_cmd->add_option("--y", div_y, "second argument vector file")->required();

    // ot
    auto* ot_cmd = app.add_subcommand("ot", "discrete optimal transport");
    GeneratorFlags ot_gen;
    std::string ot_cost = "lp:2", ot_src, ot_dst, ot_method = "exact", ot_plan;
    double ot_eps = 0.0;
    int ot_max_iter = 50000;
    ot_gen.attach(ot_cmd);
    ot_cmd->add_option("--cost", ot_cost, "bregman:<generator> or lp:<order>")
        ->capture_default_str();
    ot_cmd->add_option("--src", ot_src, "source distribution CSV")->required();
    ot_cmd->add_option("--dst", ot_dst, "target distribution CSV")->required();
    ot_cmd->add_option("--method", ot_method, "exact | sinkhorn")->capture_default_str();
    ot_cmd->add_option("--epsilon", ot_eps, "sinkhorn regularization");
    ot_cmd->add_option("--max-iter", ot_max_iter, "sinkhorn iteration cap")->capture_default_str();
    ot_cmd->add_option("--plan", ot_plan, "write the coupling to this CSV file");

    // asymptotics
    auto* asy_cmd = app.add_subcommand("asymptotics", "limit spectrum and MC quantile");
    GeneratorFlags asy_gen;
    std::string asy_p;
    double asy_alpha = 0.95;
    int asy_k = 10000;
    std::uint64_t asy_seed = 42;
    asy_gen.attach(asy_cmd);
    asy_cmd->add_option("--p", asy_p, "simplex weight vector file")->required();
    asy_cmd->add_option("--alpha", asy_alpha, "quantile level")->capture_default_str();
    asy_cmd->add_option("--K", asy_k, "Monte Carlo replicates")->capture_default_str();
    asy_cmd->add_option("--seed", asy_seed, "RNG seed")->capture_default_str();

    // validate-law
    auto* law_cmd = app.add_subcommand("validate-law", "simulate n*D_phi and compare to the limit");
    GeneratorFlags law_gen;
    std::string law_p, law_dir = "y", law_out;
    int law_n = 5000, law_m = 20000, law_draws = 1000000;
    std::uint64_t law_seed = 42;
    law_gen.attach(law_cmd);
    law_cmd->add_option("--p", law_p, "simplex weight vector file")->required();
    law_cmd->add_option("--n", law_n, "sample size per replicate")->capture_default_str();
    law_cmd->add_option("--M", law_m, "replicates")->capture_default_str();
    law_cmd->add_option("--seed", law_seed, "RNG seed")->capture_default_str();
    law_cmd->add_option("--direction", law_dir, "z = D(p_hat,p), y = D(p,p_hat)")
        ->capture_default_str();
    law_cmd->add_option("--limit-draws", law_draws, "MC draws of the limit law")
        ->capture_default_str();
    law_cmd->add_option("--output", law_out, "output CSV path (default stdout)");

    // bound
    auto* bound_cmd = app.add_subcommand("bound", "closed-form concentration tail bound");
    GeneratorFlags bound_gen;
    std::string bound_dir = "y", bound_form = "mcdiarmid";
    int bound_n = 100, bound_d = 2;
    double bound_eps = 0.1;
    bound_gen.attach(bound_cmd);
    bound_cmd->add_option("--direction", bound_dir, "z | y")->capture_default_str();
    bound_cmd->add_option("--n", bound_n, "sample size")->required();
    bound_cmd->add_option("--d", bound_d, "number of categories")->required();
    bound_cmd->add_option("--eps", bound_eps, "deviation")->required();
    bound_cmd->add_option("--form", bound_form, "paper | mcdiarmid")->capture_default_str();

    // tailcheck
    auto* tail_cmd = app.add_subcommand("tailcheck", "empirical tail frequencies vs bounds");
    GeneratorFlags tail_gen;
    std::string tail_dir = "z", tail_p, tail_grid, tail_list, tail_out;
    int tail_n = 200, tail_m = 50000;
    std::uint64_t tail_seed = 42;
    tail_gen.attach(tail_cmd);
    tail_cmd->add_option("--direction", tail_dir, "z | y")->capture_default_str();
    tail_cmd->add_option("--p", tail_p, "simplex weight vector file")->required();
    tail_cmd->add_option("--n", tail_n, "sample size per replicate")->capture_default_str();
    tail_cmd->add_option("--M", tail_m, "replicates")->capture_default_str();
    tail_cmd->add_option("--seed", tail_seed, "RNG seed")->capture_default_str();
    tail_cmd->add_option("--eps-grid", tail_grid, "start:step:stop");
    tail_cmd->add_option("--eps-list", tail_list, "comma-separated eps values");
    tail_cmd->add_option("--output", tail_out, "output CSV path (default stdout)");

    // ambiguity build
    auto* amb_cmd = app.add_subcommand("ambiguity", "ambiguity-set construction");
    auto* amb_build = amb_cmd->add_subcommand("build", "build a Bregman-ball ambiguity set");
    GeneratorFlags amb_gen;
    std::string amb_mode = "asymptotic", amb_counts, amb_form = "mcdiarmid", amb_out;
    double amb_alpha = 0.95, amb_conf = 0.05;
    int amb_k = 10000;
    std::uint64_t amb_seed = 42;
    amb_gen.attach(amb_build);
    amb_build->add_option("--mode", amb_mode, "asymptotic | concentration")->capture_default_str();
    amb_build->add_option("--counts", amb_counts, "category counts file")->required();
    amb_build->add_option("--alpha", amb_alpha, "asymptotic confidence level")
        ->capture_default_str();
    amb_build->add_option("--K", amb_k, "MC quantile replicates")->capture_default_str();
    amb_build->add_option("--seed", amb_seed, "RNG seed")->capture_default_str();
    amb_build->add_option("--delta-conf", amb_conf, "concentration tail probability")
        ->capture_default_str();
    amb_build->add_option("--form", amb_form, "paper | mcdiarmid")->capture_default_str();
    amb_build->add_option("--output", amb_out, "output JSON path (default stdout)");

    // drso
    auto* drso_cmd = app.add_subcommand("drso", "worst-case action selection over a set");
    std::string drso_losses, drso_set;
    drso_cmd->add_option("--losses", drso_losses, "actions x categories loss CSV")->required();
    drso_cmd->add_option("--set", drso_set, "ambiguity set JSON (from 'ambiguity build')")
        ->required();

    // learn
    auto* learn_cmd = app.add_subcommand("learn", "fit a location-scale pushforward family");
    GeneratorFlags learn_gen;
    std::string learn_target, learn_base, learn_theta0, learn_out;
    int learn_steps = 100;
    double learn_lr = 0.1;
    learn_gen.attach(learn_cmd);
    learn_cmd->add_option("--target", learn_target, "target distribution CSV")->required();
    learn_cmd->add_option("--base", learn_base, "base sample points CSV")->required();
    learn_cmd->add_option("--theta0", learn_theta0, "loc_1..loc_d,scale_1..scale_d")->required();
    learn_cmd->add_option("--steps", learn_steps, "gradient steps")->capture_default_str();
    learn_cmd->add_option("--lr", learn_lr, "initial step size")->capture_default_str();
    learn_cmd->add_option("--output", learn_out, "output CSV path (default stdout)");

    // validate
    auto* val_cmd = app.add_subcommand("validate", "run the empirical validation suite");
    bool val_quick = false;
    std::uint64_t val_seed = 42;
    std::string val_report;
    val_cmd->add_flag("--quick", val_quick, "reduced sizes, finishes in well under two minutes");
    val_cmd->add_option("--seed", val_seed, "RNG seed")->capture_default_str();
    val_cmd->add_option("--report", val_report, "also write a JSON report with wall times");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        std::cerr << e.what() << "\n";
        std::cerr << app.help() << "\n";
        return 2;
    }

    try {
        if (div_cmd->parsed()) return run_div(div_gen, div_x, div_y);
        if (ot_cmd->parsed())
            return run_ot(ot_gen, ot_cost, ot_src, ot_dst, ot_method, ot_eps, ot_max_iter,
                          ot_plan);
        if (asy_cmd->parsed()) return run_asymptotics(asy_gen, asy_p, asy_alpha, asy_k, asy_seed);
        if (law_cmd->parsed())
            return run_validate_law(law_gen, law_p, law_n, law_m, law_seed, law_dir, law_draws,
                                    law_out);
        if (bound_cmd->parsed())
            return run_bound(bound_gen, bound_dir, bound_n, bound_d, bound_eps, bound_form);
        if (tail_cmd->parsed())
            return run_tailcheck(tail_gen, tail_dir, tail_p, tail_n, tail_m, tail_seed, tail_grid,
                                 tail_list, tail_out);
        if (amb_cmd->parsed()) {
            if (!amb_build->parsed()) throw std::runtime_error("usage: breg ambiguity build ...");
            return run_ambiguity_build(amb_gen, amb_mode, amb_counts, amb_alpha, amb_k, amb_seed,
                                       amb_conf, amb_form, amb_out);
        }
        if (drso_cmd->parsed()) return run_drso(drso_losses, drso_set);
        if (learn_cmd->parsed())
            return run_learn(learn_gen, learn_target, learn_base, learn_theta0, learn_steps,
                             learn_lr, learn_out);
        if (val_cmd->parsed()) return run_validate(val_quick, val_seed, val_report);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
