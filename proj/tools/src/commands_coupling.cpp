#include "sofic/coupling.hpp"
#include "sofic/dependence.hpp"
#include "sofic/forests.hpp"
#include "sofic/random_matrix.hpp"
#include "sofic_cli/registry.hpp"
#include "sofic_cli/specs.hpp"

#include <json.hpp>

#include <memory>

namespace sofic::cli {

namespace {

nlohmann::json matrix_json(const Matrix& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

struct LawPair {
  std::string first = "bernoulli:3:0.2";
  std::string second = "bernoulli:3:0.5";

  void add_to(CLI::App* sub) {
    sub->add_option("--d1", first, "First law: dpp:KERNEL, bernoulli:N:p or csv:N:PATH");
    sub->add_option("--d2", second, "Second law");
  }
  [[nodiscard]] std::pair<SubsetDistribution, SubsetDistribution> build(std::uint64_t seed) const {
    Rng a = Rng(seed).split(1);
    Rng b = Rng(seed).split(2);
    return {parse_distribution(first, a), parse_distribution(second, b)};
  }
};

void add_couple(CLI::App& app, Registry& registry) {
  auto* sub = app.add_subcommand("couple", "Monotone coupling or a domination witness");
  auto laws = std::make_shared<LawPair>();
  laws->add_to(sub);
  registry[sub] = [laws](RunContext& ctx) {
    const auto [d1, d2] = laws->build(ctx.seed);
    const auto result = monotone_coupling(d1, d2);
    if (result.dominated()) {
      ctx.write("coupling.json", result.coupling->to_json() + "\n");
      *ctx.out << "dominated: monotone coupling with " << result.coupling->atoms().size()
               << " atoms\n";
    } else {
      nlohmann::json w;
      w["flow_value"] = result.flow_value;
      w["generators"] = result.witness->generators;
      w["first_mass"] = result.witness->first_mass;
      w["second_mass"] = result.witness->second_mass;
      ctx.write("witness.json", w.dump(2) + "\n");
      *ctx.out << "not dominated: increasing event with masses "
               << format_double(result.witness->first_mass) << " > "
               << format_double(result.witness->second_mass) << '\n';
    }
    return 0;
  };
}

void add_dbar(CLI::App& app, Registry& registry) {
  auto* sub = app.add_subcommand("dbar", "Exact d-bar distance between two laws");
  auto laws = std::make_shared<LawPair>();
  laws->add_to(sub);
  registry[sub] = [laws](RunContext& ctx) {
    const auto [d1, d2] = laws->build(ctx.seed);
    const auto result = dbar(d1, d2);
    nlohmann::json j;
    j["dbar"] = result.value;
    j["coupling"] = nlohmann::json::parse(result.optimal.to_json());
    const auto check = monotone_coupling(d1, d2);
    j["dominated"] = check.dominated();
    if (check.dominated()) j["dbar_monotone"] = dbar_monotone(d1, d2);
    ctx.write("dbar.json", j.dump(2) + "\n");
    *ctx.out << "dbar " << format_double(result.value) << '\n';
    return 0;
  };
}

void add_bounds_scan(CLI::App& app, Registry& registry) {
  auto* sub = app.add_subcommand("bounds-scan", "d-bar against operator and trace norm bounds");
  auto n = std::make_shared<std::size_t>(5);
  auto trials = std::make_shared<std::size_t>(200);
  auto near = std::make_shared<double>(0.05);
  auto tol = std::make_shared<double>(1e-9);
  sub->add_option("--n", *n, "Ground set size (<= 8)");
  sub->add_option("--trials", *trials, "Number of random pairs");
  sub->add_option("--near-tight", *near, "Persist instances with conjecture slack below this");
  sub->add_option("--tol", *tol, "Tolerance on the proven bounds");
  registry[sub] = [n, trials, near, tol](RunContext& ctx) {
    struct Instance {
      Matrix q1;
      Matrix q2;
      BoundReport report;
    };
    std::vector<Instance> results(*trials);
    const Rng base(ctx.seed);
    parallel_for(*trials, ctx.jobs, [&](std::size_t i) {
      Rng rng = base.split(i);
      Matrix q1 = random_contraction(*n, rng);
      Matrix q2 = random_contraction(*n, rng);
      results[i].report = bound_suite(q1, q2);
      results[i].q1 = std::move(q1);
      results[i].q2 = std::move(q2);
    });
    Table t({"seed", "trial", "n", "dbar", "op_norm", "trace_norm", "norm_bound", "schatten_bound",
             "conj_bound", "norm_slack", "schatten_slack", "conj_slack",
             "trace_norm_unnormalized", "conj_slack_unnormalized"});
    auto near_tight = nlohmann::json::array();
    auto counterexamples = nlohmann::json::array();
    std::size_t violations = 0;
    double min_conj = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i].report;
      t.add(std::to_string(ctx.seed), i, r.n, r.dbar, r.op_norm, r.trace_norm, r.norm_bound,
            r.schatten_bound, r.conjecture_bound, r.norm_slack(), r.schatten_slack(),
            r.conjecture_slack(), r.trace_norm_unnormalized, r.conjecture_slack_unnormalized());
      if (r.lemma_violated(*tol)) ++violations;
      min_conj = std::min(min_conj, r.conjecture_slack());
      if (r.conjecture_slack() < *near) {
        nlohmann::json inst;
        inst["trial"] = i;
        inst["dbar"] = r.dbar;
        inst["conj_bound"] = r.conjecture_bound;
        inst["conj_slack"] = r.conjecture_slack();
        inst["q1"] = matrix_json(results[i].q1);
        inst["q2"] = matrix_json(results[i].q2);
        if (r.conjecture_slack() < 0) counterexamples.push_back(inst);
        near_tight.push_back(std::move(inst));
      }
    }
    ctx.write("bounds.csv", t.str());
    ctx.write("near_tight.json", near_tight.dump(2) + "\n");
    ctx.write("counterexamples.json", counterexamples.dump(2) + "\n");
    *ctx.out << results.size() << " pairs, proven-bound violations " << violations
             << ", conjecture counterexamples " << counterexamples.size()
             << ", min conjecture slack " << format_double(min_conj) << '\n';
    return violations == 0 ? 0 : 1;
  };
}

void add_mdep(CLI::App& app, Registry& registry) {
  auto* sub = app.add_subcommand("mdep", "Factorization defect of separated windows on a cycle");
  auto kernel = std::make_shared<std::string>("circulant:20:0.4,0.1,0.05");
  auto m = std::make_shared<std::size_t>(2);
  auto w = std::make_shared<std::size_t>(3);
  auto tol = std::make_shared<double>(1e-9);
  sub->add_option("--kernel", *kernel, "Kernel spec on the sites of C_n");
  sub->add_option("--m", *m, "Required separation");
  sub->add_option("--w", *w, "Window size (<= 4)");
  sub->add_option("--tol", *tol, "Defect tolerance when m >= bandwidth");
  registry[sub] = [kernel, m, w, tol](RunContext& ctx) {
    Rng rng(ctx.seed);
    auto k = parse_kernel(*kernel, rng);
    const std::size_t band = circulant_bandwidth(k.kernel);
    const DeterminantalMeasure measure(std::move(k.kernel), std::move(k.labels));
    const auto report = mdependence_check(measure, *m, *w);
    const bool expect_independent = *m >= band;
    const bool ok = !expect_independent || report.max_defect <= *tol;
    Table t({"n", "bandwidth", "m", "w", "placements", "max_defect", "expect_independent", "ok"});
    t.add(measure.ground_size(), band, *m, *w, report.placements, report.max_defect,
          expect_independent, ok);
    ctx.write("mdep.csv", t.str());
    *ctx.out << "max defect " << format_double(report.max_defect) << " over "
             << report.placements << " placements\n";
    return ok ? 0 : 1;
  };
}

void add_findep(CLI::App& app, Registry& registry) {
  auto* sub = app.add_subcommand("findep", "d-bar of band truncations of a circulant kernel");
  auto rho = std::make_shared<double>(0.5);
  auto symbol = std::make_shared<std::string>();
  auto n = std::make_shared<std::size_t>(20);
  auto bands = std::make_shared<std::string>("1..4");
  auto window = std::make_shared<std::size_t>(8);
  sub->add_option("--rho", *rho, "Decay of the geometric symbol");
  sub->add_option("--symbol", *symbol, "Explicit coefficients c0,c1,... (overrides --rho)");
  sub->add_option("--n", *n, "Cycle length");
  sub->add_option("--b", *bands, "Bandwidths a..b or a,b,c");
  sub->add_option("--window", *window, "Window size for the exact d-bar (<= 10)");
  registry[sub] = [rho, symbol, n, bands, window](RunContext& ctx) {
    const auto c = symbol->empty() ? geometric_symbol(*rho) : parse_real_list(*symbol);
    const auto bs = parse_size_list(*bands);
    std::vector<FindepResult> results(bs.size());
    parallel_for(bs.size(), ctx.jobs, [&](std::size_t i) {
      results[i] = finitely_dependent_approx(c, *n, bs[i], *window);
    });
    Table t({"b", "dbar", "clamped", "clamp_violation"});
    bool monotone = true;
    for (std::size_t i = 0; i < bs.size(); ++i) {
      t.add(bs[i], results[i].dbar, results[i].clamped, results[i].clamp_violation);
      if (i > 0 && bs[i] > bs[i - 1] && results[i].dbar > results[i - 1].dbar + 1e-12) {
        monotone = false;
      }
    }
    ctx.write("findep.csv", t.str());
    *ctx.out << "d-bar " << (monotone ? "non-increasing" : "not monotone") << " in b\n";
    return 0;
  };
}

void add_return_prob(CLI::App& app, Registry& registry) {
  auto* sub = app.add_subcommand("return-prob", "Heat-kernel traces of coupled UST <= FSF draws");
  auto graph = std::make_shared<std::string>("torus:3x3");
  auto torus = std::make_shared<std::size_t>(0);
  auto length = std::make_shared<std::size_t>(4);
  auto kind = std::make_shared<std::string>("bounded");
  auto times = std::make_shared<std::string>("0.1,1,10");
  auto samples = std::make_shared<std::size_t>(1000);
  sub->add_option("--graph", *graph, "Graph spec");
  sub->add_option("--torus", *torus, "Shortcut for --graph torus:NxN (0 = unused)");
  sub->add_option("--L", *length, "Maximal cycle length of the denser forest measure");
  sub->add_option("--cycle-space", *kind, "bounded (all cycles <= L) or squares (torus faces)");
  sub->add_option("--t", *times, "Times, comma separated");
  sub->add_option("--samples", *samples, "Coupled draws");
  registry[sub] = [graph, torus, length, kind, times, samples](RunContext& ctx) {
    const auto g = *torus > 0 ? torus_graph(*torus, *torus) : parse_graph(*graph);
    Subspace cycles;
    if (*kind == "bounded") {
      cycles = bounded_cycle_space(g, *length);
    } else if (*kind == "squares" && *torus > 0) {
      cycles = torus_square_cycle_space(*torus, *torus);
    } else {
      throw UsageError("--cycle-space must be 'bounded', or 'squares' together with --torus");
    }
    const auto ust = exact_distribution(ust_measure(g));
    const auto fsf = exact_distribution(cycle_complement_measure(g, cycles));
    const auto coupled = monotone_coupling(ust, fsf);
    if (!coupled.dominated()) {
      *ctx.err << "UST is not dominated by the forest measure\n";
      return 1;
    }
    Rng rng(ctx.seed);
    const auto ts = parse_real_list(*times);
    const auto rows = return_prob_compare(g, *coupled.coupling, ts, *samples, rng);
    Table t({"t", "sparse_mean", "dense_mean", "violations", "min_gap"});
    std::size_t violations = 0;
    for (const auto& r : rows) {
      t.add(r.t, r.sparse_mean, r.dense_mean, r.violations, r.min_gap);
      violations += r.violations;
    }
    ctx.write("return_prob.csv", t.str());
    *ctx.out << *samples << " coupled draws, " << violations << " per-draw violations\n";
    return violations == 0 ? 0 : 1;
  };
}

}  // namespace

void register_coupling_commands(CLI::App& app, Registry& registry) {
  add_couple(app, registry);
  add_dbar(app, registry);
  add_bounds_scan(app, registry);
  add_mdep(app, registry);
  add_findep(app, registry);
  add_return_prob(app, registry);
}

}  // namespace sofic::cli
