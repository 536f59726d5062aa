#include "sofic/group_ring.hpp"
#include "sofic/operators.hpp"
#include "sofic/schreier.hpp"
#include "sofic_cli/registry.hpp"
#include "sofic_cli/specs.hpp"

#include <json.hpp>

#include <memory>

namespace sofic::cli {

namespace {

std::string edge_table(const Multigraph& g) {
  Table t({"edge", "tail", "head"});
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    t.add(i, std::size_t{g.edges[i].tail}, std::size_t{g.edges[i].head});
  }
  return t.str();
}

// Finite Schreier graph standing in for the limit group at size n.
SchreierGraph approximant(const LimitGroup& group, std::size_t n, Rng& rng) {
  if (group.kind == LimitGroup::Kind::Abelian) {
    const std::vector<std::size_t> dims(group.rank, n);
    return build_torus(dims);
  }
  return random_schreier(group.rank, n, rng);
}

void add_torus(CLI::App& app, Registry& registry) {
  auto* sub = app.add_subcommand("torus", "Schreier graph of Z^d acting on a discrete torus");
  auto dims = std::make_shared<std::string>("3x3");
  sub->add_option("--dims", *dims, "Side lengths, e.g. 3x4 or 5 or 2x3x4");
  registry[sub] = [dims](RunContext& ctx) {
    const auto d = parse_dim_list(*dims);
    const auto g = build_torus(d);
    ctx.write("torus.json", to_json(g) + "\n");
    ctx.write("torus_edges.csv", edge_table(g.underlying_graph()));
    *ctx.out << "torus " << *dims << ": " << g.vertex_count() << " vertices, "
             << g.generators().size() << " symbols\n";
    return 0;
  };
}

void add_schreier_random(CLI::App& app, Registry& registry) {
  auto* sub = app.add_subcommand("schreier-random", "Random Schreier graph of the free group F_k");
  auto k = std::make_shared<std::size_t>(2);
  auto n = std::make_shared<std::size_t>(100);
  sub->add_option("--k", *k, "Rank of the free group");
  sub->add_option("--n", *n, "Number of vertices");
  registry[sub] = [k, n](RunContext& ctx) {
    Rng rng(ctx.seed);
    const auto g = random_schreier(*k, *n, rng);
    ctx.write("schreier.json", to_json(g) + "\n");
    *ctx.out << "random Schreier graph: k=" << *k << " n=" << *n
             << " tree-like fraction (r=2) " << format_double(tree_like_fraction(g, 2)) << '\n';
    return 0;
  };
}

void add_label(CLI::App& app, Registry& registry) {
  auto* sub = app.add_subcommand("label", "Label a bounded-degree graph as a Schreier graph");
  auto graph = std::make_shared<std::string>("grid:3x3");
  auto symbols = std::make_shared<std::size_t>(0);
  sub->add_option("--graph", *graph, "Graph spec");
  sub->add_option("--symbols", *symbols, "Number of self-inverse symbols (0 = 2 * max degree)");
  registry[sub] = [graph, symbols](RunContext& ctx) {
    Rng rng(ctx.seed);
    const auto g = parse_graph(*graph);
    const std::size_t k = *symbols == 0 ? std::max<std::size_t>(1, 2 * g.max_degree()) : *symbols;
    const auto s = label_as_schreier(g, GeneratorSet::self_inverse(k), rng);
    std::size_t flagged = 0;
    for (const auto& row : s.loop_flags()) flagged += std::count(row.begin(), row.end(), 1);
    ctx.write("labelled.json", to_json(s) + "\n");
    *ctx.out << "labelled " << g.vertex_count << " vertices with " << k << " symbols, "
             << flagged << " flagged loops\n";
    return 0;
  };
}

void add_subdivide(CLI::App& app, Registry& registry) {
  auto* sub = app.add_subcommand("subdivide", "Subdivide every edge once");
  auto graph = std::make_shared<std::string>("cycle:4");
  sub->add_option("--graph", *graph, "Graph spec");
  registry[sub] = [graph](RunContext& ctx) {
    const auto g = subdivide(parse_graph(*graph));
    ctx.write("subdivided.json", to_json(g) + "\n");
    ctx.write("subdivided_edges.csv", edge_table(g));
    *ctx.out << "subdivision: " << g.vertex_count << " vertices, " << g.edges.size() << " edges\n";
    return 0;
  };
}

void add_local_stats(CLI::App& app, Registry& registry) {
  auto* sub = app.add_subcommand("local-stats", "Empirical distribution of rooted labelled balls");
  auto schreier = std::make_shared<std::string>("torus:10x10");
  auto compare = std::make_shared<std::string>();
  auto radius = std::make_shared<std::size_t>(2);
  sub->add_option("--schreier", *schreier, "Schreier graph spec");
  sub->add_option("--compare", *compare, "Second Schreier graph spec for a ball distance");
  sub->add_option("--radius", *radius, "Ball radius");
  registry[sub] = [schreier, compare, radius](RunContext& ctx) {
    Rng rng(ctx.seed);
    const auto g = parse_schreier(*schreier, rng);
    const auto stats = local_statistics(g, *radius);
    Table t({"ball", "count", "probability"});
    for (const auto& [code, count] : stats.counts) t.add(code, count, stats.probability(code));
    ctx.write("local_stats.csv", t.str());
    nlohmann::json summary;
    summary["radius"] = *radius;
    summary["vertices"] = g.vertex_count();
    summary["distinct_balls"] = stats.counts.size();
    summary["tree_like_fraction"] = tree_like_fraction(g, *radius);
    if (!compare->empty()) {
      Rng other_rng = rng.split(1);
      const auto h = parse_schreier(*compare, other_rng);
      summary["ball_distance"] = ball_distance(stats, local_statistics(h, *radius));
    }
    ctx.write("local_stats.json", summary.dump(2) + "\n");
    *ctx.out << stats.counts.size() << " distinct balls of radius " << *radius << '\n';
    return 0;
  };
}

void add_traces(CLI::App& app, Registry& registry) {
  auto* sub = app.add_subcommand("traces", "Normalized traces on approximants vs the limit trace");
  auto group = std::make_shared<std::string>("Z");
  auto word = std::make_shared<std::string>("sSsS");
  auto sizes = std::make_shared<std::string>("2..20");
  auto samples = std::make_shared<std::size_t>(1);
  sub->add_option("--group", *group, "Limit group: Z, Z^d, Zd, F2, Fk");
  sub->add_option("--word", *word, "Group ring element, e.g. sSsS or 2 - s - S");
  sub->add_option("--n", *sizes, "Sizes a..b or a,b,c");
  sub->add_option("--samples", *samples, "Random graphs per size (free groups)");
  registry[sub] = [group, word, sizes, samples](RunContext& ctx) {
    const auto g = LimitGroup::parse(*group);
    const auto a = GroupRingElement::parse(*word);
    const double limit = limit_trace(a, g);
    const auto ns = parse_size_list(*sizes);
    std::vector<double> traces(ns.size());
    const Rng base(ctx.seed);
    parallel_for(ns.size(), ctx.jobs, [&](std::size_t i) {
      double sum = 0;
      for (std::size_t s = 0; s < *samples; ++s) {
        Rng rng = base.split(i * 1'000'003 + s);
        sum += schreier_trace(a, approximant(g, ns[i], rng));
      }
      traces[i] = sum / static_cast<double>(*samples);
    });
    Table t({"n", "trace", "limit", "abs_diff"});
    for (std::size_t i = 0; i < ns.size(); ++i) {
      t.add(ns[i], traces[i], limit, std::abs(traces[i] - limit));
    }
    ctx.write("traces.csv", t.str());
    *ctx.out << "limit trace of " << a.to_string() << " over " << g.name() << ": "
             << format_double(limit) << '\n';
    return 0;
  };
}

void add_lueck(CLI::App& app, Registry& registry) {
  auto* sub = app.add_subcommand("lueck", "Kernel fractions of an integer group ring element");
  auto group = std::make_shared<std::string>("Z");
  auto element = std::make_shared<std::string>("2 - s - S");
  auto sizes = std::make_shared<std::string>("10..20");
  auto samples = std::make_shared<std::size_t>(1);
  auto tol = std::make_shared<double>(1e-9);
  sub->add_option("--group", *group, "Limit group: Z, Z^d, F2, ...");
  sub->add_option("--a", *element, "Group ring element with integer coefficients");
  sub->add_option("--n", *sizes, "Sizes a..b or a,b,c");
  sub->add_option("--samples", *samples, "Random graphs per size (free groups)");
  sub->add_option("--tol", *tol, "Relative singular value cutoff");
  registry[sub] = [group, element, sizes, samples, tol](RunContext& ctx) {
    const auto g = LimitGroup::parse(*group);
    const auto a = GroupRingElement::parse(*element);
    const auto ns = parse_size_list(*sizes);
    std::vector<double> fractions(ns.size());
    const Rng base(ctx.seed);
    parallel_for(ns.size(), ctx.jobs, [&](std::size_t i) {
      double sum = 0;
      for (std::size_t s = 0; s < *samples; ++s) {
        Rng rng = base.split(i * 1'000'003 + s);
        sum += kernel_fraction(a, approximant(g, ns[i], rng), *tol);
      }
      fractions[i] = sum / static_cast<double>(*samples);
    });
    Table t({"n", "kernel_fraction"});
    for (std::size_t i = 0; i < ns.size(); ++i) t.add(ns[i], fractions[i]);
    ctx.write("lueck.csv", t.str());
    *ctx.out << "kernel fractions of " << a.to_string() << " for " << ns.size() << " sizes\n";
    return 0;
  };
}

void add_spectral(CLI::App& app, Registry& registry) {
  auto* sub = app.add_subcommand("spectral", "Spectral measure of a self-adjoint element");
  auto element = std::make_shared<std::string>("s + S");
  auto schreier = std::make_shared<std::string>("torus:20");
  sub->add_option("--a", *element, "Self-adjoint group ring element");
  sub->add_option("--schreier", *schreier, "Schreier graph spec");
  registry[sub] = [element, schreier](RunContext& ctx) {
    Rng rng(ctx.seed);
    const auto g = parse_schreier(*schreier, rng);
    const auto a = GroupRingElement::parse(*element);
    const auto op = represent(a, g);
    const auto mu = spectral_measure(op.entries);
    Table t({"eigenvalue", "weight"});
    for (const auto& [lambda, w] : mu.atoms) t.add(lambda, w);
    ctx.write("spectral.csv", t.str());
    Table m({"k", "moment"});
    for (int k = 0; k <= 8; ++k) m.add(static_cast<std::size_t>(k), mu.moment(k));
    ctx.write("spectral_moments.csv", m.str());
    *ctx.out << mu.atoms.size() << " distinct eigenvalues\n";
    return 0;
  };
}

}  // namespace

void register_graph_commands(CLI::App& app, Registry& registry) {
  add_torus(app, registry);
  add_schreier_random(app, registry);
  add_label(app, registry);
  add_subdivide(app, registry);
  add_local_stats(app, registry);
  add_traces(app, registry);
  add_lueck(app, registry);
  add_spectral(app, registry);
}

}  // namespace sofic::cli
