#include "cli.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "perstopy/gromov_hausdorff.hpp"
#include "perstopy/homology.hpp"
#include "perstopy/interleaving.hpp"
#include "perstopy/json_io.hpp"
#include "perstopy/loops.hpp"
#include "perstopy/persistent_pi1.hpp"
#include "suite.hpp"

namespace perstopy::cli {

using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_file(path, text);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

double budget_from(const std::optional<double>& flag) {
  if (flag) {
    if (!(*flag > 0)) throw UsageError("--budget must be positive");
    return *flag;
  }
  if (const char* env = std::getenv("PERSTOPY_BUDGET")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0)) throw UsageError(std::string("invalid PERSTOPY_BUDGET value '") + env + "'");
    return v;
  }
  return kDefaultGHBudget;
}

FiniteMetricSpace generate_space(const std::string& family, int n, std::uint64_t seed) {
  if (family == "cycle") return cycle_graph(n);
  if (family == "star") return star_graph(n).space;
  if (family == "circle") return circle_sample(n);
  if (family == "uniform") return uniform_space(n);
  if (family == "tree") return random_tree_metric(n, seed);
  if (family == "tree-rational") return random_tree_metric(n, seed, TreeWeights::RandomRational);
  if (family == "random") return random_metric(n, seed);
  throw UsageError("unknown family '" + family + "'");
}

std::string summary(const PersistentPi1& pp) {
  auto g = as_interval_group(pp);
  if (!g) return "not a single interval group";
  if (g->group.tag == GroupTag::Trivial) return "0";
  return g->group.to_string() + " on [" + format_number(g->left) + "," + format_number(g->right) + ")";
}

json bounds_json(const GHBoundsReport& b) {
  json j{{"diam_bound", number_json(b.diam_bound)},
         {"radius_bound", number_json(b.radius_bound)},
         {"mu0_bound", number_json(b.mu0_bound)},
         {"bottleneck0_bound", number_json(b.bottleneck0_bound)},
         {"bottleneck1_bound", number_json(b.bottleneck1_bound)},
         {"pi1_interleaving_bound_pointed", number_json(b.pi1_interleaving_bound)},
         {"flags", b.flags}};
  if (b.exact) j["exact"] = number_json(*b.exact);
  if (b.exact_pointed) j["exact_pointed"] = number_json(*b.exact_pointed);
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Persistent fundamental groups, loop spaces and Gromov-Hausdorff bounds for finite metric spaces",
               "perstopy"};
  app.require_subcommand(1);

  std::string output;

  auto* gen = app.add_subcommand("generate", "Write a metric space from a named family as JSON");
  std::string family;
  int gen_n = 0;
  std::uint64_t seed = 0;
  std::optional<std::size_t> gen_base;
  gen->add_option("family", family, "cycle, star, circle, uniform, tree, tree-rational or random")->required();
  gen->add_option("n", gen_n, "number of points")->required();
  gen->add_option("--seed", seed, "seed for random families")->capture_default_str();
  gen->add_option("--basepoint", gen_base, "basepoint index written to the file");
  gen->add_option("-o,--output", output, "output file (default stdout)");

  auto* pi1 = app.add_subcommand("pi1", "Persistent fundamental group of the Vietoris-Rips filtration");
  std::string in_x, in_y;
  std::optional<double> scale;
  bool all = false;
  int effort = kDefaultTietzeEffort;
  pi1->add_option("space", in_x, "metric JSON")->required();
  auto* scale_opt = pi1->add_option("--scale", scale, "single scale");
  pi1->add_flag("--all", all, "every candidate scale (default)")->excludes(scale_opt);
  pi1->add_option("--effort", effort, "simplification budget per level")->capture_default_str();
  pi1->add_option("-o,--output", output, "output file (default stdout)");

  auto* bar = app.add_subcommand("barcode", "Persistence diagram in degree 0 or 1 as CSV");
  int dim = 1;
  bar->add_option("space", in_x, "metric JSON")->required();
  bar->add_option("--dim", dim, "homological degree")->check(CLI::IsMember({0, 1}))->required();
  bar->add_option("-o,--output", output, "output file (default stdout)");

  auto* loops = app.add_subcommand("loops", "Loop classes, generalized subdendrogram and mu1 matrix");
  std::size_t max_size = 0;
  std::string sub_out, mu1_out;
  loops->add_option("space", in_x, "metric JSON")->required();
  loops->add_option("--max-size", max_size, "largest loop size enumerated")->required()->check(CLI::PositiveNumber);
  loops->add_option("--subdendrogram", sub_out, "write the subdendrogram JSON here");
  loops->add_option("--mu1-matrix", mu1_out, "write the mu1 matrix CSV here");
  loops->add_option("-o,--output", output, "output file (default stdout)");

  auto* mu0 = app.add_subcommand("mu0", "Single-linkage ultrametric and its dendrogram");
  mu0->add_option("space", in_x, "metric JSON")->required();
  mu0->add_option("-o,--output", output, "output file (default stdout)");

  auto* gh = app.add_subcommand("gh", "Gromov-Hausdorff distance and lower bounds");
  bool pointed = false, bounds_only = false;
  std::optional<double> budget;
  gh->add_option("x", in_x, "metric JSON")->required();
  gh->add_option("y", in_y, "metric JSON")->required();
  gh->add_flag("--pointed", pointed, "pointed distance (basepoints matched)");
  gh->add_option("--budget", budget, "largest map-pair count searched (default PERSTOPY_BUDGET or 1e13)");
  gh->add_flag("--bounds-only", bounds_only, "skip the exact search");
  gh->add_option("-o,--output", output, "output file (default stdout)");

  auto* dist = app.add_subcommand("distance", "Bottleneck or interval-group interleaving distance");
  std::vector<std::string> bn, il;
  auto* bn_opt = dist->add_option("--bottleneck", bn, "two diagram CSV files")->expected(2);
  auto* il_opt = dist->add_option("--interleave", il, "two interval-group JSON files")->expected(2);
  bn_opt->excludes(il_opt);
  dist->add_option("-o,--output", output, "output file (default stdout)");

  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  std::string suite = "paper";
  bool as_json = false;
  ver->add_option("--suite", suite, "paper, properties or all")
      ->check(CLI::IsMember({"paper", "properties", "all"}))
      ->capture_default_str();
  ver->add_option("--seed", seed, "seed for randomized checks")->capture_default_str();
  ver->add_flag("--json", as_json, "print the machine-readable report instead of the table");
  ver->add_option("-o,--output", output, "also write the JSON report here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (dist->parsed() && bn.empty() && il.empty()) throw CLI::RequiredError("--bottleneck or --interleave");
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      auto x = generate_space(family, gen_n, seed);
      if (gen_base && *gen_base >= x.size()) throw UsageError("--basepoint out of range");
      emit(out, output, dump(metric_to_json(x, gen_base.value_or(0))));
    } else if (pi1->parsed()) {
      auto x = read_metric(in_x);
      json j;
      if (scale) {
        if (*scale < 0) throw UsageError("--scale must be nonnegative");
        j = pi1_level_to_json(pi1_at_scale(x, *scale, effort));
      } else {
        auto pp = persistent_pi1(x, effort);
        j = persistent_pi1_to_json(pp);
        j["summary"] = summary(pp);
      }
      emit(out, output, dump(j));
    } else if (bar->parsed()) {
      auto x = read_metric(in_x);
      emit(out, output, diagram_to_csv(dim == 0 ? ph0_diagram(x.space) : ph1_diagram(x.space)));
    } else if (loops->parsed()) {
      auto x = read_metric(in_x);
      LoopSpace ls(x);
      auto g = generalized_subdendrogram(ls, max_size);
      if (!sub_out.empty()) write_file(sub_out, dump(subdendrogram_to_json(g)));
      if (!mu1_out.empty()) write_file(mu1_out, mu1_matrix_to_csv(mu1_matrix(ls, g.representatives)));
      json classes = json::array();
      for (const auto& c : g.representatives)
        classes.push_back({{"loop", c.representative.points()}, {"birth", number_json(c.birth)}, {"flagged", c.flagged}});
      emit(out, output, dump({{"max_size", max_size}, {"classes", classes}, {"flagged", g.flagged}}));
    } else if (mu0->parsed()) {
      auto x = read_metric(in_x);
      auto u = mu0_ultrametric(x.space);
      json dist = json::array();
      for (const auto& row : u.rows()) {
        json r = json::array();
        for (double v : row) r.push_back(number_json(v));
        dist.push_back(std::move(r));
      }
      emit(out, output,
           dump({{"labels", x.space.labels()}, {"dist", dist}, {"dendrogram", dendrogram_to_json(dendrogram_from_ultrametric(u))}}));
    } else if (gh->parsed()) {
      auto x = read_metric(in_x);
      auto y = read_metric(in_y);
      const double b = budget_from(budget);
      json j{{"pointed", pointed}};
      if (bounds_only) {
        j["bounds"] = bounds_json(gh_lower_bounds(x, y, b, false));
      } else {
        std::optional<std::pair<std::size_t, std::size_t>> base;
        if (pointed) base = std::pair{x.basepoint, y.basepoint};
        auto r = gh_search(x.space.matrix(), y.space.matrix(), b, base);
        auto corr = r.correspondence();
        j["distance"] = number_json(r.value);
        j["correspondence"] = corr.pairs;
        j["distortion"] = number_json(distortion(corr, x.space, y.space));
        j["bounds"] = bounds_json(gh_lower_bounds(x, y, b, false));
      }
      emit(out, output, dump(j));
    } else if (dist->parsed()) {
      double v;
      if (!bn.empty())
        v = bottleneck(diagram_from_csv(read_file(bn[0])), diagram_from_csv(read_file(bn[1])));
      else
        v = interleaving_interval_groups(interval_group_from_json(parse_json(read_file(il[0]), il[0])),
                                         interval_group_from_json(parse_json(read_file(il[1]), il[1])));
      emit(out, output, format_number(v) + "\n");
    } else if (ver->parsed()) {
      auto report = verify::run_suite(suite, seed);
      if (!output.empty()) write_file(output, dump(report.to_json()));
      out << (as_json ? dump(report.to_json()) : report.table());
      return report.all_passed() ? kExitOk : kExitDomain;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "; raise --budget or PERSTOPY_BUDGET\n";
    return kExitDomain;
  } catch (const MetricError& e) {
    err << "error: invalid metric space: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace perstopy::cli
