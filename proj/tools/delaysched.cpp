#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "delaysched/cycles.hpp"
#include "delaysched/io.hpp"
#include "delaysched/network.hpp"
#include "delaysched/periodic_graph.hpp"
#include "delaysched/rate_region.hpp"
#include "delaysched/schedule.hpp"
#include "delaysched/scheduling_graph.hpp"

using namespace delaysched;

namespace {

constexpr int kInputError = 2;
constexpr int kTruncated = 3;

struct Common {
  std::string network_path;
  bool strict = false;
  bool timing = false;
  double budget = 0;
  std::size_t threads = 1;
};

std::string read_text(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Accepts a bare network or any output document that embeds one.
Network load_network(const std::string& path) {
  const Json doc = parse_json(read_text(path), path.empty() ? "standard input" : path);
  if (doc.is_object() && doc.contains("network") && doc.at("network").is_object()) {
    return network_from_json(doc.at("network"));
  }
  return network_from_json(doc);
}

Budget make_budget(const Common& c) { return c.budget > 0 ? Budget::seconds(c.budget) : Budget(); }

class Runner {
 public:
  Runner(std::string command, const Common& common) : command_(std::move(command)), common_(common) {}

  Json& parameters() { return parameters_; }
  void set_network(const Network& n) { fingerprint_ = fingerprint(n); }
  void set_complete(bool c) { complete_ = complete_ && c; }

  int emit(Json body) const {
    Json manifest;
    manifest["command"] = command_;
    manifest["parameters"] = parameters_.is_null() ? Json::object() : parameters_;
    if (fingerprint_) manifest["network_fingerprint"] = *fingerprint_;
    manifest["complete"] = complete_;
    if (common_.timing) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
      manifest["wall_time_seconds"] = elapsed.count();
    }
    body["manifest"] = std::move(manifest);
    std::cout << body.dump(2) << '\n';
    return (!complete_ && common_.strict) ? kTruncated : 0;
  }

 private:
  std::string command_;
  const Common& common_;
  Json parameters_;
  std::optional<std::string> fingerprint_;
  bool complete_ = true;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Json rates_with_weights(const std::vector<RateVector>& generators, const std::vector<Rational>& weights) {
  Json out = Json::array();
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (weights[i] == 0) continue;
    out.push_back({{"weight", to_fraction_string(weights[i])}, {"rate", rate_to_json(generators[i])}});
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delay-aware periodic link scheduling: scheduling graphs, cycles and rate regions"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--network", common.network_path, "Network JSON file (default: standard input)");
  app.add_flag("--strict", common.strict, "Exit with status 3 when a budget truncates the result");
  app.add_flag("--timing", common.timing, "Record wall time in the manifest");
  app.add_option("--budget", common.budget, "Wall-clock budget in seconds for enumerations")->check(CLI::NonNegativeNumber);
  app.add_option("--threads", common.threads, "Worker threads for cycle search")->check(CLI::PositiveNumber);

  std::size_t line_L = 4;
  std::size_t line_K = 1;
  auto* gen_line = app.add_subcommand("gen-line", "Emit the line network with L links under the K-hop model");
  gen_line->add_option("--L", line_L, "Number of links")->required()->check(CLI::PositiveNumber);
  gen_line->add_option("--K", line_K, "Interference range in hops")->required();

  auto* character_cmd = app.add_subcommand("character", "Largest absolute delay over the collision support");

  std::string assignment;
  auto* reduce_cmd = app.add_subcommand("reduce", "Apply a vertex assignment, then divide delays by their GCD");
  reduce_cmd->add_option("--assignment", assignment, "Comma-separated per-link shifts (default all zero)");

  std::size_t T = 1;
  bool maximal_flag = false;
  bool dump = false;
  auto* schedgraph = app.add_subcommand("schedgraph", "Size of the scheduling graph for window length T");
  schedgraph->add_option("--T", T, "Window length")->required()->check(CLI::PositiveNumber);
  schedgraph->add_flag("--maximal", maximal_flag, "Report the maximal-edge structure instead");
  schedgraph->add_flag("--dump", dump, "Include vertices and adjacency");

  std::string algorithm = "incremental";
  std::optional<std::size_t> max_length;
  auto* cycles_cmd = app.add_subcommand("cycles", "Enumerate cycles of the scheduling graph");
  auto* region_cmd = app.add_subcommand("rate-region", "Rate-region generators from cycles");
  for (auto* sub : {cycles_cmd, region_cmd}) {
    sub->add_option("--T", T, "Window length")->required()->check(CLI::PositiveNumber);
    sub->add_option("--algorithm", algorithm, "johnson | incremental | maximal-subgraph")
        ->check(CLI::IsMember({"johnson", "incremental", "maximal-subgraph"}));
    sub->add_option("--max-length", max_length, "Longest cycle length to consider");
  }

  auto* framed_cmd = app.add_subcommand("framed-region", "Region of framed scheduling");

  std::string schedule_path;
  auto* verify_cmd = app.add_subcommand("verify-schedule", "Check a periodic schedule for collisions");
  verify_cmd->add_option("--schedule", schedule_path, "Schedule JSON file")->required();

  std::string region_path;
  std::string rate_text;
  auto* achievable_cmd = app.add_subcommand("achievable", "Whether a rate vector lies in a region");
  achievable_cmd->add_option("--region", region_path, "Region JSON file (default: standard input)");
  achievable_cmd->add_option("--rate", rate_text, "Comma-separated rates such as 1/2,1/2")->required();

  std::vector<std::size_t> window_T;
  auto* window_cmd = app.add_subcommand("window-rate", "Symmetric rate of the window region for each T");
  window_cmd->add_option("--T", window_T, "One or more window lengths")->required()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*gen_line) {
      Runner run("gen-line", common);
      run.parameters() = {{"L", line_L}, {"K", line_K}};
      const Network n = make_line_network(line_L, line_K);
      run.set_network(n);
      return run.emit(network_to_json(n));
    }

    if (*character_cmd) {
      Runner run("character", common);
      const Network n = load_network(common.network_path);
      run.set_network(n);
      return run.emit({{"character", character(n)}, {"binary", is_binary(n)}});
    }

    if (*reduce_cmd) {
      Runner run("reduce", common);
      const Network n = load_network(common.network_path);
      run.set_network(n);
      VertexAssignment b(n.link_count(), 0);
      if (!assignment.empty()) {
        std::vector<std::int64_t> values;
        std::stringstream in(assignment);
        std::string item;
        while (std::getline(in, item, ',')) {
          try {
            std::size_t used = 0;
            values.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
          } catch (const std::exception&) {
            throw InputError("bad assignment entry '" + item + "'");
          }
        }
        if (values.size() != n.link_count()) {
          throw InputError("assignment has " + std::to_string(values.size()) + " entries for " +
                           std::to_string(n.link_count()) + " links");
        }
        b = values;
      }
      run.parameters() = {{"assignment", b}};
      const Network shifted = apply_vertex_assignment(n, b);
      const GcdReduction reduced = gcd_reduce(shifted);
      return run.emit({{"g", reduced.g},
                       {"character_before", character(n)},
                       {"character_after", character(reduced.network)},
                       {"network", network_to_json(reduced.network)}});
    }

    if (*schedgraph) {
      Runner run("schedgraph", common);
      const Network n = load_network(common.network_path);
      run.set_network(n);
      run.parameters() = {{"T", T}, {"maximal", maximal_flag}, {"dump", dump}};
      Json body;
      body["T"] = T;
      if (maximal_flag) {
        const MaximalEdgeGraph g = build_maximal(n, T, make_budget(common));
        run.set_complete(g.complete);
        body["left"] = g.left.size();
        body["right"] = g.right.size();
        body["edges"] = g.edges.size();
        if (dump) {
          Json left = Json::array();
          Json right = Json::array();
          Json edges = Json::array();
          for (const auto& v : g.left) left.push_back(block_to_json(v));
          for (const auto& v : g.right) right.push_back(block_to_json(v));
          for (const auto& [a, b] : g.edges) edges.push_back({block_to_json(a), block_to_json(b)});
          body["left_vertices"] = std::move(left);
          body["right_vertices"] = std::move(right);
          body["edge_list"] = std::move(edges);
        }
      } else {
        const SchedulingGraph g = build_scheduling_graph(n, T);
        body["vertices"] = g.vertices.size();
        body["edges"] = g.edge_count();
        if (dump) {
          Json vertices = Json::array();
          for (const auto& v : g.vertices) vertices.push_back(block_to_json(v));
          body["vertex_list"] = std::move(vertices);
          body["adjacency"] = g.successors;
        }
      }
      return run.emit(std::move(body));
    }

    if (*cycles_cmd || *region_cmd) {
      const bool region = region_cmd->parsed();
      Runner run(region ? "rate-region" : "cycles", common);
      const Network n = load_network(common.network_path);
      run.set_network(n);
      CycleRegionOptions options;
      options.algorithm = algorithm;
      options.T = T;
      options.max_length = max_length;
      options.budget = make_budget(common);
      options.threads = common.threads;
      run.parameters() = {{"T", T},
                          {"algorithm", algorithm},
                          {"max_length", max_length ? Json(*max_length) : Json(nullptr)},
                          {"budget", common.budget},
                          {"threads", common.threads}};
      if (region) {
        RegionDescription r = cycle_region(n, options);
        run.set_complete(r.provenance.complete);
        return run.emit(region_to_json(r, n.links));
      }
      const CycleSearch search = find_cycles(n, options);
      run.set_complete(search.complete);
      Json list = Json::array();
      for (const auto& c : search.cycles) {
        list.push_back({{"length", c.length()}, {"blocks", cycle_to_json(c)}, {"rate", rate_to_json(rate_of_cycle(c))}});
      }
      Json stats = Json::array();
      for (const auto& s : search.stats) stats.push_back({{"k", s.k}, {"paths", s.paths}, {"cycles", s.cycles}});
      Json body;
      body["links"] = n.links;
      body["count"] = search.cycles.size();
      body["complete"] = search.complete;
      if (!search.stats.empty()) body["stats"] = std::move(stats);
      body["cycles"] = std::move(list);
      return run.emit(std::move(body));
    }

    if (*framed_cmd) {
      Runner run("framed-region", common);
      const Network n = load_network(common.network_path);
      run.set_network(n);
      const RegionDescription r = framed_region(n);
      run.set_complete(r.provenance.complete);
      return run.emit(region_to_json(r, n.links));
    }

    if (*verify_cmd) {
      Runner run("verify-schedule", common);
      const Network n = load_network(common.network_path);
      run.set_network(n);
      run.parameters() = {{"schedule", schedule_path}};
      const PeriodicSchedule s = schedule_from_json(parse_json(read_text(schedule_path), schedule_path), n);
      Json collisions = Json::array();
      for (const auto& c : find_collisions(n, s)) {
        Json subset = Json::array();
        for (LinkIndex l : c.subset) subset.push_back(n.links[l]);
        collisions.push_back({{"link", n.links[c.link]}, {"time", c.time}, {"subset", subset}});
      }
      Json body;
      body["collision_free"] = collisions.empty();
      body["period"] = s.period();
      body["collisions"] = std::move(collisions);
      body["rate"] = rate_to_json(rate_vector(n, s));
      body["schedule"] = schedule_to_json(s, n);
      return run.emit(std::move(body));
    }

    if (*achievable_cmd) {
      Runner run("achievable", common);
      const Json doc = parse_json(read_text(region_path), region_path.empty() ? "standard input" : region_path);
      const RegionDescription r = region_from_json(doc);
      RateVector rate;
      try {
        rate = RateVector::parse(rate_text);
      } catch (const std::exception& e) {
        throw InputError(std::string("bad --rate: ") + e.what());
      }
      if (r.dimension() != 0 && rate.size() != r.dimension()) {
        throw InputError("rate has " + std::to_string(rate.size()) + " entries, region has " +
                         std::to_string(r.dimension()));
      }
      run.parameters() = {{"region", region_path}, {"rate", rate_to_json(rate)}};
      const auto weights = achieving_weights(r.generators, rate);
      Json body;
      body["achievable"] = weights.has_value();
      if (weights) body["combination"] = rates_with_weights(r.generators, *weights);
      return run.emit(std::move(body));
    }

    if (*window_cmd) {
      Runner run("window-rate", common);
      const Network n = load_network(common.network_path);
      run.set_network(n);
      run.parameters() = {{"T", window_T}};
      Json rates = Json::array();
      for (std::size_t t : window_T) {
        rates.push_back({{"T", t}, {"rate", to_fraction_string(window_symmetric_rate(n, t))}});
      }
      return run.emit({{"rates", rates}});
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const ModelError& e) {
    std::cerr << "network error: " << e.what() << '\n';
    return kInputError;
  } catch (const ScheduleError& e) {
    std::cerr << "schedule error: " << e.what() << '\n';
    return kInputError;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kInputError;
  } catch (const std::length_error& e) {
    std::cerr << "too large: " << e.what() << '\n';
    return kInputError;
  }
  return 0;
}
