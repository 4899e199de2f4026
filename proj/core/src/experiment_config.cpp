#include "kreg/experiment_config.hpp"

#include "kreg/errors.hpp"
#include "kreg/rng.hpp"

#include <algorithm>
#include <set>

namespace kreg {

using nlohmann::json;

std::vector<std::size_t> default_schedule() { return {4, 8, 16, 32, 64, 128, 256, 512}; }

namespace {

// Non-negative integer, whether the json value is stored signed or unsigned.
bool is_count(const json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

void allow_keys(const json& obj, const char* where, std::initializer_list<const char*> keys) {
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
      throw ConfigError(std::string("unknown key \"") + key + "\" in " + where);
    }
  }
}

const json& require(const json& obj, const char* key, const char* where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(std::string("missing \"") + key + "\" in " + where);
  return *it;
}

double number(const json& value, const std::string& what) {
  if (!value.is_number()) throw ConfigError(what + " must be a number");
  return value.get<double>();
}

PointSet point_list(const json& value, std::size_t dim, const std::string& what) {
  if (!value.is_array()) throw ConfigError(what + " must be an array of points");
  PointSet points(static_cast<Eigen::Index>(value.size()), static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < value.size(); ++k) {
    const json& p = value[k];
    if (!p.is_array() || p.size() != dim) {
      throw ConfigError(what + " entries must have " + std::to_string(dim) + " coordinates");
    }
    for (std::size_t a = 0; a < dim; ++a) {
      points(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(a)) =
          number(p[a], what + " coordinate");
    }
  }
  return points;
}

json point_list_json(const PointSet& points) {
  json out = json::array();
  for (Eigen::Index k = 0; k < points.rows(); ++k) {
    const PointView p = row(points, k);
    out.push_back(std::vector<double>(p.begin(), p.end()));
  }
  return out;
}

}  // namespace

ExperimentConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("experiment config must be a JSON object");
  allow_keys(doc, "config", {"name", "kernel", "domain", "sequence", "target", "n_schedule",
                             "holder", "seed", "jitter", "refine"});
  ExperimentConfig config;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ConfigError("\"name\" must be a string");
    config.name = doc["name"].get<std::string>();
  }
  config.kernel = kernel_from_json(require(doc, "kernel", "config"));
  config.domain = domain_from_json(require(doc, "domain", "config"));
  const std::size_t dim = config.domain.dim();

  const json& seq = require(doc, "sequence", "config");
  if (!seq.is_object()) throw ConfigError("\"sequence\" must be an object");
  allow_keys(seq, "sequence", {"generator", "points", "avoid_ball"});
  const json& gen = require(seq, "generator", "sequence");
  if (!gen.is_string()) throw ConfigError("sequence \"generator\" must be a string");
  const auto kind = parse_generator(gen.get<std::string>());
  if (!kind) throw ConfigError("unknown generator \"" + gen.get<std::string>() + "\"");
  config.generator = *kind;
  if (config.generator == GeneratorKind::ExplicitList) {
    config.explicit_points = point_list(require(seq, "points", "sequence"), dim, "sequence points");
  } else if (seq.contains("points")) {
    throw ConfigError("sequence \"points\" is only valid with the explicit generator");
  }
  if (seq.contains("avoid_ball")) {
    const json& ball = seq["avoid_ball"];
    if (!ball.is_object()) throw ConfigError("\"avoid_ball\" must be an object");
    allow_keys(ball, "avoid_ball", {"center", "radius"});
    PointSet center = point_list(json::array({require(ball, "center", "avoid_ball")}), dim,
                                 "avoid_ball center");
    AvoidBall avoid{center.row(0).transpose(), number(require(ball, "radius", "avoid_ball"),
                                                      "avoid_ball radius")};
    if (!(avoid.radius > 0.0)) throw ConfigError("avoid_ball radius must be positive");
    config.avoid_ball = std::move(avoid);
  }

  const json& target = require(doc, "target", "config");
  if (!target.is_object()) throw ConfigError("\"target\" must be an object");
  allow_keys(target, "target", {"centers", "coefficients", "random"});
  if (target.contains("random")) {
    if (target.contains("centers") || target.contains("coefficients")) {
      throw ConfigError("target is either \"random\" or explicit centers/coefficients");
    }
    const json& random = target["random"];
    if (!random.is_object()) throw ConfigError("target \"random\" must be an object");
    allow_keys(random, "target.random", {"terms", "coefficient_range"});
    const json& terms = require(random, "terms", "target.random");
    if (!is_count(terms) || terms.get<std::size_t>() == 0) {
      throw ConfigError("target.random \"terms\" must be a positive count");
    }
    config.target.random_terms = terms.get<std::size_t>();
    if (random.contains("coefficient_range")) {
      const json& range = random["coefficient_range"];
      if (!range.is_array() || range.size() != 2) {
        throw ConfigError("\"coefficient_range\" must be [low, high]");
      }
      config.target.coefficient_low = number(range[0], "coefficient_range low");
      config.target.coefficient_high = number(range[1], "coefficient_range high");
      if (!(config.target.coefficient_low < config.target.coefficient_high)) {
        throw ConfigError("\"coefficient_range\" needs low < high");
      }
    }
  } else {
    config.target.centers = point_list(require(target, "centers", "target"), dim, "target centers");
    const json& coeffs = require(target, "coefficients", "target");
    if (!coeffs.is_array() || coeffs.size() != static_cast<std::size_t>(config.target.centers.rows())) {
      throw ConfigError("target \"coefficients\" must match the number of centers");
    }
    config.target.coefficients.resize(static_cast<Eigen::Index>(coeffs.size()));
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      config.target.coefficients[static_cast<Eigen::Index>(k)] = number(coeffs[k], "target coefficient");
    }
    if (config.target.centers.rows() == 0) throw ConfigError("target needs at least one center");
    for (Eigen::Index k = 0; k < config.target.centers.rows(); ++k) {
      if (!config.domain.contains(row(config.target.centers, k))) {
        throw ConfigError("target center " + std::to_string(k) + " lies outside the domain");
      }
    }
  }

  if (doc.contains("n_schedule")) {
    const json& schedule = doc["n_schedule"];
    if (!schedule.is_array() || schedule.empty()) {
      throw ConfigError("\"n_schedule\" must be a non-empty array");
    }
    for (const json& n : schedule) {
      if (!is_count(n) || n.get<std::size_t>() == 0) {
        throw ConfigError("\"n_schedule\" entries must be positive counts");
      }
      if (!config.n_schedule.empty() && n.get<std::size_t>() <= config.n_schedule.back()) {
        throw ConfigError("\"n_schedule\" must be strictly increasing");
      }
      config.n_schedule.push_back(n.get<std::size_t>());
    }
  } else {
    config.n_schedule = default_schedule();
  }

  if (doc.contains("holder")) {
    const json& holder = doc["holder"];
    if (!holder.is_object()) throw ConfigError("\"holder\" must be an object");
    allow_keys(holder, "holder", {"source", "pairs", "alpha", "constant"});
    const std::string source = holder.value("source", std::string("estimated"));
    if (source == "estimated") {
      config.holder.source = HolderSource::Estimated;
      if (holder.contains("pairs")) {
        if (!is_count(holder["pairs"]) || holder["pairs"].get<std::size_t>() < 100) {
          throw ConfigError("holder \"pairs\" must be a count of at least 100");
        }
        config.holder.pairs = holder["pairs"].get<std::size_t>();
      }
    } else if (source == "declared") {
      config.holder.source = HolderSource::Declared;
      config.holder.alpha = holder.contains("alpha") ? number(holder["alpha"], "holder alpha")
                                                     : config.kernel.holder_exponent();
      config.holder.constant = number(require(holder, "constant", "holder"), "holder constant");
      if (!(config.holder.alpha > 0.0 && config.holder.alpha <= 1.0)) {
        throw ConfigError("declared Hölder exponent must lie in (0, 1]");
      }
      if (!(config.holder.constant > 0.0)) throw ConfigError("declared Hölder constant must be positive");
    } else {
      throw ConfigError("holder \"source\" must be \"declared\" or \"estimated\"");
    }
  }

  if (doc.contains("seed")) {
    if (!is_count(doc["seed"])) throw ConfigError("\"seed\" must be a non-negative integer");
    config.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("jitter")) {
    const json& jitter = doc["jitter"];
    if (jitter.is_string()) {
      config.jitter = parse_jitter(jitter.get<std::string>());
    } else if (jitter.is_number()) {
      const double lambda = jitter.get<double>();
      if (!(lambda >= 0.0)) throw ConfigError("\"jitter\" must be non-negative");
      config.jitter = lambda == 0.0 ? JitterPolicy::none() : JitterPolicy::fixed(lambda);
    } else {
      throw ConfigError("\"jitter\" must be \"none\", \"auto\" or a number");
    }
  }
  if (doc.contains("refine")) {
    if (!doc["refine"].is_boolean()) throw ConfigError("\"refine\" must be a boolean");
    config.refine = doc["refine"].get<bool>();
  }
  return config;
}

json config_to_json(const ExperimentConfig& config) {
  json doc;
  if (!config.name.empty()) doc["name"] = config.name;
  doc["kernel"] = kernel_to_json(config.kernel);
  doc["domain"] = domain_to_json(config.domain);
  json seq;
  seq["generator"] = std::string(generator_name(config.generator));
  if (config.generator == GeneratorKind::ExplicitList) seq["points"] = point_list_json(config.explicit_points);
  if (config.avoid_ball) {
    const Vector& c = config.avoid_ball->center;
    seq["avoid_ball"] = {{"center", std::vector<double>(c.begin(), c.end())},
                         {"radius", config.avoid_ball->radius}};
  }
  doc["sequence"] = std::move(seq);
  if (config.target.is_random()) {
    doc["target"]["random"] = {
        {"terms", config.target.random_terms},
        {"coefficient_range", {config.target.coefficient_low, config.target.coefficient_high}}};
  } else {
    doc["target"]["centers"] = point_list_json(config.target.centers);
    const Vector& c = config.target.coefficients;
    doc["target"]["coefficients"] = std::vector<double>(c.begin(), c.end());
  }
  doc["n_schedule"] = config.n_schedule;
  if (config.holder.source == HolderSource::Estimated) {
    doc["holder"] = {{"source", "estimated"}, {"pairs", config.holder.pairs}};
  } else {
    doc["holder"] = {{"source", "declared"}, {"alpha", config.holder.alpha},
                     {"constant", config.holder.constant}};
  }
  doc["seed"] = config.seed;
  if (config.jitter.mode == JitterPolicy::Mode::Fixed) {
    doc["jitter"] = config.jitter.lambda;
  } else {
    doc["jitter"] = to_string(config.jitter);
  }
  doc["refine"] = config.refine;
  return doc;
}

ResolvedSeeds resolve_seeds(std::uint64_t master) {
  return {master, derive_seed(master, streams::kSequence), derive_seed(master, streams::kTarget),
          derive_seed(master, streams::kHolder)};
}

KernelCombination build_target(const ExperimentConfig& config, const ResolvedSeeds& seeds) {
  if (!config.target.is_random()) {
    return {config.kernel, config.target.centers, config.target.coefficients};
  }
  const std::size_t m = config.target.random_terms;
  const Domain& domain = config.domain;
  const auto d = static_cast<Eigen::Index>(domain.dim());
  const Vector extent = domain.upper() - domain.lower();
  Rng rng(seeds.target);
  PointSet centers(static_cast<Eigen::Index>(m), d);
  Vector coefficients(static_cast<Eigen::Index>(m));
  for (std::size_t k = 0; k < m;) {
    Vector p(d);
    for (Eigen::Index a = 0; a < d; ++a) p[a] = domain.lower()[a] + rng.uniform() * extent[a];
    bool fresh = true;
    for (std::size_t j = 0; j < k && fresh; ++j) {
      fresh = distance(view(p), row(centers, static_cast<Eigen::Index>(j))) > kDuplicateThreshold;
    }
    if (!fresh) continue;
    centers.row(static_cast<Eigen::Index>(k)) = p.transpose();
    ++k;
  }
  for (std::size_t k = 0; k < m; ++k) {
    coefficients[static_cast<Eigen::Index>(k)] =
        rng.uniform(config.target.coefficient_low, config.target.coefficient_high);
  }
  return {config.kernel, std::move(centers), std::move(coefficients)};
}

}  // namespace kreg
