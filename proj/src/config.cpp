#include "degenfront/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "degenfront/error.hpp"

namespace degenfront {

using nlohmann::json;

namespace {

void only_keys(const json& j, const std::string& where, std::set<std::string> allowed) {
  if (!j.is_object()) throw ConfigError("key '" + where + "' expected object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw ConfigError("unknown key '" + (where.empty() ? "" : where + ".") + it.key() + "'");
    }
  }
}

std::string path_of(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

double number(const json& j, const std::string& where, const std::string& key, double lo,
              double hi, bool lo_open, bool hi_open, const std::string& range) {
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError("key '" + path_of(where, key) + "' expected number");
  const double x = v.get<double>();
  const bool ok = std::isfinite(x) && (lo_open ? x > lo : x >= lo) && (hi_open ? x < hi : x <= hi);
  if (!ok) throw ConfigError("key '" + path_of(where, key) + "' out of range " + range);
  return x;
}

std::size_t count(const json& j, const std::string& where, const std::string& key,
                  std::size_t lo, std::size_t hi) {
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError("key '" + path_of(where, key) + "' expected nonnegative integer");
  }
  const auto x = v.get<unsigned long long>();
  if (x < lo || x > hi) {
    throw ConfigError("key '" + path_of(where, key) + "' out of range [" + std::to_string(lo) +
                      ", " + std::to_string(hi) + "]");
  }
  return static_cast<std::size_t>(x);
}

std::vector<double> coefficient_list(const json& j, const std::string& where) {
  only_keys(j, where, {"coefficients"});
  if (!j.contains("coefficients") || !j.at("coefficients").is_array() ||
      j.at("coefficients").empty()) {
    throw ConfigError("key '" + where + ".coefficients' expected nonempty number list");
  }
  std::vector<double> c;
  for (const auto& v : j.at("coefficients")) {
    if (!v.is_number()) throw ConfigError("key '" + where + ".coefficients' expected number list");
    c.push_back(v.get<double>());
  }
  if (static_cast<int>(c.size()) > kMaxKineticsDegree + 1) {
    throw ConfigError("key '" + where + ".coefficients' exceeds degree " +
                      std::to_string(kMaxKineticsDegree));
  }
  return c;
}

DiffusionSpec parse_diffusion(const json& j) {
  only_keys(j, "diffusion", {"quadratic", "polynomial"});
  if (j.size() != 1) throw ConfigError("key 'diffusion' expected exactly one of quadratic, polynomial");
  if (j.contains("quadratic")) {
    const json& q = j.at("quadratic");
    only_keys(q, "diffusion.quadratic", {"b"});
    if (!q.contains("b")) throw ConfigError("key 'diffusion.quadratic.b' is required");
    return QuadraticDiffusion{number(q, "diffusion.quadratic", "b", 0.0, 1e12, true, false,
                                     "(0, 1e12]")};
  }
  return CustomPolynomial{coefficient_list(j.at("polynomial"), "diffusion.polynomial")};
}

ReactionSpec parse_reaction(const json& j) {
  only_keys(j, "reaction", {"cubic", "polynomial"});
  if (j.size() != 1) throw ConfigError("key 'reaction' expected \"auto\" or one of cubic, polynomial");
  if (j.contains("cubic")) {
    const json& c = j.at("cubic");
    only_keys(c, "reaction.cubic", {"alpha"});
    if (!c.contains("alpha") || !c.at("alpha").is_number()) {
      throw ConfigError("key 'reaction.cubic.alpha' expected number");
    }
    const double a = c.at("alpha").get<double>();
    if (!(a > 0.0 && a < 1.0)) throw ConfigError("alpha out of (0,1)");
    return CubicReaction{a};
  }
  return CustomPolynomial{coefficient_list(j.at("polynomial"), "reaction.polynomial")};
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  only_keys(j, "", {"diffusion", "reaction", "grid", "spectral", "evolution", "output", "seed",
                    "profile"});
  RunConfig c;

  if (j.contains("diffusion")) {
    const DiffusionSpec diff = parse_diffusion(j.at("diffusion"));
    const json reaction = j.value("reaction", json("auto"));
    if (reaction.is_string()) {
      if (reaction.get<std::string>() != "auto") {
        throw ConfigError("key 'reaction' expected \"auto\" or object");
      }
      c.alpha_auto = true;
      c.kinetics = KineticsPair(diff, CubicReaction{balance_alpha(diff)});
    } else {
      c.kinetics = KineticsPair(diff, parse_reaction(reaction));
    }
  } else if (j.contains("reaction")) {
    if (j.at("reaction").is_object()) parse_reaction(j.at("reaction"));
    throw ConfigError("key 'reaction' requires key 'diffusion'");
  }

  if (j.contains("grid")) {
    const json& g = j.at("grid");
    only_keys(g, "grid", {"n_nodes", "left_tol", "right_pad", "phi_at_zero"});
    if (g.contains("n_nodes")) c.grid.n_nodes = count(g, "grid", "n_nodes", 16, 200001);
    if (g.contains("left_tol")) {
      c.grid.left_tol = number(g, "grid", "left_tol", 0.0, 1e-2, true, false, "(0, 1e-2]");
    }
    if (g.contains("right_pad")) {
      c.grid.right_pad = number(g, "grid", "right_pad", 0.0, 10.0, true, false, "(0, 10]");
    }
    if (g.contains("phi_at_zero")) {
      c.grid.phi_at_zero = number(g, "grid", "phi_at_zero", 0.0, 1.0, true, true, "(0, 1)");
    }
  }

  if (j.contains("spectral")) {
    const json& s = j.at("spectral");
    only_keys(s, "spectral", {"epsilons", "n_refinements", "n_nodes", "sweep_n_nodes"});
    if (s.contains("epsilons")) {
      const json& e = s.at("epsilons");
      if (!e.is_array()) throw ConfigError("key 'spectral.epsilons' expected number list");
      c.spectral.epsilons.clear();
      for (const auto& v : e) {
        if (!v.is_number() || !(v.get<double>() > 0.0)) {
          throw ConfigError("key 'spectral.epsilons' expected positive numbers");
        }
        c.spectral.epsilons.push_back(v.get<double>());
      }
      for (std::size_t i = 1; i < c.spectral.epsilons.size(); ++i) {
        if (!(c.spectral.epsilons[i] < c.spectral.epsilons[i - 1])) {
          throw ConfigError("key 'spectral.epsilons' must be sorted descending");
        }
      }
    }
    if (s.contains("n_refinements")) {
      c.spectral.n_refinements = static_cast<int>(count(s, "spectral", "n_refinements", 3, 3));
    }
    if (s.contains("n_nodes")) c.spectral.n_nodes = count(s, "spectral", "n_nodes", 16, 6001);
    if (s.contains("sweep_n_nodes")) {
      c.spectral.sweep_n_nodes = count(s, "spectral", "sweep_n_nodes", 16, 6001);
    }
  }

  if (j.contains("evolution")) {
    const json& e = j.at("evolution");
    only_keys(e, "evolution", {"dt", "t_end", "theta", "t_burn", "nonlinear_t_end", "track_every",
                               "snapshot_every", "initial"});
    if (e.contains("dt")) c.evolution.dt = number(e, "evolution", "dt", 0.0, 10.0, true, false, "(0, 10]");
    if (e.contains("t_end")) {
      c.evolution.t_end = number(e, "evolution", "t_end", 0.0, 1e6, true, false, "(0, 1e6]");
    }
    if (e.contains("theta")) {
      c.evolution.theta = number(e, "evolution", "theta", 0.5, 1.0, false, false, "[0.5, 1]");
    }
    if (e.contains("t_burn")) {
      c.evolution.t_burn = number(e, "evolution", "t_burn", 0.0, 1e6, false, false, "[0, 1e6]");
    }
    if (e.contains("nonlinear_t_end")) {
      c.evolution.nonlinear_t_end =
          number(e, "evolution", "nonlinear_t_end", 0.0, 1e6, true, false, "(0, 1e6]");
    }
    if (e.contains("track_every")) {
      c.evolution.track_every = count(e, "evolution", "track_every", 1, 1000000);
    }
    if (e.contains("snapshot_every")) {
      c.evolution.snapshot_every = count(e, "evolution", "snapshot_every", 0, 1000000);
    }
    if (e.contains("initial")) {
      const json& ic = e.at("initial");
      const std::string w = "evolution.initial";
      only_keys(ic, w, {"kind", "amplitude", "center", "width", "shift", "bumps"});
      if (ic.contains("kind")) {
        if (!ic.at("kind").is_string()) throw ConfigError("key '" + w + ".kind' expected string");
        const auto kind = ic.at("kind").get<std::string>();
        static const std::set<std::string> kinds{"gaussian", "random", "shift", "phi_x", "zero"};
        if (!kinds.count(kind)) {
          throw ConfigError("key '" + w + ".kind' expected one of gaussian, random, shift, phi_x, zero");
        }
        c.evolution.initial.kind = kind;
      }
      if (ic.contains("amplitude")) {
        c.evolution.initial.amplitude = number(ic, w, "amplitude", 0.0, 0.2, false, false, "[0, 0.2]");
      }
      if (ic.contains("center")) {
        c.evolution.initial.center = number(ic, w, "center", -1e6, 1e6, false, false, "[-1e6, 1e6]");
      }
      if (ic.contains("width")) {
        c.evolution.initial.width = number(ic, w, "width", 0.0, 100.0, true, false, "(0, 100]");
      }
      if (ic.contains("shift")) {
        c.evolution.initial.shift = number(ic, w, "shift", -2.0, 2.0, false, false, "[-2, 2]");
      }
      if (ic.contains("bumps")) {
        c.evolution.initial.bumps = static_cast<int>(count(ic, w, "bumps", 1, 100));
      }
    }
  }

  if (j.contains("output")) {
    if (!j.at("output").is_string()) throw ConfigError("key 'output' expected string");
    c.output = j.at("output").get<std::string>();
  }
  if (j.contains("seed")) {
    const json& s = j.at("seed");
    if (!s.is_number_integer() || s.get<long long>() < 0) {
      throw ConfigError("key 'seed' expected nonnegative integer");
    }
    c.seed = s.get<std::uint64_t>();
  }
  if (j.contains("profile")) {
    if (!j.at("profile").is_string()) throw ConfigError("key 'profile' expected string");
    c.profile_path = j.at("profile").get<std::string>();
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot read config " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return parse_config(os.str());
}

json kinetics_to_json(const KineticsPair& k) {
  json j;
  if (const auto* q = std::get_if<QuadraticDiffusion>(&k.diffusion_spec())) {
    j["diffusion"] = {{"quadratic", {{"b", q->b}}}};
  } else {
    j["diffusion"] = {
        {"polynomial", {{"coefficients", std::get<CustomPolynomial>(k.diffusion_spec()).coefficients}}}};
  }
  if (const auto* c = std::get_if<CubicReaction>(&k.reaction_spec())) {
    j["reaction"] = {{"cubic", {{"alpha", c->alpha}}}};
  } else {
    j["reaction"] = {
        {"polynomial", {{"coefficients", std::get<CustomPolynomial>(k.reaction_spec()).coefficients}}}};
  }
  return j;
}

KineticsPair kinetics_from_json(const json& j) {
  only_keys(j, "kinetics", {"diffusion", "reaction"});
  if (!j.contains("diffusion") || !j.contains("reaction")) {
    throw ConfigError("key 'kinetics' expected diffusion and reaction");
  }
  return KineticsPair(parse_diffusion(j.at("diffusion")), parse_reaction(j.at("reaction")));
}

json config_to_json(const RunConfig& c) {
  json j;
  j["kinetics"] = c.kinetics ? kinetics_to_json(*c.kinetics) : json(nullptr);
  j["alpha_auto"] = c.alpha_auto;
  j["grid"] = {{"n_nodes", c.grid.n_nodes},
               {"left_tol", c.grid.left_tol},
               {"right_pad", c.grid.right_pad},
               {"phi_at_zero", c.grid.phi_at_zero}};
  j["spectral"] = {{"epsilons", c.spectral.epsilons},
                   {"n_refinements", c.spectral.n_refinements},
                   {"n_nodes", c.spectral.n_nodes ? json(*c.spectral.n_nodes) : json(nullptr)},
                   {"sweep_n_nodes", c.spectral.sweep_n_nodes}};
  const auto& e = c.evolution;
  j["evolution"] = {{"dt", e.dt},
                    {"t_end", e.t_end ? json(*e.t_end) : json(nullptr)},
                    {"theta", e.theta},
                    {"t_burn", e.t_burn},
                    {"nonlinear_t_end", e.nonlinear_t_end},
                    {"track_every", e.track_every},
                    {"snapshot_every", e.snapshot_every},
                    {"initial",
                     {{"kind", e.initial.kind},
                      {"amplitude", e.initial.amplitude},
                      {"center", e.initial.center},
                      {"width", e.initial.width},
                      {"shift", e.initial.shift},
                      {"bumps", e.initial.bumps}}}};
  j["seed"] = c.seed;
  j["profile"] = c.profile_path ? json(*c.profile_path) : json(nullptr);
  return j;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace degenfront
