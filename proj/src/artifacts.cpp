#include "degenfront/artifacts.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "degenfront/config.hpp"
#include "degenfront/error.hpp"

namespace degenfront {

using nlohmann::json;
namespace fs = std::filesystem;

void write_file_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const std::string tmp = path + ".tmp" + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot open " + tmp + " for writing");
    os << content;
    os.flush();
    if (!os) {
      os.close();
      fs::remove(tmp);
      throw Error("failed writing " + tmp);
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot rename " + tmp + " to " + path + ": " + ec.message());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot read " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sidecar_path(const std::string& csv_path) {
  fs::path p(csv_path);
  p.replace_extension(".json");
  return p.string();
}

json profile_sidecar(const FrontProfile& p) {
  json j;
  j["schema"] = "degenfront.profile/1";
  j["omega0"] = p.omega0;
  j["anchor"] = {{"x", p.anchor.x}, {"phi", p.anchor.phi}};
  j["kinetics"] = kinetics_to_json(p.kinetics());
  j["grid"] = {{"n_nodes", p.size()},
               {"h", p.h},
               {"x_left", p.x.front()},
               {"x_right", p.x.back()},
               {"left_tol", p.extent.left_tol},
               {"right_pad", p.extent.right_pad}};
  j["residual_stats"] = {{"first_order_max", p.residuals.first_order},
                         {"second_order_max", p.residuals.second_order}};
  j["phi_xx_left_limit"] = p.phi_xx_left_limit;
  j["phi_xx_right_limit"] = 0.0;
  return j;
}

std::string profile_csv(const FrontProfile& p) {
  std::string out = "x,phi,phi_x,phi_xx\n";
  out.reserve(p.size() * 96);
  for (std::size_t i = 0; i < p.size(); ++i) {
    out += format_double(p.x[i]);
    out += ',';
    out += format_double(p.phi[i]);
    out += ',';
    out += format_double(p.phi_x[i]);
    out += ',';
    out += format_double(p.phi_xx[i]);
    out += '\n';
  }
  return out;
}

void write_profile_csv(const FrontProfile& p, const std::string& path) {
  write_file_atomic(path, profile_csv(p));
  write_file_atomic(sidecar_path(path), profile_sidecar(p).dump(2) + "\n");
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_number(const std::string& s, std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ConfigError("profile CSV line " + std::to_string(line) + ": malformed number '" + s + "'");
  }
  return v;
}

}  // namespace

ProfileReadResult read_profile_csv(const std::string& path) {
  const std::string text = read_file(path);
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(is, line)) throw ConfigError("profile CSV line 1: empty file");
  ++lineno;
  const auto header = split(line);
  if (header.size() != 4) throw ConfigError("schema v1 requires 4 columns");
  if (header[0] != "x" || header[1] != "phi" || header[2] != "phi_x" || header[3] != "phi_xx") {
    throw ConfigError("profile CSV line 1: expected header x,phi,phi_x,phi_xx");
  }
  std::vector<double> x, phi, px, pxx;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto f = split(line);
    if (f.size() != 4) {
      throw ConfigError("profile CSV line " + std::to_string(lineno) + ": schema v1 requires 4 columns");
    }
    x.push_back(parse_number(f[0], lineno));
    phi.push_back(parse_number(f[1], lineno));
    px.push_back(parse_number(f[2], lineno));
    pxx.push_back(parse_number(f[3], lineno));
  }

  const std::string side = sidecar_path(path);
  json j;
  try {
    j = json::parse(read_file(side));
  } catch (const json::parse_error& e) {
    throw ConfigError("profile sidecar " + side + ": " + e.what());
  }
  for (const char* key : {"omega0", "anchor", "kinetics", "grid"}) {
    if (!j.contains(key)) throw ConfigError(std::string("profile sidecar missing key '") + key + "'");
  }
  const KineticsPair k = kinetics_from_json(j.at("kinetics"));
  Anchor anchor{j.at("anchor").value("x", 0.0), j.at("anchor").value("phi", 0.5)};
  ExtentOptions ext{j.at("grid").value("left_tol", 1e-8), j.at("grid").value("right_pad", 1.0)};
  const double omega0 = j.at("omega0").get<double>();

  ProfileReadResult res{profile_from_samples(k, anchor, ext, std::move(x), std::move(phi),
                                             std::move(px), std::move(pxx), omega0),
                        false,
                        {}};
  const FrontProfile& p = res.profile;
  double last_positive = p.x.front();
  double first_zero = p.x.back();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.phi[i] > 0.0) last_positive = p.x[i];
  }
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p.phi[i] != 0.0) break;
    first_zero = p.x[i];
  }
  if (omega0 < last_positive - p.h || omega0 > first_zero + p.h) {
    res.omega0_inconsistent = true;
    res.warnings.push_back("sidecar omega0 inconsistent with the support of phi");
  }
  return res;
}

json spectrum_to_json(const SpectrumReport& r) {
  json j;
  j["schema"] = "degenfront.spectrum/1";
  j["n"] = r.n;
  j["h"] = r.h;
  j["epsilon"] = r.epsilon;
  j["scale"] = r.scale;
  j["max_imag"] = r.max_imag;
  j["zero_tolerance"] = r.zero_tolerance;
  j["lambda0"] = {r.lambda0.real(), r.lambda0.imag()};
  j["zero_mode_alignment"] = r.zero_mode_alignment;
  j["lambda1"] = {r.lambda1.real(), r.lambda1.imag()};
  j["gap"] = r.gap;
  j["mu1"] = r.mu1;
  j["beta"] = r.beta;
  j["border_max"] = r.border_max;
  j["unstable_count"] = unstable_count(r);
  json ev = json::array();
  for (const auto& l : r.eigenvalues) ev.push_back({l.real(), l.imag()});
  j["eigenvalues"] = ev;
  return j;
}

std::string eigenvalues_csv(const SpectrumReport& r) {
  std::string out = "re,im,localization_mass_left,alignment_with_phi_x\n";
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
    const double nan = std::nan("");
    const double ml = r.has_vectors ? r.modes[i].mass_left : nan;
    const double al = r.has_vectors ? r.modes[i].alignment_with_phi_x : nan;
    out += format_double(r.eigenvalues[i].real()) + "," + format_double(r.eigenvalues[i].imag()) +
           "," + format_double(ml) + "," + format_double(al) + "\n";
  }
  return out;
}

std::string trajectory_csv(const Trajectory& t) {
  std::string out = "t,norm_u,norm_Pu\n";
  for (std::size_t i = 0; i < t.t.size(); ++i) {
    out += format_double(t.t[i]) + "," + format_double(t.norm_u[i]) + "," +
           format_double(t.norm_Pu[i]) + "\n";
  }
  return out;
}

json decay_fit_to_json(const DecayFit& f) {
  return {{"rate", f.fitted_rate},
          {"r_squared", f.r_squared},
          {"window", {f.window_start, f.window_end}},
          {"samples", f.times.size()},
          {"prefactor", f.prefactor},
          {"rejected", f.rejected},
          {"note", f.note}};
}

std::string run_csv(const NonlinearRun& r) {
  std::string out = "t,residual,shift,min_v,max_v\n";
  for (const auto& rec : r.records) {
    out += format_double(rec.t) + "," + format_double(rec.residual) + "," +
           format_double(rec.shift) + "," + format_double(rec.min_v) + "," +
           format_double(rec.max_v) + "\n";
  }
  return out;
}

std::string snapshot_csv(const std::vector<double>& x, const std::vector<double>& v) {
  std::string out = "x,v\n";
  for (std::size_t i = 0; i < x.size(); ++i) out += format_double(x[i]) + "," + format_double(v[i]) + "\n";
  return out;
}

}  // namespace degenfront
