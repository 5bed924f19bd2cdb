#include "degenfront/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "degenfront/error.hpp"
#include "degenfront/lapack.hpp"

namespace degenfront {

double zero_tolerance(const OperatorDiscretization& d) {
  return std::max(5e-3, 10.0 * d.h * d.h * d.coefficient_scale());
}

SpectrumReport eigen_spectrum(const OperatorDiscretization& d, const KineticsPair& k,
                              const SpectrumOptions& opt) {
  const std::size_t n = d.n();
  auto eig = lapack::dgeev(d.dense(), opt.want_vectors);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = eig.values[a];
    const auto& y = eig.values[b];
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
  });

  SpectrumReport r;
  r.n = n;
  r.h = d.h;
  r.epsilon = d.epsilon;
  r.scale = d.max_abs();
  r.zero_tolerance = zero_tolerance(d);
  r.mu1 = k.mu1();
  r.border_max = std::max(k.fp(0.0), k.fp(1.0));
  r.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.eigenvalues[i] = eig.values[order[i]];
    r.max_imag = std::max(r.max_imag, std::abs(r.eigenvalues[i].imag()));
  }

  r.zero_index = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(r.eigenvalues[i]) < std::abs(r.eigenvalues[r.zero_index])) r.zero_index = i;
  }
  r.lambda0 = r.eigenvalues[r.zero_index];
  r.second_index = r.zero_index == 0 ? 1 : 0;
  r.lambda1 = n > 1 ? r.eigenvalues[r.second_index] : std::complex<double>{};
  r.gap = -r.lambda1.real();
  r.beta = kBetaMargin * std::min(r.gap, r.mu1);

  if (opt.want_vectors) {
    r.has_vectors = true;
    r.modes.resize(n);
    const double length = d.x_right - d.x_left;
    const bool have_phi_x = d.phi_x.size() == n;
    double phi_x_norm = 0.0;
    if (have_phi_x) {
      for (double v : d.phi_x) phi_x_norm += v * v;
      phi_x_norm = std::sqrt(phi_x_norm);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto v = eig.vectors.col(static_cast<Eigen::Index>(order[i]));
      double s2 = 0.0, s4 = 0.0, left = 0.0;
      std::complex<double> dot = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double a = std::norm(v(static_cast<Eigen::Index>(j)));
        s2 += a;
        s4 += a * a;
        if (d.x[j] < d.x_left + 2.0) left += a;
        if (have_phi_x) dot += v(static_cast<Eigen::Index>(j)) * d.phi_x[j];
      }
      ModeDiagnostics& m = r.modes[i];
      m.mass_left = s2 > 0.0 ? left / s2 : 0.0;
      m.participation_length = s4 > 0.0 ? d.h * s2 * s2 / s4 : 0.0;
      m.delocalized = m.participation_length >= kDelocalizedFraction * length;
      if (have_phi_x && phi_x_norm > 0.0 && s2 > 0.0) {
        m.alignment_with_phi_x = std::abs(dot) / (std::sqrt(s2) * phi_x_norm);
      }
    }
    r.zero_mode_alignment = r.modes[r.zero_index].alignment_with_phi_x;
    const auto keep = static_cast<Eigen::Index>(std::min<std::size_t>(kLeadingVectors, n));
    r.leading_vectors.resize(static_cast<Eigen::Index>(n), keep);
    for (Eigen::Index c = 0; c < keep; ++c) {
      r.leading_vectors.col(c) = eig.vectors.col(static_cast<Eigen::Index>(order[c])).normalized();
    }
  }
  return r;
}

int unstable_count(const SpectrumReport& r) {
  int c = 0;
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
    if (i != r.zero_index && r.eigenvalues[i].real() > 1e-2) ++c;
  }
  return c;
}

double left_localized_ceiling(const SpectrumReport& r, bool* any) {
  double ceiling = -std::numeric_limits<double>::infinity();
  bool found = false;
  for (std::size_t i = 0; i < r.modes.size(); ++i) {
    if (r.modes[i].mass_left >= 0.5) {
      ceiling = std::max(ceiling, r.eigenvalues[i].real());
      found = true;
    }
  }
  if (any) *any = found;
  return ceiling;
}

SpectrumClass classify_spectrum(const SpectrumReport& r, const KineticsPair& k) {
  SpectrumClass c;
  const double tol = r.zero_tolerance;
  int in_ball = 0;
  for (const auto& l : r.eigenvalues) {
    if (std::abs(l) <= tol) ++in_ball;
  }
  c.zero_simple = in_ball == 1;
  if (!c.zero_simple) c.notes.push_back(std::to_string(in_ball) + " eigenvalues in the zero ball");
  const double beta = kBetaMargin * std::min(r.gap, k.mu1());
  c.gap_ok = beta > 0.0;
  if (!c.gap_ok) c.notes.push_back("no positive spectral gap");
  bool others_ok = true;
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
    if (i == r.zero_index) continue;
    if (r.eigenvalues[i].real() > -beta) others_ok = false;
  }
  c.stable = others_ok && std::abs(r.lambda0) <= tol && c.gap_ok;
  if (!others_ok) c.notes.push_back("eigenvalue right of -beta besides lambda0");
  if (std::abs(r.lambda0) > tol) c.notes.push_back("lambda0 outside the zero tolerance");
  {
    std::ostringstream os;
    os << "eigenvalues right of the Fredholm border max " << r.border_max
       << " (and of the collapsed border f'(0)) are labelled essential-proxy"
          " only when delocalized";
    c.notes.push_back(os.str());
  }
  return c;
}

unsigned sweep_threads() {
  if (const char* env = std::getenv("DEGENFRONT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SweepResult epsilon_sweep(const FrontProfile& p, const std::vector<double>& epsilons,
                          unsigned threads) {
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0)) throw ConfigError("sweep epsilons must be positive");
    if (i > 0 && !(epsilons[i] < epsilons[i - 1])) {
      throw ConfigError("sweep epsilons must be sorted descending");
    }
  }
  SweepResult out;
  out.epsilons = epsilons;
  out.epsilons.push_back(0.0);
  const std::size_t m = out.epsilons.size();
  out.reports.resize(m);

  const KineticsPair& k = p.kinetics();
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= m) return;
      try {
        out.reports[i] = eigen_spectrum(assemble_operator(p, out.epsilons[i]), k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = sweep_threads();
  threads = std::min<unsigned>(threads, static_cast<unsigned>(m));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  const double l0 = out.reports.back().lambda1.real();
  std::vector<double> dist;
  out.delocalized_ok = true;
  for (std::size_t i = 0; i < m; ++i) {
    const SpectrumReport& r = out.reports[i];
    out.lambda1.push_back(r.lambda1.real());
    out.unstable_count += unstable_count(r);
    double ceiling = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < r.modes.size(); ++j) {
      if (r.modes[j].delocalized) ceiling = std::max(ceiling, r.eigenvalues[j].real());
    }
    out.delocalized_ceiling.push_back(ceiling);
    if (ceiling > r.border_max + 0.05) out.delocalized_ok = false;
    if (i + 1 < m) dist.push_back(std::abs(r.lambda1.real() - l0));
  }
  out.continuity_at_smallest = dist.empty() ? 0.0 : dist.back();
  out.continuity_ok = out.continuity_at_smallest <= 0.05;
  out.monotone_ok = true;
  for (std::size_t i = 1; i < dist.size(); ++i) {
    if (dist[i] > 1.1 * dist[i - 1] + 1e-12) out.monotone_ok = false;
  }
  return out;
}

}  // namespace degenfront
