// Copyright 2025-2026 The onionvqe developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "onionvqe/opt.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <stdexcept>

#include "onionvqe/rng.hpp"

namespace onionvqe {

OptimizerConfig OptimizerConfig::quasi_newton() { return {}; }

OptimizerConfig OptimizerConfig::nft() {
  OptimizerConfig c;
  c.kind = OptKind::NFT;
  c.max_evals = 1024;
  c.max_iters = 1024;
  return c;
}

OptimizerConfig OptimizerConfig::spsa() {
  OptimizerConfig c;
  c.kind = OptKind::SPSA;
  c.max_evals = 1024;
  c.max_iters = 512;
  return c;
}

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::Tol: return "tol";
    case Termination::MaxEvals: return "max_evals";
    case Termination::MaxIters: return "max_iters";
    case Termination::Stalled: return "stalled";
  }
  return "?";
}

std::vector<double> fd_gradient(ObjectiveHandle& f, std::span<const double> x, double eps) {
  if (eps <= 0) throw std::invalid_argument("fd_gradient: eps must be positive");
  std::vector<double> xp(x.begin(), x.end());
  const double f0 = f(xp);
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = xp[i];
    xp[i] = saved + eps;
    g[i] = (f(xp) - f0) / eps;
    xp[i] = saved;
  }
  return g;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double rel_change(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}

struct Bounds {
  std::vector<double> lo, hi;
  void clamp(std::vector<double>& x) const {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
  }
  double projected_grad_inf(std::span<const double> x, std::span<const double> g) const {
    double m = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double gi = g[i];
      if (x[i] <= lo[i] && gi > 0) gi = 0;
      if (x[i] >= hi[i] && gi < 0) gi = 0;
      m = std::max(m, std::abs(gi));
    }
    return m;
  }
};

// Two-loop recursion with gamma = s.y / y.y scaling of the seed Hessian.
std::vector<double> lbfgs_direction(std::span<const double> g,
                                    const std::deque<std::pair<std::vector<double>,
                                                               std::vector<double>>>& mem) {
  std::vector<double> q(g.begin(), g.end());
  const std::size_t k = mem.size();
  std::vector<double> alpha(k);
  for (std::size_t i = k; i-- > 0;) {
    const auto& [s, y] = mem[i];
    const double rho = 1.0 / dot(s, y);
    alpha[i] = rho * dot(s, q);
    for (std::size_t j = 0; j < q.size(); ++j) q[j] -= alpha[i] * y[j];
  }
  if (k > 0) {
    const auto& [s, y] = mem.back();
    const double gamma = dot(s, y) / dot(y, y);
    for (auto& v : q) v *= gamma;
  }
  for (std::size_t i = 0; i < k; ++i) {
    const auto& [s, y] = mem[i];
    const double rho = 1.0 / dot(s, y);
    const double beta = rho * dot(y, q);
    for (std::size_t j = 0; j < q.size(); ++j) q[j] += (alpha[i] - beta) * s[j];
  }
  for (auto& v : q) v = -v;
  return q;
}

}  // namespace

OptResult minimize_qn(ObjectiveHandle& f, std::vector<double> x0, const OptimizerConfig& cfg) {
  if (cfg.kind != OptKind::QuasiNewtonFD)
    throw std::invalid_argument("minimize_qn: config kind mismatch");
  constexpr double kArmijo = 1e-4;
  constexpr double kPgTol = 1e-10;
  constexpr int kMaxBacktracks = 60;
  const std::size_t dim = x0.size();

  Bounds bounds;
  bounds.lo.resize(dim);
  bounds.hi.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    bounds.lo[i] = x0[i] - 2 * std::numbers::pi;
    bounds.hi[i] = x0[i] + 2 * std::numbers::pi;
  }

  OptResult r;
  r.x = std::move(x0);
  r.fun = f(r.x);
  r.trace.iterates.push_back({r.x, r.fun, f.evaluations()});

  auto finish = [&](Termination why) {
    r.trace.termination = why;
    r.trace.evaluations = f.evaluations();
    return r;
  };
  auto budget_left = [&](long needed = 1) { return f.evaluations() + needed <= cfg.max_evals; };

  if (!budget_left(static_cast<long>(dim) + 1)) return finish(Termination::MaxEvals);
  std::vector<double> g = fd_gradient(f, r.x, cfg.fd_step);

  std::deque<std::pair<std::vector<double>, std::vector<double>>> mem;
  bool tried_steepest_after_stall = false;

  for (long iter = 0; iter < cfg.max_iters; ++iter) {
    if (bounds.projected_grad_inf(r.x, g) <= kPgTol) return finish(Termination::Tol);

    std::vector<double> d = lbfgs_direction(g, mem);
    double gd = dot(g, d);
    if (!(gd < 0)) {  // not a descent direction, fall back to steepest descent
      mem.clear();
      d.assign(g.begin(), g.end());
      for (auto& v : d) v = -v;
      gd = dot(g, d);
      if (!(gd < 0)) return finish(Termination::Stalled);
    }

    // Backtracking Armijo search along the box-projected step. Until
    // curvature information exists the raw steepest-descent step can be
    // arbitrarily large, so cap the first trial step length.
    double alpha = 1.0;
    if (mem.empty()) {
      double g_inf = 0;
      for (double gi : g) g_inf = std::max(g_inf, std::abs(gi));
      if (g_inf > 1.0) alpha = 1.0 / g_inf;
    }
    bool accepted = false;
    std::vector<double> xn(dim);
    double fn = 0;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      if (!budget_left()) return finish(Termination::MaxEvals);
      for (std::size_t i = 0; i < dim; ++i) xn[i] = r.x[i] + alpha * d[i];
      bounds.clamp(xn);
      fn = f(xn);
      double step_dir = 0;
      for (std::size_t i = 0; i < dim; ++i) step_dir += g[i] * (xn[i] - r.x[i]);
      if (fn <= r.fun + kArmijo * std::min(step_dir, 0.0) && fn <= r.fun) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }

    if (!accepted) {
      if (!mem.empty()) {       // retry the whole iteration with fresh memory
        mem.clear();
        continue;
      }
      if (!tried_steepest_after_stall) {
        tried_steepest_after_stall = true;
        continue;
      }
      return finish(Termination::Stalled);
    }
    tried_steepest_after_stall = false;

    if (!budget_left(static_cast<long>(dim) + 1)) {
      r.x = std::move(xn);
      r.fun = fn;
      r.trace.iterates.push_back({r.x, r.fun, f.evaluations()});
      return finish(Termination::MaxEvals);
    }
    std::vector<double> gn = fd_gradient(f, xn, cfg.fd_step);

    std::vector<double> s(dim), y(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      s[i] = xn[i] - r.x[i];
      y[i] = gn[i] - g[i];
    }
    const double sy = dot(s, y);
    if (sy > 1e-12 * std::sqrt(dot(s, s)) * std::sqrt(dot(y, y))) {
      mem.emplace_back(std::move(s), std::move(y));
      if (static_cast<int>(mem.size()) > cfg.memory) mem.pop_front();
    }

    const double prev = r.fun;
    r.x = std::move(xn);
    r.fun = fn;
    g = std::move(gn);
    r.trace.iterates.push_back({r.x, r.fun, f.evaluations()});
    if (rel_change(prev, r.fun) <= cfg.rel_tol) return finish(Termination::Tol);
  }
  return finish(Termination::MaxIters);
}

OptResult minimize_nft(ObjectiveHandle& f, std::vector<double> x0, const OptimizerConfig& cfg) {
  if (cfg.kind != OptKind::NFT) throw std::invalid_argument("minimize_nft: config kind mismatch");
  constexpr double kHalfPi = std::numbers::pi / 2;
  const std::size_t dim = x0.size();

  OptResult r;
  r.x = std::move(x0);
  r.fun = f(r.x);
  r.trace.iterates.push_back({r.x, r.fun, f.evaluations()});

  auto finish = [&](Termination why) {
    r.trace.termination = why;
    r.trace.evaluations = f.evaluations();
    return r;
  };

  long updates = 0;
  for (long cycle = 0; cycle < cfg.max_iters; ++cycle) {
    const double cycle_start = r.fun;
    for (std::size_t i = 0; i < dim; ++i) {
      if (f.evaluations() + 2 > cfg.max_evals) {
        r.trace.iterates.push_back({r.x, r.fun, f.evaluations()});
        return finish(Termination::MaxEvals);
      }
      const double theta = r.x[i];
      r.x[i] = theta + kHalfPi;
      const double z1 = f(r.x);
      r.x[i] = theta - kHalfPi;
      const double z3 = f(r.x);
      const double offset = 0.5 * (z1 + z3);
      const double a_cos = r.fun - offset;   // a cos(theta - b)
      const double a_sin = 0.5 * (z3 - z1);  // a sin(theta - b)
      const double amp = std::hypot(a_cos, a_sin);
      if (amp < 1e-12) {  // flat coordinate, leave unchanged
        r.x[i] = theta;
        continue;
      }
      const double b = theta - std::atan2(a_sin, a_cos);
      r.x[i] = b + std::numbers::pi;
      r.fun = offset - amp;
      ++updates;
      if (cfg.nft_reset_interval > 0 && updates % cfg.nft_reset_interval == 0) {
        if (f.evaluations() + 1 > cfg.max_evals) {
          r.trace.iterates.push_back({r.x, r.fun, f.evaluations()});
          return finish(Termination::MaxEvals);
        }
        r.fun = f(r.x);
      }
    }
    r.trace.iterates.push_back({r.x, r.fun, f.evaluations()});
    if (rel_change(cycle_start, r.fun) <= cfg.rel_tol) return finish(Termination::Tol);
  }
  return finish(Termination::MaxIters);
}

OptResult minimize_spsa(ObjectiveHandle& f, std::vector<double> x0, const OptimizerConfig& cfg) {
  if (cfg.kind != OptKind::SPSA) throw std::invalid_argument("minimize_spsa: config kind mismatch");
  const std::size_t dim = x0.size();
  constexpr double kAlpha = 0.602;
  constexpr double kGamma = 0.101;
  const double stability = 0.1 * static_cast<double>(cfg.max_iters);

  Bounds bounds;
  bounds.lo.resize(dim);
  bounds.hi.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    bounds.lo[i] = x0[i] - 2 * std::numbers::pi;
    bounds.hi[i] = x0[i] + 2 * std::numbers::pi;
  }

  OptResult r;
  r.x = std::move(x0);
  r.fun = f(r.x);
  r.trace.iterates.push_back({r.x, r.fun, f.evaluations()});
  auto finish = [&](Termination why) {
    r.trace.termination = why;
    r.trace.evaluations = f.evaluations();
    return r;
  };

  Rng rng(cfg.spsa_seed);
  std::vector<double> xp(dim), xm(dim), delta(dim);
  for (long k = 0; k < cfg.max_iters; ++k) {
    if (f.evaluations() + 2 > cfg.max_evals) return finish(Termination::MaxEvals);
    const double ak = cfg.spsa_a / std::pow(static_cast<double>(k) + 1 + stability, kAlpha);
    const double ck = cfg.spsa_c / std::pow(static_cast<double>(k) + 1, kGamma);
    for (std::size_t i = 0; i < dim; ++i) {
      delta[i] = rng.uniform() < 0.5 ? -1.0 : 1.0;
      xp[i] = r.x[i] + ck * delta[i];
      xm[i] = r.x[i] - ck * delta[i];
    }
    const double fp = f(xp);
    const double fm = f(xm);
    const double diff = (fp - fm) / (2 * ck);
    for (std::size_t i = 0; i < dim; ++i) r.x[i] -= ak * diff * delta[i];
    bounds.clamp(r.x);
    r.fun = 0.5 * (fp + fm);
    r.trace.iterates.push_back({r.x, r.fun, f.evaluations()});
  }
  if (f.evaluations() + 1 <= cfg.max_evals) {
    r.fun = f(r.x);
    r.trace.iterates.back().energy = r.fun;
  }
  return finish(Termination::MaxIters);
}

}  // namespace onionvqe
