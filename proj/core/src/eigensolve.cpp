#include "cavqed/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "cavqed/error.hpp"
#include "cavqed/format.hpp"
#include "cavqed/parallel.hpp"

namespace cavqed {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Coupled part of the system after removing levels and modes with identically
// zero coupling; those are exact eigenpairs on their own.
struct Active {
  VectorXd el, ph;
  MatrixXd g;  // M' x N'
  MatrixXd u;  // M' x r
  MatrixXd r;  // r x N'
  std::vector<Index> el_index, ph_index;
};

Active extract_active(const CoupledSystem& sys) {
  const MatrixXd& g = sys.coupling();
  Active a;
  for (Index i = 0; i < g.rows(); ++i)
    if ((g.row(i).array() != 0.0).any()) a.el_index.push_back(i);
  for (Index k = 0; k < g.cols(); ++k)
    if ((g.col(k).array() != 0.0).any()) a.ph_index.push_back(k);
  const auto m = static_cast<Index>(a.el_index.size());
  const auto n = static_cast<Index>(a.ph_index.size());
  a.el.resize(m);
  a.ph.resize(n);
  a.g.resize(m, n);
  for (Index i = 0; i < m; ++i) a.el[i] = sys.el_energies()[a.el_index[i]];
  for (Index k = 0; k < n; ++k) a.ph[k] = sys.ph_energies()[a.ph_index[k]];
  for (Index i = 0; i < m; ++i)
    for (Index k = 0; k < n; ++k) a.g(i, k) = g(a.el_index[i], a.ph_index[k]);
  if (m > 0 && n > 0) {
    CoupledSystem sub(a.el, a.ph, a.g);
    a.u = sub.coupling_basis();
    a.r = sub.reduced_coupling();
  }
  return a;
}

struct Eval {
  MatrixXd s;       // S(z) = E + Sigma(z) - z
  MatrixXd metric;  // -S'(z) = I + sum g g^T / (z - w)^2
  MatrixXd metric_below;  // part of the pole sum from modes below the bracket
  VectorXd mu;      // eigenvalues of S, ascending
  MatrixXd v;       // eigenvectors of S
  Eigen::ArrayXd inv, inv2;
};

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Secular matrix evaluated at z = ph[o] + delta. All pole distances are formed
// as (ph[o] - ph[k]) + delta, which is exact for the dominant nearby terms.
class Secular {
 public:
  explicit Secular(const Active& a) : a_(a), m_(a.el.size()), n_(a.ph.size()), rank_(a.u.cols()) {
    // One row per (x >= y) pair of reduced couplings, so each sum is a GEMV.
    pairs_.resize(rank_ * (rank_ + 1) / 2, n_);
    Index row = 0;
    for (Index x = 0; x < rank_; ++x)
      for (Index y = 0; y <= x; ++y, ++row) pairs_.row(row) = a.r.row(x).cwiseProduct(a.r.row(y));
  }

  Index m() const { return m_; }
  Index n() const { return n_; }
  double pole(Index k) const { return a_.ph[k]; }

  // `split` separates the poles below the bracket from those above, so the
  // derivative can be attributed to each side (see IntervalSolver::refine).
  void evaluate(Index o, double delta, Eval& e, Index split = -1) const {
    const double wo = a_.ph[o];
    const Index np = pairs_.rows();
    Eigen::VectorXd s1(np), s2lo(np), s2hi(np);
    const Index cut = split < 0 ? n_ : split;
    if (rank_ == 1) {
      rank_one_sum(wo, delta, cut, s1[0], s2lo[0], s2hi[0]);
    } else {
      e.inv = 1.0 / ((wo - a_.ph.array()) + delta);
      e.inv2 = e.inv.square();
      s1 = pairs_ * e.inv.matrix();
      s2lo = pairs_.leftCols(cut) * e.inv2.head(cut).matrix();
      s2hi = s2lo + pairs_.rightCols(n_ - cut) * e.inv2.tail(n_ - cut).matrix();
    }
    e.s = a_.u * unpack(s1) * a_.u.transpose();
    for (Index i = 0; i < m_; ++i) e.s(i, i) += (a_.el[i] - wo) - delta;
    e.metric_below = a_.u * unpack(s2lo) * a_.u.transpose();
    e.metric = a_.u * unpack(s2hi) * a_.u.transpose();
    e.metric.diagonal().array() += 1.0;
    decompose(e);
  }

  // Number of eigenvalues strictly below the pole ph[p]: p plus the negative
  // inertia of the bordered matrix [[S_p, g_p], [g_p^T, 0]], where S_p omits
  // the singular term of mode p.
  Index count_below_pole(Index p, Eval& e) const {
    if (m_ == 1) return p + 1;
    const double wp = a_.ph[p];
    e.inv = 1.0 / (wp - a_.ph.array());
    e.inv[p] = 0.0;
    const VectorXd s1 = pairs_ * e.inv.matrix();
    MatrixXd b = MatrixXd::Zero(m_ + 1, m_ + 1);
    b.topLeftCorner(m_, m_) = a_.u * unpack(s1) * a_.u.transpose();
    for (Index i = 0; i < m_; ++i) b(i, i) += a_.el[i] - wp;
    b.col(m_).head(m_) = a_.g.col(p);
    b.row(m_).head(m_) = a_.g.col(p).transpose();
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(b, Eigen::EigenvaluesOnly);
    return p + (eig.eigenvalues().array() < 0.0).count();
  }

  // Electronic part of the eigenvector for a root exactly at pole p: the null
  // vector of the bordered matrix. Only exact dark combinations of degenerate
  // levels land there, and their amplitude on mode p vanishes.
  VectorXd pole_vector(Index p) const {
    const double wp = a_.ph[p];
    Eigen::ArrayXd inv = 1.0 / (wp - a_.ph.array());
    inv[p] = 0.0;
    MatrixXd b = MatrixXd::Zero(m_ + 1, m_ + 1);
    b.topLeftCorner(m_, m_) = a_.u * unpack(pairs_ * inv.matrix()) * a_.u.transpose();
    for (Index i = 0; i < m_; ++i) b(i, i) += a_.el[i] - wp;
    b.col(m_).head(m_) = a_.g.col(p);
    b.row(m_).head(m_) = a_.g.col(p).transpose();
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(b);
    Index j = 0;
    eig.eigenvalues().cwiseAbs().minCoeff(&j);
    const VectorXd v = eig.eigenvectors().col(j);
    MatrixXd metric = a_.u * unpack(pairs_ * inv.square().matrix()) * a_.u.transpose();
    metric.diagonal().array() += 1.0;
    const VectorXd c = v.head(m_);
    return c / std::sqrt(c.dot(metric * c) + v[m_] * v[m_]);
  }

  // Eigenvalues of H strictly below z = ph[o] + delta (delta != 0, no pole in between).
  Index count_at(Index o, double delta, Eval& e) const {
    evaluate(o, delta, e);
    const Index below = delta > 0.0 ? o + 1 : o;
    return below + (e.mu.array() < 0.0).count();
  }

 private:
  // sum_k r_k^2 / d_k and sum_k r_k^2 / d_k^2 for d_k = (wo - w_k) + delta,
  // the latter also restricted to k < cut. Four independent accumulators keep
  // the loop vectorizable; the summation order is fixed.
  void rank_one_sum(double wo, double delta, Index cut, double& s1, double& s2_below,
                    double& s2) const {
    const double* w = a_.ph.data();
    const double* r2 = pairs_.data();
    auto run = [&](Index b, Index e, double& acc1, double& acc2) {
      double a1[4] = {0, 0, 0, 0}, a2[4] = {0, 0, 0, 0};
      Index k = b;
      for (; k + 4 <= e; k += 4)
        for (int j = 0; j < 4; ++j) {
          const double inv = 1.0 / ((wo - w[k + j]) + delta);
          const double t = r2[k + j] * inv;
          a1[j] += t;
          a2[j] += t * inv;
        }
      for (; k < e; ++k) {
        const double inv = 1.0 / ((wo - w[k]) + delta);
        const double t = r2[k] * inv;
        a1[0] += t;
        a2[0] += t * inv;
      }
      acc1 = (a1[0] + a1[1]) + (a1[2] + a1[3]);
      acc2 = (a2[0] + a2[1]) + (a2[2] + a2[3]);
    };
    double s1a, s2a, s1b, s2b;
    run(0, cut, s1a, s2a);
    run(cut, n_, s1b, s2b);
    s1 = s1a + s1b;
    s2_below = s2a;
    s2 = s2a + s2b;
  }

  MatrixXd unpack(const VectorXd& packed) const {
    MatrixXd k(rank_, rank_);
    Index row = 0;
    for (Index x = 0; x < rank_; ++x)
      for (Index y = 0; y <= x; ++y, ++row) k(x, y) = k(y, x) = packed[row];
    return k;
  }

  void decompose(Eval& e) const {
    if (m_ == 1) {
      e.mu.resize(1);
      e.mu[0] = e.s(0, 0);
      e.v = MatrixXd::Ones(1, 1);
      return;
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(e.s);
    e.mu = eig.eigenvalues();
    e.v = eig.eigenvectors();
  }

  const Active& a_;
  Index m_, n_, rank_;
  RowMatrix pairs_;
};

struct Root {
  Index origin;  // active photon index the offset is measured from
  double delta;
  VectorXd c;    // electronic components, normalized over the full eigenvector
};

// Roots of H inside the open bracket (lo, hi), measured from pole `origin`.
// Global indices count_lo .. count_hi-1.
struct Bracket {
  Index origin;
  double lo, hi;
  Index count_lo, count_hi;
};

class IntervalSolver {
 public:
  IntervalSolver(const Secular& sec, const SolverOptions& opts) : sec_(sec), opts_(opts) {}

  void isolate(const Bracket& b, std::vector<Root>& out, int depth = 0) {
    const Index n = b.count_hi - b.count_lo;
    if (n <= 0) return;
    if (n == 1) {
      refine(b, out);
      return;
    }
    if (b.hi - b.lo <= opts_.cluster_tolerance || depth > 200) {
      cluster(b, out);
      return;
    }
    const double mid = b.lo + 0.5 * (b.hi - b.lo);
    if (mid <= b.lo || mid >= b.hi || mid == 0.0) {
      cluster(b, out);
      return;
    }
    const Index cm = std::clamp(sec_.count_at(b.origin, mid, ev_), b.count_lo, b.count_hi);
    isolate({b.origin, b.lo, mid, b.count_lo, cm}, out, depth + 1);
    isolate({b.origin, mid, b.hi, cm, b.count_hi}, out, depth + 1);
  }

  Index count_at(Index o, double delta) { return sec_.count_at(o, delta, ev_); }

 private:
  Index poles_below(const Bracket& b) const { return b.hi <= 0.0 ? b.origin : b.origin + 1; }

  void refine(const Bracket& b, std::vector<Root>& out) {
    const Index split = poles_below(b);
    const Index branch = b.count_lo - split;
    if (branch < 0 || branch >= sec_.m())
      throw SolverError("secular branch out of range near " + describe(b));
    // Neighbouring poles in offset coordinates; one of them is the origin.
    const double wo = sec_.pole(b.origin);
    const bool has_below = split > 0, has_above = split < sec_.n();
    const double pa = has_below ? sec_.pole(split - 1) - wo : 0.0;
    const double pb = has_above ? sec_.pole(split) - wo : 0.0;

    double lo = b.lo, hi = b.hi;
    double x = lo + 0.5 * (hi - lo);
    double width = hi - lo;
    int since_check = 0;
    for (int it = 0; it < opts_.max_iterations; ++it) {
      sec_.evaluate(b.origin, x, ev_, split);
      const double phi = ev_.mu[branch];
      const auto v = ev_.v.col(branch);
      const double d_all = v.dot(ev_.metric * v);
      const double d_below = v.dot(ev_.metric_below * v);
      const double d_above = d_all - 1.0 - d_below;
      if (phi > 0.0)
        lo = x;
      else if (phi < 0.0)
        hi = x;
      else
        break;
      if (hi - lo <= 4.0 * kEps * std::max(std::abs(lo), std::abs(hi))) break;

      // Local model: the exact -t term of S plus each side's pole sum lumped
      // into its nearest pole,
      //   f(t) = A - t + B/(t - pa) + C/(t - pb),
      // matching value and side derivatives at x. It is decreasing on the
      // bracket, so its root is cheap to find without touching the N-sum.
      const double bb = has_below ? d_below * (x - pa) * (x - pa) : 0.0;
      const double cc = has_above ? d_above * (x - pb) * (x - pb) : 0.0;
      auto model = [&](double t, double& slope) {
        double f = -t, df = -1.0;
        if (has_below) {
          const double r = 1.0 / (t - pa);
          f += bb * r;
          df -= bb * r * r;
        }
        if (has_above) {
          const double r = 1.0 / (t - pb);
          f += cc * r;
          df -= cc * r * r;
        }
        slope = df;
        return f;
      };
      double slope = 0.0;
      const double shift = phi - model(x, slope);
      double next = model_root(model, shift, x, lo, hi);
      // Guarantee the bracket at least halves every few steps.
      if (++since_check == 4) {
        if (hi - lo > 0.5 * width) next = lo + 0.5 * (hi - lo);
        width = hi - lo;
        since_check = 0;
      }
      if (std::abs(next - x) <= 2.0 * kEps * std::abs(x)) {
        x = next;
        break;
      }
      if (it + 1 == opts_.max_iterations)
        throw SolverError("root refinement did not converge near " + describe(b));
      x = next;
    }
    // The last evaluation is within a couple of ulps of x; reuse its vector.
    VectorXd c = ev_.v.col(branch);
    c /= std::sqrt(c.dot(ev_.metric * c));
    if (!c.allFinite()) {
      x = 0.0;
      c = sec_.pole_vector(b.origin);
    }
    out.push_back({b.origin, x, std::move(c)});
  }

  // Root of model(t) + shift inside (lo, hi) by bracketed Newton from x.
  template <class Model>
  static double model_root(Model& model, double shift, double x, double lo, double hi) {
    double t = x;
    for (int it = 0; it < 100; ++it) {
      double slope = 0.0;
      const double f = model(t, slope) + shift;
      if (f > 0.0)
        lo = t;
      else if (f < 0.0)
        hi = t;
      else
        return t;
      double next = t - f / slope;
      if (!(next > lo && next < hi)) next = lo + 0.5 * (hi - lo);
      if (std::abs(next - t) <= kEps * std::abs(t) || next == lo || next == hi) return next;
      t = next;
    }
    return t;
  }

  // Roots closer than the tolerance: Rayleigh-Ritz on the near-null space of S.
  void cluster(const Bracket& b, std::vector<Root>& out) {
    const Index k = b.count_hi - b.count_lo;
    const Index branch = b.count_lo - poles_below(b);
    if (branch < 0 || branch + k > sec_.m())
      throw SolverError("cluster of " + std::to_string(k) + " roots exceeds secular rank near " +
                        describe(b));
    const double x = b.lo + 0.5 * (b.hi - b.lo);
    sec_.evaluate(b.origin, x, ev_);
    const MatrixXd c = ev_.v.middleCols(branch, k);
    const MatrixXd gram = c.transpose() * ev_.metric * c;
    const MatrixXd h = c.transpose() * ev_.s * c;
    Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> gen(h, gram);
    if (gen.info() != Eigen::Success) throw SolverError("cluster resolution failed near " + describe(b));
    for (Index j = 0; j < k; ++j) {
      VectorXd cj = c * gen.eigenvectors().col(j);
      cj /= std::sqrt(cj.dot(ev_.metric * cj));
      out.push_back({b.origin, x + gen.eigenvalues()[j], std::move(cj)});
    }
  }

  static std::string describe(const Bracket& b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "photon mode %lld, offsets (%.6e, %.6e) eV",
                  static_cast<long long>(b.origin), b.lo, b.hi);
    return buf;
  }

  const Secular& sec_;
  const SolverOptions& opts_;
  Eval ev_;
};

struct Entry {
  double value;
  ModeOrigin origin;
  Index anchor;
  double offset;
  VectorXd c;  // length M (global)
};

void apply_sign_convention(VectorXd& c) {
  Index imax = 0;
  if (c.size() == 0) return;
  c.cwiseAbs().maxCoeff(&imax);
  if (c[imax] < 0.0) c = -c;
}

PolaritonModes pack(std::vector<Entry>& entries, Index m) {
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.origin != b.origin) return a.origin < b.origin;
    return a.anchor < b.anchor;
  });
  const auto total = static_cast<Index>(entries.size());
  PolaritonModes out;
  out.eigenvalues.resize(total);
  out.el_components.resize(total, m);
  out.el_weight.resize(total);
  out.ph_weight.resize(total);
  out.offset.resize(total);
  out.origin.resize(static_cast<std::size_t>(total));
  out.anchor.resize(static_cast<std::size_t>(total));
  for (Index l = 0; l < total; ++l) {
    auto& e = entries[static_cast<std::size_t>(l)];
    out.eigenvalues[l] = e.value;
    out.el_components.row(l) = e.c.transpose();
    out.el_weight[l] = std::min(1.0, e.c.squaredNorm());
    out.ph_weight[l] = 1.0 - out.el_weight[l];
    out.offset[l] = e.offset;
    out.origin[static_cast<std::size_t>(l)] = e.origin;
    out.anchor[static_cast<std::size_t>(l)] = e.anchor;
  }
  return out;
}

}  // namespace

PolaritonModes eigensolve_structured(const CoupledSystem& system, const SolverOptions& opts) {
  const Index m = system.el_count();
  const Active act = extract_active(system);
  const auto ma = static_cast<Index>(act.el_index.size());
  const auto na = static_cast<Index>(act.ph_index.size());

  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(system.size()));
  {
    std::vector<bool> el_on(static_cast<std::size_t>(m), false);
    std::vector<bool> ph_on(static_cast<std::size_t>(system.ph_count()), false);
    for (Index i : act.el_index) el_on[static_cast<std::size_t>(i)] = true;
    for (Index k : act.ph_index) ph_on[static_cast<std::size_t>(k)] = true;
    for (Index i = 0; i < m; ++i)
      if (!el_on[static_cast<std::size_t>(i)]) {
        VectorXd c = VectorXd::Zero(m);
        c[i] = 1.0;
        entries.push_back({system.el_energies()[i], ModeOrigin::electronic, i, 0.0, std::move(c)});
      }
    for (Index k = 0; k < system.ph_count(); ++k)
      if (!ph_on[static_cast<std::size_t>(k)])
        entries.push_back({system.ph_energies()[k], ModeOrigin::photonic, k, 0.0, VectorXd::Zero(m)});
  }

  if (ma > 0 && na > 0) {
    const Secular sec(act);
    const Index total = ma + na;

    // Strict counts at every pole.
    std::vector<Index> counts(static_cast<std::size_t>(na));
    parallel_chunks(static_cast<std::size_t>(na), opts.threads,
                    [&](std::size_t b, std::size_t e, unsigned) {
                      Eval scratch;
                      for (std::size_t p = b; p < e; ++p)
                        counts[p] = sec.count_below_pole(static_cast<Index>(p), scratch);
                    });
    for (Index t = 0; t <= na; ++t) {
      const Index left = t > 0 ? counts[static_cast<std::size_t>(t - 1)] : 0;
      const Index right = t < na ? counts[static_cast<std::size_t>(t)] : total;
      if (right < left)
        throw SolverError("inconsistent inertia counts at photon mode " +
                          std::to_string(act.ph_index[static_cast<std::size_t>(std::min(t, na - 1))]));
    }

    // Gershgorin bounds for the outer intervals.
    double lower = std::numeric_limits<double>::infinity();
    double upper = -lower;
    for (Index i = 0; i < ma; ++i) {
      const double rad = act.g.row(i).cwiseAbs().sum();
      lower = std::min(lower, act.el[i] - rad);
      upper = std::max(upper, act.el[i] + rad);
    }
    for (Index k = 0; k < na; ++k) {
      const double rad = act.g.col(k).cwiseAbs().sum();
      lower = std::min(lower, act.ph[k] - rad);
      upper = std::max(upper, act.ph[k] + rad);
    }
    lower -= 1e-6 * (1.0 + std::abs(lower));
    upper += 1e-6 * (1.0 + std::abs(upper));

    std::vector<std::vector<Root>> per_interval(static_cast<std::size_t>(na + 1));
    parallel_chunks(static_cast<std::size_t>(na + 1), opts.threads,
                    [&](std::size_t b, std::size_t e, unsigned) {
                      IntervalSolver solver(sec, opts);
                      for (std::size_t ts = b; ts < e; ++ts) {
                        const auto t = static_cast<Index>(ts);
                        const Index left = t > 0 ? counts[ts - 1] : 0;
                        const Index right = t < na ? counts[ts] : total;
                        if (right == left) continue;
                        auto& out = per_interval[ts];
                        if (t == 0) {
                          solver.isolate({0, lower - act.ph[0], 0.0, left, right}, out);
                        } else if (t == na) {
                          solver.isolate({na - 1, 0.0, upper - act.ph[na - 1], left, right}, out);
                        } else {
                          const double a = act.ph[t - 1], bnd = act.ph[t];
                          const double mid = a + 0.5 * (bnd - a);
                          const double dl = mid - a, dr = mid - bnd;
                          const Index cm = std::clamp(solver.count_at(t - 1, dl), left, right);
                          solver.isolate({t - 1, 0.0, dl, left, cm}, out);
                          solver.isolate({t, dr, 0.0, cm, right}, out);
                        }
                      }
                    });

    for (auto& roots : per_interval)
      for (auto& r : roots) {
        VectorXd c = VectorXd::Zero(m);
        for (Index i = 0; i < ma; ++i) c[act.el_index[static_cast<std::size_t>(i)]] = r.c[i];
        apply_sign_convention(c);
        const Index anchor = act.ph_index[static_cast<std::size_t>(r.origin)];
        entries.push_back({system.ph_energies()[anchor] + r.delta, ModeOrigin::secular, anchor,
                           r.delta, std::move(c)});
      }
  }

  if (static_cast<Index>(entries.size()) != system.size())
    throw SolverError("found " + std::to_string(entries.size()) + " eigenvalues, expected " +
                      std::to_string(system.size()));
  return pack(entries, m);
}

PolaritonModes eigensolve_dense(const CoupledSystem& system, const SolverOptions& opts) {
  const Index m = system.el_count(), n = system.ph_count();
  if (static_cast<std::size_t>(system.size()) > opts.dense_cap)
    throw SolverError("dense solver limited to " + std::to_string(opts.dense_cap) +
                      " states, system has " + std::to_string(system.size()));
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(system.dense());
  if (eig.info() != Eigen::Success) throw SolverError("dense diagonalization failed");
  MatrixXd v = eig.eigenvectors();
  const Index total = m + n;
  for (Index l = 0; l < total; ++l) {
    Index imax = 0;
    if (v.col(l).head(m).cwiseAbs().maxCoeff(&imax) > 0.0) {
      if (v(imax, l) < 0.0) v.col(l) = -v.col(l);
    } else {
      v.col(l).tail(n).cwiseAbs().maxCoeff(&imax);
      if (v(m + imax, l) < 0.0) v.col(l) = -v.col(l);
    }
  }
  PolaritonModes out;
  out.eigenvalues = eig.eigenvalues();
  out.el_components = v.topRows(m).transpose();
  out.el_weight = out.el_components.rowwise().squaredNorm();
  out.ph_weight = (1.0 - out.el_weight.array()).matrix();
  out.origin.assign(static_cast<std::size_t>(total), ModeOrigin::dense);
  out.anchor.assign(static_cast<std::size_t>(total), -1);
  out.offset = out.eigenvalues;
  out.ph_components = v.bottomRows(n);
  return out;
}

MatrixXd photon_components(const CoupledSystem& system, const PolaritonModes& modes, Index first,
                           Index count) {
  const Index n = system.ph_count();
  if (first < 0 || count < 0 || first + count > n)
    throw std::out_of_range("photon component block outside the grid");
  if (modes.ph_components) return modes.ph_components->middleRows(first, count);

  const Index total = modes.size();
  const auto& ph = system.ph_energies();
  const MatrixXd& u = system.coupling_basis();
  const MatrixXd& r = system.reduced_coupling();
  const Index rank = u.cols();
  MatrixXd out = MatrixXd::Zero(count, total);
  for (Index l = 0; l < total; ++l) {
    const auto kind = modes.origin[static_cast<std::size_t>(l)];
    const Index anchor = modes.anchor[static_cast<std::size_t>(l)];
    if (kind == ModeOrigin::photonic) {
      if (anchor >= first && anchor < first + count) out(anchor - first, l) = 1.0;
      continue;
    }
    if (kind != ModeOrigin::secular) continue;
    const VectorXd q = u.transpose() * modes.el_components.row(l).transpose();
    const double wa = ph[anchor];
    const double off = modes.offset[l];
    for (Index k = first; k < first + count; ++k) {
      double num = 0.0;
      for (Index x = 0; x < rank; ++x) num += r(x, k) * q[x];
      if (num == 0.0) continue;
      const double d = (wa - ph[k]) + off;
      if (d == 0.0) throw PoleError(wa + off, static_cast<std::size_t>(k));
      out(k - first, l) = num / d;
    }
  }
  return out;
}

WeightTable weights(const PolaritonModes& modes) {
  WeightTable t;
  t.W = modes.el_components.array().square().matrix();
  t.el_total = t.W.rowwise().sum();
  t.ph_total = (1.0 - t.el_total.array()).matrix();
  return t;
}

void write_eigen_table_csv(const PolaritonModes& modes, const std::vector<std::string>& labels,
                           std::ostream& os) {
  const Index m = modes.el_count();
  os << "# states:";
  for (const auto& s : labels) os << ' ' << s;
  os << "\nomega_l_eV,w_el,w_ph";
  for (Index i = 0; i < m; ++i) os << ",C_" << (i + 1);
  os << '\n';
  for (Index l = 0; l < modes.size(); ++l) {
    os << fmt(modes.eigenvalues[l]) << ',' << fmt(modes.el_weight[l]) << ',' << fmt(modes.ph_weight[l]);
    for (Index i = 0; i < m; ++i) os << ',' << fmt(modes.el_components(l, i));
    os << '\n';
  }
}

}  // namespace cavqed
