// Copyright 2026 The smtk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "smtk/barrier.h"

#include <cmath>
#include <limits>
#include <string>

#include "smtk/errors.h"

namespace smtk {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double GroupSum(const Eigen::VectorXd& x, const std::vector<int>& group) {
  double s = 0.0;
  for (int i : group) s += x[i];
  return s;
}

struct Partials {
  double u = 0.0, v = 0.0, uu = 0.0, uv = 0.0, vv = 0.0;
};

double PhiValue(const PairTerm& term, double u, double v) {
  if (term.kind == PairTerm::Kind::kKl) {
    if (u <= 0.0) return 0.0;
    if (v <= 0.0) return kInf;
    return u * std::log(u / v);
  }
  const double c = term.c;
  const double m = u + c * v;
  double val = 0.0;
  if (u > 0.0) val += u * std::log((1.0 + c) * u / m);
  if (v > 0.0) val += c * v * std::log((1.0 + c) * v / m);
  return val;
}

// Only the partials for nonempty variable groups are ever used, so logs of
// zero never reach the result.
Partials PhiPartials(const PairTerm& term, double u, double v) {
  Partials d;
  if (term.kind == PairTerm::Kind::kKl) {
    d.u = std::log(u / v) + 1.0;
    d.uu = 1.0 / u;
    d.v = -u / v;
    d.uv = -1.0 / v;
    d.vv = u / (v * v);
    return d;
  }
  const double c = term.c;
  const double m = u + c * v;
  d.u = u > 0.0 ? std::log((1.0 + c) * u / m) : 0.0;
  d.v = v > 0.0 ? c * std::log((1.0 + c) * v / m) : 0.0;
  d.uu = u > 0.0 ? 1.0 / u - 1.0 / m : 0.0;
  d.uv = -c / m;
  d.vv = v > 0.0 ? c / v - c * c / m : 0.0;
  return d;
}

double TermValue(const PairTerm& term, const Eigen::VectorXd& x) {
  double total = 0.0;
  const bool v_var = !term.v_groups.empty();
  for (size_t a = 0; a < term.u_groups.size(); ++a) {
    const double u = GroupSum(x, term.u_groups[a]);
    const double v = v_var ? GroupSum(x, term.v_groups[a]) : term.v_fixed[a];
    total += PhiValue(term, u, v);
  }
  return term.weight * total;
}

void TermDerivatives(const PairTerm& term, const Eigen::VectorXd& x,
                     double scale, Eigen::VectorXd& grad,
                     Eigen::MatrixXd* hess) {
  const bool v_var = !term.v_groups.empty();
  const double w = scale * term.weight;
  for (size_t a = 0; a < term.u_groups.size(); ++a) {
    const auto& ug = term.u_groups[a];
    static const std::vector<int> kNone;
    const auto& vg = v_var ? term.v_groups[a] : kNone;
    if (ug.empty() && vg.empty()) continue;
    const double u = GroupSum(x, ug);
    const double v = v_var ? GroupSum(x, vg) : term.v_fixed[a];
    const Partials d = PhiPartials(term, u, v);
    for (int i : ug) grad[i] += w * d.u;
    for (int i : vg) grad[i] += w * d.v;
    if (hess == nullptr) continue;
    for (int i : ug) {
      for (int j : ug) (*hess)(i, j) += w * d.uu;
      for (int j : vg) {
        (*hess)(i, j) += w * d.uv;
        (*hess)(j, i) += w * d.uv;
      }
    }
    for (int i : vg) {
      for (int j : vg) (*hess)(i, j) += w * d.vv;
    }
  }
}

// Keeps a maximal linearly independent subset of the equality rows.
void DropRedundantRows(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                       Eigen::MatrixXd& a_out, Eigen::VectorXd& b_out) {
  std::vector<Eigen::VectorXd> basis;
  std::vector<int> keep;
  for (int r = 0; r < a.rows(); ++r) {
    Eigen::VectorXd v = a.row(r).transpose();
    const double norm = v.norm();
    if (norm == 0.0) continue;
    for (const auto& e : basis) v -= e.dot(v) * e;
    if (v.norm() > 1e-9 * norm) {
      basis.push_back(v / v.norm());
      keep.push_back(r);
    }
  }
  a_out.resize(static_cast<int>(keep.size()), a.cols());
  b_out.resize(static_cast<int>(keep.size()));
  for (size_t k = 0; k < keep.size(); ++k) {
    a_out.row(k) = a.row(keep[k]);
    b_out[k] = b[keep[k]];
  }
}

class Barrier {
 public:
  Barrier(const BarrierProblem& p, const Eigen::MatrixXd& a,
          const Eigen::VectorXd& b)
      : p_(p), a_(a), b_(b) {}

  // t f(x) - sum log(-g(x)) - sum log x, or +inf outside the domain.
  double Value(const Eigen::VectorXd& x, double t) const {
    if ((x.array() <= 0.0).any()) return kInf;
    const double f = p_.objective.Value(x);
    if (!std::isfinite(f)) return kInf;
    double val = t * f;
    for (const auto& g : p_.constraints) {
      const double gv = g.Value(x);
      if (!(gv < 0.0)) return kInf;
      val -= std::log(-gv);
    }
    val -= x.array().log().sum();
    return val;
  }

  // Newton direction for the barrier at x. Returns the squared decrement.
  double NewtonStep(const Eigen::VectorXd& x, double t, Eigen::VectorXd& dx) {
    const int n = p_.n;
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(n);
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(n, n);
    p_.objective.AddDerivatives(x, t, grad, hess);
    for (const auto& g : p_.constraints) {
      const double gv = g.Value(x);
      const Eigen::VectorXd gg = g.Gradient(x);
      grad += gg / (-gv);
      hess += gg * gg.transpose() / (gv * gv);
      Eigen::VectorXd unused = Eigen::VectorXd::Zero(n);
      g.AddDerivatives(x, 1.0 / (-gv), unused, hess);
    }
    grad -= x.cwiseInverse();
    hess.diagonal() += x.cwiseInverse().cwiseAbs2();

    // Jacobi scaling: the 1/x^2 terms span many orders of magnitude.
    const Eigen::VectorXd dscale = hess.diagonal().cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd hs =
        dscale.asDiagonal() * hess * dscale.asDiagonal();
    // Near an active constraint its rank-one term can swamp the rest, so
    // the scaled matrix (unit diagonal) gets a small shift if needed.
    Eigen::LLT<Eigen::MatrixXd> llt(hs);
    for (double shift = 1e-14; llt.info() != Eigen::Success; shift *= 100.0) {
      if (shift > 1e-6) {
        throw SolverError("barrier Hessian is not positive definite", kInf);
      }
      llt.compute(hs + shift * Eigen::MatrixXd::Identity(n, n));
    }
    const Eigen::VectorXd gs = dscale.cwiseProduct(grad);
    Eigen::VectorXd dy;
    if (a_.rows() == 0) {
      dy = -llt.solve(gs);
    } else {
      const Eigen::MatrixXd as = a_ * dscale.asDiagonal();
      const Eigen::VectorXd r = b_ - a_ * x;
      const Eigen::MatrixXd hinv_at = llt.solve(as.transpose());
      const Eigen::VectorXd hinv_g = llt.solve(gs);
      const Eigen::LDLT<Eigen::MatrixXd> s(as * hinv_at);
      // The centering part and the feasibility correction are formed apart:
      // at large t the gradient dwarfs the residual and a joint solve loses
      // the correction to roundoff. One refinement pass keeps the centering
      // part in the null space of A.
      dy = -(hinv_g - hinv_at * s.solve(as * hinv_g));
      dy -= hinv_at * s.solve(as * dy);
      dy += hinv_at * s.solve(r);
    }
    dx = dscale.cwiseProduct(dy);
    if (!dx.allFinite()) throw SolverError("barrier Newton step failed", kInf);
    return std::max(0.0, -grad.dot(dx));
  }

 private:
  const BarrierProblem& p_;
  const Eigen::MatrixXd& a_;
  const Eigen::VectorXd& b_;
};

}  // namespace

double ConvexFunction::Value(const Eigen::VectorXd& x) const {
  double val = constant;
  if (linear.size() > 0) val += linear.dot(x);
  for (const auto& term : terms) {
    val += TermValue(term, x);
    if (!std::isfinite(val)) return kInf;
  }
  return val;
}

void ConvexFunction::AddDerivatives(const Eigen::VectorXd& x, double scale,
                                    Eigen::VectorXd& grad,
                                    Eigen::MatrixXd& hess) const {
  if (linear.size() > 0) grad += scale * linear;
  for (const auto& term : terms) TermDerivatives(term, x, scale, grad, &hess);
}

Eigen::VectorXd ConvexFunction::Gradient(const Eigen::VectorXd& x) const {
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(x.size());
  if (linear.size() > 0) grad += linear;
  for (const auto& term : terms) TermDerivatives(term, x, 1.0, grad, nullptr);
  return grad;
}

BarrierResult SolveBarrier(const BarrierProblem& problem,
                           const BarrierOptions& options) {
  const int n = problem.n;
  if (n > kBarrierMaxVariables) {
    throw ScaleGuardError("convex program has " + std::to_string(n) +
                          " variables; the dense solver allows " +
                          std::to_string(kBarrierMaxVariables));
  }
  if (n < 1 || problem.x0.size() != n) {
    throw InputError("barrier problem needs a start point of size n >= 1");
  }
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  if (problem.equality.rows() > 0) {
    DropRedundantRows(problem.equality, problem.rhs, a, b);
  } else {
    a.resize(0, n);
    b.resize(0);
  }
  Barrier barrier(problem, a, b);

  BarrierResult result;
  result.x = problem.x0;
  Eigen::VectorXd& x = result.x;
  if (!std::isfinite(barrier.Value(x, options.t0))) {
    throw InputError("barrier start point is not strictly feasible");
  }
  if (a.rows() == n) {
    // The equalities pin the point; nothing to optimize.
    result.objective = problem.objective.Value(x);
    result.center_values.push_back(result.objective);
    result.converged = true;
    return result;
  }

  const double m = n + static_cast<double>(problem.constraints.size());
  double t = options.t0;
  Eigen::VectorXd dx(n);
  for (int outer = 0; outer < options.max_outer; ++outer) {
    for (int it = 0; it < options.max_newton_per_center; ++it) {
      const double dec2 = barrier.NewtonStep(x, t, dx);
      ++result.newton_steps;
      const double residual = a.rows() ? (b - a * x).cwiseAbs().maxCoeff() : 0;
      if (dec2 / 2.0 <= 1e-10 && residual <= 1e-13) break;
      // Longest step keeping x > 0, then backtrack into the domain and on
      // sufficient decrease. Roundoff slack scales with |value|.
      double s = 1.0;
      for (int i = 0; i < n; ++i) {
        if (dx[i] < 0.0) s = std::min(s, -0.99 * x[i] / dx[i]);
      }
      const double phi = barrier.Value(x, t);
      const double slack = 4e-16 * (std::abs(phi) + 1.0);
      bool moved = false;
      while (s > 1e-16) {
        const Eigen::VectorXd trial = x + s * dx;
        const double phi_trial = barrier.Value(trial, t);
        if (phi_trial <= phi - 0.25 * s * dec2 + slack) {
          x = trial;
          moved = true;
          break;
        }
        s *= 0.5;
      }
      if (!moved) break;  // at the roundoff floor for this t
    }
    const double f = problem.objective.Value(x);
    result.center_values.push_back(f);
    result.objective = f;
    result.gap = m / t;
    if (options.stop_below && f < *options.stop_below) {
      result.converged = true;
      return result;
    }
    if (result.gap <= options.gap_target) {
      result.converged = true;
      return result;
    }
    t *= options.mu;
  }
  throw SolverError("barrier method stopped at gap " +
                        std::to_string(result.gap),
                    result.gap);
}

}  // namespace smtk
