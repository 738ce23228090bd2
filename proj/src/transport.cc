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

#include "smtk/transport.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "smtk/errors.h"

namespace smtk {
namespace {

// NWC bin exhaustion threshold.
constexpr double kExhausted = 1e-12;
// Masses below this are treated as zero by the flow solver.
constexpr double kFlowEps = 1e-15;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

CostSpec CostSpec::Lp(double exponent) {
  if (!(exponent >= 1.0) || !std::isfinite(exponent)) {
    throw InputError("lp cost exponent must be a finite value >= 1");
  }
  CostSpec c;
  c.kind_ = Kind::kLp;
  c.exponent_ = exponent;
  return c;
}

CostSpec CostSpec::Hamming() {
  CostSpec c;
  c.kind_ = Kind::kHamming;
  return c;
}

CostSpec CostSpec::Matrix(Eigen::MatrixXd d) {
  if (d.size() == 0) throw InputError("cost matrix is empty");
  if (!d.allFinite() || (d.array() < 0.0).any()) {
    throw InputError("cost matrix entries must be finite and nonnegative");
  }
  CostSpec c;
  c.kind_ = Kind::kMatrix;
  c.matrix_ = std::move(d);
  return c;
}

Eigen::MatrixXd CostSpec::Evaluate(Alphabet source, Alphabet sink) const {
  if (kind_ == Kind::kMatrix) {
    if (matrix_.rows() != source.size || matrix_.cols() != sink.size) {
      throw InputError("cost matrix is " + std::to_string(matrix_.rows()) +
                       "x" + std::to_string(matrix_.cols()) +
                       ", alphabets are " + std::to_string(source.size) + "x" +
                       std::to_string(sink.size));
    }
    return matrix_;
  }
  Eigen::MatrixXd d(source.size, sink.size);
  for (int i = 0; i < source.size; ++i) {
    for (int j = 0; j < sink.size; ++j) {
      const int diff = std::abs((source.offset + i) - (sink.offset + j));
      if (kind_ == Kind::kHamming) {
        d(i, j) = diff == 0 ? 0.0 : 1.0;
      } else if (exponent_ == 1.0) {
        d(i, j) = diff;
      } else if (exponent_ == 2.0) {
        d(i, j) = static_cast<double>(diff) * diff;
      } else {
        d(i, j) = std::pow(static_cast<double>(diff), exponent_);
      }
    }
  }
  return d;
}

CostSpec CostSpec::Transposed() const {
  if (kind_ != Kind::kMatrix) return *this;
  return Matrix(matrix_.transpose());
}

std::string CostSpec::Name() const {
  switch (kind_) {
    case Kind::kLp:
      return "lp";
    case Kind::kHamming:
      return "hamming";
    case Kind::kMatrix:
      return "matrix";
  }
  return "";
}

TransportMap::TransportMap(int source_offset, int sink_offset,
                           Eigen::MatrixXd flow)
    : source_offset_(source_offset),
      sink_offset_(sink_offset),
      flow_(std::move(flow)) {
  if (flow_.size() == 0) throw InputError("empty transport map");
  if (!flow_.allFinite()) throw InputError("transport map is not finite");
  if ((flow_.array() < -kSupportThreshold).any()) {
    throw InputError("transport map has a negative entry");
  }
  flow_ = flow_.cwiseMax(0.0);
}

TransportMap TransportMap::Identity(const Pmf& p) {
  Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(p.probs().data(),
                                                        p.size());
  return TransportMap(p.offset(), p.offset(), v.asDiagonal().toDenseMatrix());
}

TransportMap TransportMap::FromCounts(const Eigen::MatrixXi& counts,
                                      int source_offset, int sink_offset) {
  const int total = counts.sum();
  if (total <= 0) throw InputError("integer plan has no mass");
  return TransportMap(source_offset, sink_offset,
                      counts.cast<double>() / static_cast<double>(total));
}

std::vector<double> TransportMap::RowSums() const {
  Eigen::VectorXd s = flow_.rowwise().sum();
  return {s.data(), s.data() + s.size()};
}

std::vector<double> TransportMap::ColSums() const {
  Eigen::RowVectorXd s = flow_.colwise().sum();
  return {s.data(), s.data() + s.size()};
}

Pmf TransportMap::RowMarginal() const {
  return ValidatePmf(source_offset_, RowSums(), /*renormalize=*/true);
}

Pmf TransportMap::ColMarginal() const {
  return ValidatePmf(sink_offset_, ColSums(), /*renormalize=*/true);
}

TransportMap NwcMap(const Pmf& p, const Pmf& q) {
  const int k = p.size();
  const int m = q.size();
  Eigen::MatrixXd flow = Eigen::MatrixXd::Zero(k, m);
  int i = 0;
  int j = 0;
  double a = p[0];
  double b = q[0];
  while (true) {
    // Source first on a simultaneous exhaustion; the sink follows on the
    // next pass. Sub-threshold residue stays in its row.
    if (a < kExhausted) {
      flow(i, j) += a;
      if (++i == k) break;
      a = p[i];
      continue;
    }
    if (b < kExhausted) {
      if (j + 1 == m) break;
      b = q[++j];
      continue;
    }
    const double x = std::min(a, b);
    flow(i, j) += x;
    a -= x;
    b -= x;
  }
  // Marginal sums can disagree by up to the pmf tolerance; keep rows exact.
  if (i < k) {
    flow(i, m - 1) += a;
    for (int r = i + 1; r < k; ++r) flow(r, m - 1) += p[r];
  }
  return TransportMap(p.offset(), q.offset(), std::move(flow));
}

bool IsMonge(const CostSpec& cost, Alphabet source, Alphabet sink) {
  // |i - j|^p is Monge for p >= 1 (convex function of the difference).
  if (cost.kind() == CostSpec::Kind::kLp) return true;
  if (static_cast<int64_t>(source.size) * sink.size > 1000000) {
    throw ScaleGuardError("Monge check limited to 1e6 cells");
  }
  const Eigen::MatrixXd d = cost.Evaluate(source, sink);
  // Checking adjacent 2x2 minors is equivalent to checking every quadruple:
  // any crossed quadruple telescopes into a sum of adjacent ones.
  const double tol = 1e-12 * std::max(1.0, d.cwiseAbs().maxCoeff());
  for (int i = 0; i + 1 < d.rows(); ++i) {
    for (int j = 0; j + 1 < d.cols(); ++j) {
      if (d(i, j) + d(i + 1, j + 1) > d(i, j + 1) + d(i + 1, j) + tol) {
        return false;
      }
    }
  }
  return true;
}

bool IsMonge(const CostSpec& cost, int k, int m) {
  return IsMonge(cost, Alphabet{0, k}, Alphabet{0, m});
}

EmdSolution MinCostFlowEmd(const Pmf& p, const Pmf& q, const CostSpec& cost) {
  const int k = p.size();
  const int m = q.size();
  const Eigen::MatrixXd d = cost.Evaluate(p.alphabet(), q.alphabet());
  Eigen::MatrixXd flow = Eigen::MatrixXd::Zero(k, m);
  std::vector<double> supply(p.probs());
  std::vector<double> demand(q.probs());
  // Node v < k is source row v, node k + j is sink column j. Potentials keep
  // reduced costs nonnegative so Dijkstra applies on the residual graph.
  const int nodes = k + m;
  std::vector<double> pot(nodes, 0.0);
  std::vector<double> dist(nodes);
  std::vector<int> parent(nodes);
  std::vector<char> done(nodes);
  const int max_rounds = 16 * (k + 1) * (m + 1) + 1000;
  for (int round = 0;; ++round) {
    if (round > max_rounds) {
      throw SolverError("min-cost flow did not terminate", kInf);
    }
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(parent.begin(), parent.end(), -1);
    std::fill(done.begin(), done.end(), 0);
    bool any_supply = false;
    for (int i = 0; i < k; ++i) {
      if (supply[i] > kFlowEps) {
        dist[i] = 0.0;
        any_supply = true;
      }
    }
    if (!any_supply) break;
    for (;;) {
      int u = -1;
      for (int v = 0; v < nodes; ++v) {
        if (!done[v] && dist[v] < kInf && (u < 0 || dist[v] < dist[u])) u = v;
      }
      if (u < 0) break;
      done[u] = 1;
      if (u < k) {
        for (int j = 0; j < m; ++j) {
          const int v = k + j;
          const double rc = std::max(0.0, d(u, j) + pot[u] - pot[v]);
          if (dist[u] + rc < dist[v]) {
            dist[v] = dist[u] + rc;
            parent[v] = u;
          }
        }
      } else {
        const int j = u - k;
        for (int i = 0; i < k; ++i) {
          if (flow(i, j) <= kFlowEps) continue;
          const double rc = std::max(0.0, -d(i, j) + pot[u] - pot[i]);
          if (dist[u] + rc < dist[i]) {
            dist[i] = dist[u] + rc;
            parent[i] = u;
          }
        }
      }
    }
    int target = -1;
    for (int j = 0; j < m; ++j) {
      const int v = k + j;
      if (demand[j] > kFlowEps && dist[v] < kInf &&
          (target < 0 || dist[v] < dist[target])) {
        target = v;
      }
    }
    if (target < 0) break;
    const double reach = dist[target];
    for (int v = 0; v < nodes; ++v) pot[v] += std::min(dist[v], reach);
    // Bottleneck along the path.
    double delta = demand[target - k];
    int v = target;
    while (parent[v] >= 0) {
      const int u = parent[v];
      if (u >= k) delta = std::min(delta, flow(v, u - k));
      v = u;
    }
    delta = std::min(delta, supply[v]);
    supply[v] -= delta;
    demand[target - k] -= delta;
    v = target;
    while (parent[v] >= 0) {
      const int u = parent[v];
      if (u < k) {
        flow(u, v - k) += delta;
      } else {
        flow(v, u - k) -= delta;
        if (flow(v, u - k) < kFlowEps) flow(v, u - k) = 0.0;
      }
      v = u;
    }
  }
  const double value = (flow.array() * d.array()).sum();
  return {value, TransportMap(p.offset(), q.offset(), std::move(flow)), "lp"};
}

EmdSolution SolveEmd(const Pmf& p, const Pmf& q, const CostSpec& cost) {
  if (IsMonge(cost, p.alphabet(), q.alphabet())) {
    TransportMap map = NwcMap(p, q);
    const double value = MapCost(map, cost);
    return {value, std::move(map), "nwc"};
  }
  return MinCostFlowEmd(p, q, cost);
}

double Emd(const Pmf& p, const Pmf& q, const CostSpec& cost) {
  return SolveEmd(p, q, cost).value;
}

double EmdL1ClosedForm(const Pmf& p, const Pmf& q) {
  const Alphabet span = JointAlphabet(p.alphabet(), q.alphabet());
  double cum = 0.0;
  double total = 0.0;
  for (int s = span.first(); s <= span.last(); ++s) {
    cum += p.AtSymbol(s) - q.AtSymbol(s);
    total += std::abs(cum);
  }
  return total;
}

UniformClosedForm SmUniformClosedForm(int size_x, int size_y, int x_offset,
                                      int y_offset, double p_exp) {
  if (size_y < 1 || size_x < 1 || size_x % size_y != 0) {
    throw InputError("uniform closed form needs |X| a positive multiple of |Y|");
  }
  if (!(p_exp >= 1.0)) throw InputError("lp cost exponent must be >= 1");
  const int alpha = size_x / size_y;
  const double delta = static_cast<double>(x_offset) - y_offset;
  UniformClosedForm out;
  // Sink symbol j receives the alpha consecutive source symbols starting at
  // alpha * j, each of mass 1 / |X|.
  double sum = 0.0;
  for (int j = 0; j < size_y; ++j) {
    for (int r = 0; r < alpha; ++r) {
      const double dist = std::abs(delta + (alpha - 1.0) * j + r);
      sum += std::pow(dist, p_exp);
    }
  }
  out.value = sum / size_x;
  double printed = 0.0;
  const double base_gap = std::abs(static_cast<double>(x_offset) - y_offset);
  for (int i = 0; i < size_x; ++i) {
    for (int j = 0; j < alpha; ++j) {
      printed += std::pow(base_gap - j - (alpha - 1.0) * i, p_exp);
    }
  }
  out.printed = printed / size_y;
  out.matches_printed =
      std::isfinite(out.printed) &&
      std::abs(out.printed - out.value) <= 1e-9 * std::max(1.0, out.value);
  return out;
}

double MapCost(const TransportMap& map, const CostSpec& cost) {
  const Eigen::MatrixXd d =
      cost.Evaluate(map.source_alphabet(), map.sink_alphabet());
  return (map.flow().array() * d.array()).sum();
}

int LinfCost(const TransportMap& map) {
  int worst = 0;
  for (int i = 0; i < map.rows(); ++i) {
    for (int j = 0; j < map.cols(); ++j) {
      if (map.flow()(i, j) > kSupportThreshold) {
        worst = std::max(worst, std::abs((map.source_offset() + i) -
                                         (map.sink_offset() + j)));
      }
    }
  }
  return worst;
}

void ForEachIntegerPlan(
    const std::vector<int>& p_counts, const std::vector<int>& q_counts,
    const std::function<void(const Eigen::MatrixXi&)>& visit) {
  const int k = static_cast<int>(p_counts.size());
  const int m = static_cast<int>(q_counts.size());
  if (k < 1 || m < 1) throw InputError("empty count vector");
  if (k > 5 || m > 5) throw ScaleGuardError("plan enumeration needs alphabets <= 5");
  for (int c : p_counts) if (c < 0) throw InputError("negative count");
  for (int c : q_counts) if (c < 0) throw InputError("negative count");
  const int total = std::accumulate(p_counts.begin(), p_counts.end(), 0);
  if (total != std::accumulate(q_counts.begin(), q_counts.end(), 0)) {
    throw InputError("count vectors have different totals");
  }
  if (total > 12) throw ScaleGuardError("plan enumeration needs total <= 12");

  Eigen::MatrixXi plan = Eigen::MatrixXi::Zero(k, m);
  std::vector<int> row_left(p_counts);
  std::vector<int> col_left(q_counts);
  // Fill cells in row-major order; the last cell of each row is forced.
  std::function<void(int, int)> fill = [&](int i, int j) {
    if (i == k) {
      visit(plan);
      return;
    }
    if (j == m - 1) {
      const int x = row_left[i];
      if (x > col_left[j]) return;
      if (i == k - 1) {
        // Every column must be closed by the final row.
        for (int c = 0; c < m - 1; ++c) {
          if (col_left[c] != 0) return;
        }
        if (col_left[j] != x) return;
      }
      plan(i, j) = x;
      row_left[i] -= x;
      col_left[j] -= x;
      fill(i + 1, 0);
      row_left[i] += x;
      col_left[j] += x;
      plan(i, j) = 0;
      return;
    }
    const int hi = std::min(row_left[i], col_left[j]);
    for (int x = 0; x <= hi; ++x) {
      plan(i, j) = x;
      row_left[i] -= x;
      col_left[j] -= x;
      fill(i, j + 1);
      row_left[i] += x;
      col_left[j] += x;
    }
    plan(i, j) = 0;
  };
  fill(0, 0);
}

std::vector<Eigen::MatrixXi> EnumerateIntegerPlans(
    const std::vector<int>& p_counts, const std::vector<int>& q_counts) {
  std::vector<Eigen::MatrixXi> plans;
  ForEachIntegerPlan(p_counts, q_counts,
                     [&](const Eigen::MatrixXi& plan) { plans.push_back(plan); });
  return plans;
}

}  // namespace smtk
