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

// Discrete optimal transport on integer alphabets: cost functions, coupling
// matrices, the north-west corner rule, an exact min-cost-flow solver and
// closed forms.

#ifndef SMTK_TRANSPORT_H_
#define SMTK_TRANSPORT_H_

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "smtk/pmf.h"

namespace smtk {

// Flow entries at or below this are outside the support of a map.
inline constexpr double kSupportThreshold = 1e-12;

// Distortion d(i, j). Lp and Hamming are functions of the symbol values;
// an explicit matrix is indexed by position within the two alphabets.
class CostSpec {
 public:
  enum class Kind { kLp, kHamming, kMatrix };

  static CostSpec Lp(double exponent);
  static CostSpec Hamming();
  static CostSpec Matrix(Eigen::MatrixXd d);

  Kind kind() const { return kind_; }
  double exponent() const { return exponent_; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

  // Dense cost matrix between two alphabets.
  Eigen::MatrixXd Evaluate(Alphabet source, Alphabet sink) const;
  // Cost with the roles of source and sink swapped.
  CostSpec Transposed() const;
  // Short name for reports ("lp", "hamming", "matrix").
  std::string Name() const;

 private:
  Kind kind_ = Kind::kLp;
  double exponent_ = 1.0;
  Eigen::MatrixXd matrix_;
};

// A coupling between a source pmf (rows) and a sink pmf (columns).
class TransportMap {
 public:
  TransportMap(int source_offset, int sink_offset, Eigen::MatrixXd flow);

  static TransportMap Identity(const Pmf& p);
  // Integer plan n(i, j) scaled by 1 / total.
  static TransportMap FromCounts(const Eigen::MatrixXi& counts,
                                 int source_offset, int sink_offset);

  int source_offset() const { return source_offset_; }
  int sink_offset() const { return sink_offset_; }
  int rows() const { return static_cast<int>(flow_.rows()); }
  int cols() const { return static_cast<int>(flow_.cols()); }
  Alphabet source_alphabet() const { return {source_offset_, rows()}; }
  Alphabet sink_alphabet() const { return {sink_offset_, cols()}; }
  const Eigen::MatrixXd& flow() const { return flow_; }

  std::vector<double> RowSums() const;
  std::vector<double> ColSums() const;
  Pmf RowMarginal() const;
  Pmf ColMarginal() const;

 private:
  int source_offset_;
  int sink_offset_;
  Eigen::MatrixXd flow_;
};

struct EmdSolution {
  double value = 0.0;
  TransportMap map;
  std::string method;  // "nwc" or "lp"
};

// North-west corner coupling of p (rows) into q (columns). Independent of
// any cost.
TransportMap NwcMap(const Pmf& p, const Pmf& q);

// Monge property d(i,j) + d(r,s) <= d(i,s) + d(r,j) for all i < r, j < s.
bool IsMonge(const CostSpec& cost, Alphabet source, Alphabet sink);
bool IsMonge(const CostSpec& cost, int k, int m);

// Exact optimum of the transportation LP by successive shortest paths.
EmdSolution MinCostFlowEmd(const Pmf& p, const Pmf& q, const CostSpec& cost);

// NWC when the cost is Monge, the LP otherwise.
EmdSolution SolveEmd(const Pmf& p, const Pmf& q, const CostSpec& cost);
double Emd(const Pmf& p, const Pmf& q, const CostSpec& cost);

// Sum over the joint span of |cumulative difference|.
double EmdL1ClosedForm(const Pmf& p, const Pmf& q);

struct UniformClosedForm {
  // EMD between uniform{x_offset..} and uniform{y_offset..} obtained by
  // summing the north-west corner shipments in closed form.
  double value = 0.0;
  // The double-sum expression as printed in the literature, evaluated
  // literally (NaN when a negative base meets a fractional exponent).
  double printed = 0.0;
  bool matches_printed = false;
};
// size_x must be a positive multiple of size_y.
UniformClosedForm SmUniformClosedForm(int size_x, int size_y, int x_offset,
                                      int y_offset, double p_exp);

double MapCost(const TransportMap& map, const CostSpec& cost);
// Largest |i - j| over cells carrying more than kSupportThreshold.
int LinfCost(const TransportMap& map);

// Calls `visit` on every nonnegative integer matrix with the given row and
// column sums. Totals above 12 or alphabets above 5 throw ScaleGuardError.
void ForEachIntegerPlan(const std::vector<int>& p_counts,
                        const std::vector<int>& q_counts,
                        const std::function<void(const Eigen::MatrixXi&)>& visit);
std::vector<Eigen::MatrixXi> EnumerateIntegerPlans(
    const std::vector<int>& p_counts, const std::vector<int>& q_counts);

}  // namespace smtk

#endif  // SMTK_TRANSPORT_H_
