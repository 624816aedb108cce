// Copyright 2026 The otoclab authors
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

#include "otoclab/grover.hpp"

#include <cmath>
#include <numbers>

#include "otoclab/channel.hpp"
#include "otoclab/entropy.hpp"
#include "otoclab/protocol.hpp"

namespace otoclab {

double GroverPlan::predicted_success(int m) const {
  if (m < 0) throw std::invalid_argument("grover: m must be nonnegative");
  const double s = std::sin((static_cast<double>(m) + 0.5) * theta);
  return s * s;
}

GroverPlan make_grover_plan(std::size_t d_a) {
  if (d_a < 2) throw std::invalid_argument("grover: d_A must be at least 2");
  GroverPlan plan;
  plan.d_a = d_a;
  plan.theta = 2.0 * std::asin(1.0 / static_cast<double>(d_a));
  plan.m_optimal = static_cast<int>(std::lround(
      std::numbers::pi / (2.0 * plan.theta) - 0.5));
  if (plan.m_optimal < 0) plan.m_optimal = 0;
  return plan;
}

namespace {

struct GroverContext {
  OtocGeometry geom;
  Matrix u_eff;
  Matrix t_epr_d;  // EPR pair coefficients on (D, Dp)
  Matrix t_epr_a;  // EPR pair coefficients on (Ap, Rp)
};

PureState apply_w_d(const GroverContext& ctx, const PureState& psi) {
  const PureState projected =
      apply_pair_projector(psi, "D", "Dp", ctx.t_epr_d);
  return PureState(psi.layout(),
                   psi.amplitudes() - 2.0 * projected.amplitudes(),
                   /*allow_unnormalized=*/true);
}

// Input-form view of the output-form state: relabel (C, D)(Cp, Dp) back to
// the evolution blocks so the backward operators act in role order.
PureState to_input_blocks(const PureState& psi) {
  PureState s = permute_registers(psi, {"R", "C", "D", "Cp", "Dp", "Rp"});
  s = merge_registers(s, {"C", "D"}, "AB");
  s = merge_registers(s, {"Cp", "Dp"}, "ABp");
  return s;
}

PureState to_output_blocks(const PureState& psi, const OtocGeometry& geom) {
  PureState s = split_register(
      psi, "AB", {{"C", geom.dim_c()}, {"D", geom.dim_d()}});
  s = split_register(s, "ABp", {{"Cp", geom.dim_c()}, {"Dp", geom.dim_d()}});
  return permute_registers(s, {"R", "C", "D", "Dp", "Cp", "Rp"});
}

PureState apply_w_a(const GroverContext& ctx, const PureState& psi) {
  PureState chi = to_input_blocks(psi);
  // P~_A = (U^* on the backward block) Pi_{Ap Rp} (U^T on the backward block)
  PureState y = apply_on(chi, ctx.u_eff.transpose(), {"ABp"});
  y = split_register(y, "ABp",
                     {{"Ap", ctx.geom.dim_a()}, {"Bp", ctx.geom.dim_b()}});
  y = apply_pair_projector(y, "Ap", "Rp", ctx.t_epr_a);
  y = merge_registers(y, {"Ap", "Bp"}, "ABp");
  y = apply_on(y, ctx.u_eff.conjugate(), {"ABp"});
  PureState result(chi.layout(),
                   2.0 * y.amplitudes() - chi.amplitudes(),
                   /*allow_unnormalized=*/true);
  return to_output_blocks(result, ctx.geom);
}

GroverContext make_context(const Matrix& u, const OtocGeometry& geom) {
  geom.validate();
  GroverContext ctx;
  ctx.geom = geom;
  ctx.u_eff = geom.effective_unitary(u);
  ctx.t_epr_d = epr_pair_coefficients(geom.dim_d());
  ctx.t_epr_a = epr_pair_coefficients(geom.dim_a());
  return ctx;
}

}  // namespace

GroverReflections build_reflections(const Matrix& u,
                                    const OtocGeometry& geom) {
  const GroverContext ctx = make_context(u, geom);
  ProtocolConfig config{UnitaryEvolution{u}, geom, InputMode::EprReference,
                        Vector(), 0};
  const PureState psi0 = build_psi_in_pure(config);
  const SystemLayout layout = psi0.layout();
  const std::size_t dim = layout.total_dim();
  GroverReflections refl{Matrix(dim, dim), Matrix(dim, dim)};
  for (std::size_t i = 0; i < dim; ++i) {
    Vector e = Vector::Zero(dim);
    e(i) = 1.0;
    const PureState basis(layout, e, /*allow_unnormalized=*/true);
    refl.w_d.col(i) = apply_w_d(ctx, basis).amplitudes();
    refl.w_a.col(i) = apply_w_a(ctx, basis).amplitudes();
  }
  return refl;
}

GroverResult grover_decode(const Matrix& u, const OtocGeometry& geom, int m) {
  if (m < 0) throw std::invalid_argument("grover_decode: m must be >= 0");
  const GroverContext ctx = make_context(u, geom);
  ProtocolConfig config{UnitaryEvolution{u}, geom, InputMode::EprReference,
                        Vector(), 0};
  const PureState psi_in = build_psi_in_pure(config);

  PureState psi = psi_in;
  for (int k = 0; k < m; ++k) psi = apply_w_a(ctx, apply_w_d(ctx, psi));

  GroverResult result{psi, 0.0, 0.0, 0.0, false,
                      2 + 2 * static_cast<std::size_t>(m)};
  result.success_prob = epr_probability(psi, "D", "Dp");
  const GroverPlan plan = make_grover_plan(geom.dim_a());
  result.predicted = plan.predicted_success(m);

  // Normalized |Psi_out> embedded in the full space.
  auto [rest, p] = project_pair(psi_in, "D", "Dp", ctx.t_epr_d);
  if (p >= kPostSelectionFloor) {
    const PureState out_embedded =
        apply_pair_projector(psi_in, "D", "Dp", ctx.t_epr_d);
    const Vector target = out_embedded.amplitudes() / std::sqrt(p);
    result.fidelity_to_out = std::norm(target.dot(psi.amplitudes()));
  }

  const DensityMatrix rho4 = to_density(unitary_state_rep(u, geom));
  const double i2 = mutual_info_renyi2(rho4, {"R"}, {"Bp", "D"});
  result.ideal_regime =
      i2 >= 2.0 * std::log2(static_cast<double>(geom.dim_a())) - 0.05;
  return result;
}

double verify_epr_after_decode(const PureState& state) {
  return epr_probability(state, "D", "Dp") / state.amplitudes().squaredNorm();
}

}  // namespace otoclab
