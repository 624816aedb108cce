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

#include "otoclab/protocol.hpp"

#include <cmath>
#include <numbers>

namespace otoclab {

namespace {

void check_config(const ProtocolConfig& config) {
  config.geom.validate();
  if (config.geom.dim_b() < 2)
    throw std::invalid_argument(
        "protocol: the B region is empty (A must be a proper subset of the "
        "input sites)");
  if (config.geom.dim_c() < 2)
    throw std::invalid_argument(
        "protocol: the C region is empty (D must be a proper subset of the "
        "output sites)");
  if (evolution_dim(config.evolution) != config.geom.dim())
    throw std::invalid_argument("protocol: evolution dim does not match geometry");
  if (const auto* coh = std::get_if<CoherentEvolution>(&config.evolution)) {
    if (coh->forward.rows() != coh->backward.rows())
      throw std::invalid_argument("protocol: forward and backward dims differ");
  }
  if (config.mode == InputMode::FixedState) {
    if (static_cast<std::size_t>(config.fixed_state.size()) !=
        config.geom.dim_a())
      throw std::invalid_argument("protocol: fixed state dim must be d_A");
    if (std::abs(config.fixed_state.norm() - 1.0) > kStructuralTol)
      throw std::invalid_argument("protocol: fixed state must be normalized");
  }
}

Matrix forward_matrix(const EvolutionModel& ev) {
  if (const auto* u = std::get_if<UnitaryEvolution>(&ev)) return u->u;
  if (const auto* c = std::get_if<CoherentEvolution>(&ev)) return c->forward;
  throw std::invalid_argument("protocol: channel evolution has no single forward matrix");
}

Matrix backward_matrix(const EvolutionModel& ev) {
  if (const auto* u = std::get_if<UnitaryEvolution>(&ev)) return u->u;
  if (const auto* c = std::get_if<CoherentEvolution>(&ev)) return c->backward;
  throw std::invalid_argument("protocol: channel evolution has no single backward matrix");
}

// Relabels the evolved input-form state to the output form
// [.., C, D, Dp, Cp, ..]: merge each copy's evolution block and re-split it
// along the trailing C|D cut.
template <typename StateT>
StateT to_output_form(const StateT& psi, const OtocGeometry& geom,
                      bool has_reference) {
  std::vector<std::string> order;
  if (has_reference) order.push_back("R");
  order.insert(order.end(), {"A", "B", "Ap", "Bp", "Rp"});
  StateT s = permute_registers(psi, order);
  s = merge_registers(s, {"A", "B"}, "AB");
  s = merge_registers(s, {"Ap", "Bp"}, "ABp");
  s = split_register(s, "AB", {{"C", geom.dim_c()}, {"D", geom.dim_d()}});
  s = split_register(s, "ABp", {{"Cp", geom.dim_c()}, {"Dp", geom.dim_d()}});
  std::vector<std::string> final_order;
  if (has_reference) final_order.push_back("R");
  final_order.insert(final_order.end(), {"C", "D", "Dp", "Cp", "Rp"});
  return permute_registers(s, final_order);
}

PureState initial_chain(const ProtocolConfig& config) {
  const std::size_t da = config.geom.dim_a();
  const std::size_t db = config.geom.dim_b();
  PureState tail = tensor(epr_state(db, "B", "Bp"), epr_state(da, "Ap", "Rp"));
  if (config.mode == InputMode::EprReference)
    return tensor(epr_state(da, "R", "A"), tail);
  PureState alice(SystemLayout({{"A", da}}), config.fixed_state);
  return tensor(alice, tail);
}

}  // namespace

PureState build_psi_in_pure(const ProtocolConfig& config) {
  check_config(config);
  if (std::holds_alternative<NoisyEvolution>(config.evolution))
    throw std::invalid_argument("build_psi_in_pure: channel mode is a density matrix");
  const Matrix u_eff = config.geom.effective_unitary(forward_matrix(config.evolution));
  const Matrix v_eff = config.geom.effective_unitary(backward_matrix(config.evolution));
  PureState psi = initial_chain(config);
  psi = apply_on(psi, u_eff, {"A", "B"});
  psi = apply_on(psi, v_eff.conjugate(), {"Ap", "Bp"});
  return to_output_form(psi, config.geom,
                        config.mode == InputMode::EprReference)
      .normalized();
}

DensityMatrix build_psi_in_density(const ProtocolConfig& config) {
  check_config(config);
  const auto* noisy = std::get_if<NoisyEvolution>(&config.evolution);
  if (noisy == nullptr) return to_density(build_psi_in_pure(config));
  const Matrix perm = config.geom.output_permutation();
  const DensityMatrix rho0 = to_density(initial_chain(config));
  const auto kraus_pass = [&](const DensityMatrix& rho,
                              const std::vector<Matrix>& ops,
                              const std::vector<std::string>& targets) {
    Matrix acc = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
    for (const auto& k : ops) acc += apply_on(rho, k, targets).matrix();
    return DensityMatrix(rho.layout(), std::move(acc), /*validate=*/false);
  };
  std::vector<Matrix> fwd, bwd;
  for (const auto& k : noisy->q.kraus()) {
    fwd.push_back(perm * k);
    bwd.push_back((perm * k).conjugate());
  }
  DensityMatrix rho = kraus_pass(rho0, fwd, {"A", "B"});
  rho = kraus_pass(rho, bwd, {"Ap", "Bp"});
  return to_output_form(rho, config.geom,
                        config.mode == InputMode::EprReference);
}

namespace {

struct PostSelected {
  double p = 0.0;
  double f = 0.0;
  double rbar_distance = 0.0;
};

// Projects (D, Dp) onto EPR and evaluates the EPR fidelity on the reference
// pair (R, Rp) in EPR mode, or the overlap with the fixed state on Rp.
PostSelected post_select(const ProtocolConfig& config) {
  PostSelected out;
  const Matrix t_epr = epr_pair_coefficients(config.geom.dim_d());
  const bool epr_mode = config.mode == InputMode::EprReference;
  const std::size_t da = config.geom.dim_a();
  Matrix rho_rp;
  if (std::holds_alternative<NoisyEvolution>(config.evolution)) {
    const DensityMatrix rho_in = build_psi_in_density(config);
    auto [rest, p] = project_pair(rho_in, "D", "Dp", t_epr);
    out.p = p;
    if (p < kPostSelectionFloor)
      throw PostSelectionImpossible("protocol: P_EPR below 1e-14");
    const DensityMatrix cond(rest.layout(), rest.matrix() / p,
                             /*validate=*/false);
    out.f = epr_mode
                ? epr_probability(cond, "R", "Rp")
                : std::real(expectation(
                      cond,
                      Matrix(config.fixed_state * config.fixed_state.adjoint()),
                      {"Rp"}));
    rho_rp = partial_trace(cond, {"Rp"}).matrix();
  } else {
    const PureState psi_in = build_psi_in_pure(config);
    auto [rest, p] = project_pair(psi_in, "D", "Dp", t_epr);
    out.p = p;
    if (p < kPostSelectionFloor)
      throw PostSelectionImpossible("protocol: P_EPR below 1e-14");
    const PureState cond = rest.normalized();
    out.f = epr_mode
                ? epr_probability(cond, "R", "Rp")
                : std::real(expectation(
                      cond,
                      Matrix(config.fixed_state * config.fixed_state.adjoint()),
                      {"Rp"}));
    rho_rp = reduced_density(cond, {"Rp"}).matrix();
  }
  out.rbar_distance =
      (rho_rp - Matrix::Identity(da, da) / static_cast<double>(da))
          .cwiseAbs()
          .maxCoeff();
  return out;
}

}  // namespace

DecodingReport run_protocol(const ProtocolConfig& config) {
  check_config(config);
  DecodingReport report;
  report.d_a = config.geom.dim_a();
  report.d_b = config.geom.dim_b();
  report.d_c = config.geom.dim_c();
  report.d_d = config.geom.dim_d();
  report.seed = config.seed;

  const PostSelected ps = post_select(config);
  report.p_epr = ps.p;
  report.f_epr = ps.f;
  report.pf = ps.p * ps.f;
  report.rbar_marginal_distance = ps.rbar_distance;
  const double da2 = static_cast<double>(report.d_a * report.d_a);

  if (const auto* uni = std::get_if<UnitaryEvolution>(&config.evolution)) {
    report.mode_name = "unitary";
    report.otoc_avg_forward = otoc_avg(uni->u, config.geom);
    const DensityMatrix rho4 = to_density(unitary_state_rep(uni->u, config.geom));
    report.i2_r_bpd = mutual_info_renyi2(rho4, {"R"}, {"Bp", "D"});
    if (config.mode == InputMode::EprReference)
      report.undo = 1.0 / (da2 * report.p_epr);
  } else if (const auto* noisy = std::get_if<NoisyEvolution>(&config.evolution)) {
    report.mode_name = "channel";
    report.delta_measured = da2 * report.pf;
    const NoiseDelta nd = noise_delta(noisy->q, config.geom);
    report.delta_entropy = nd.delta;
    report.i2_r_bpd = nd.report.i2_r_bpd;
    report.entropy = nd.report;
  } else {
    const auto& coh = std::get<CoherentEvolution>(config.evolution);
    report.mode_name = "coherent";
    report.otoc_avg_forward = otoc_avg(coh.forward, config.geom);
    // The mutual information of the evolved state is a property of the
    // forward evolution; the flawed backward copy only degrades the decoder.
    const DensityMatrix rho4 =
        to_density(unitary_state_rep(coh.forward, config.geom));
    report.i2_r_bpd = mutual_info_renyi2(rho4, {"R"}, {"Bp", "D"});
    report.eta_measured = da2 * report.pf;
    // The teleportation product measures the error in the evolved frame:
    // d_A^2 P F = ||Tr_D(V U^dagger)||_F^2 / (d_C d_D^2) exactly.
    const Matrix e_out = coh.backward * coh.forward.adjoint();
    const Matrix e_in = coh.forward.adjoint() * coh.backward;
    report.eta_true = eta_of_error(e_out, config.geom);
    report.eta_input_frame = eta_of_error(e_in, config.geom);
    if (std::abs(*report.eta_true - *report.eta_measured) > kEntropyTol)
      throw std::runtime_error(
          "protocol: eta from d_A^2 P F and from the error decomposition "
          "disagree beyond 1e-9");
    report.bounds.coherent_otoc_bound =
        coherent_otoc_bound(report.p_epr, *report.eta_true);
  }
  if (report.f_epr > 0.0) {
    report.bounds.mi_bound_bits =
        fidelity_mi_bound_bits(report.f_epr, report.d_a);
    report.bounds.fidelity_otoc_bound =
        fidelity_otoc_bound(report.f_epr, report.d_a);
  }
  if (config.mode == InputMode::FixedState) {
    // State-dependence gate for the fidelity-based bounds: the spread of
    // F_psi over a 2-design (computable for prime d_A).
    try {
      double lo = 1.0, hi = 0.0;
      for (const Vector& psi : state_2_design(report.d_a)) {
        ProtocolConfig probe = config;
        probe.fixed_state = psi;
        const double f = post_select(probe).f;
        lo = std::min(lo, f);
        hi = std::max(hi, f);
      }
      report.fidelity_spread = hi - lo;
      report.bounds_reliable = (hi - lo) <= kFidelitySpreadGate;
    } catch (const std::invalid_argument&) {
      // Non-prime d_A: no 2-design available; leave the spread unset.
    }
  }
  return report;
}

StateDecodeResult state_decode(const ProtocolConfig& config) {
  if (config.mode != InputMode::FixedState)
    throw std::invalid_argument("state_decode: config must carry a fixed state");
  const PostSelected ps = post_select(config);
  return {ps.p, ps.f};
}

double eta_of_error(const Matrix& e, const OtocGeometry& geom) {
  geom.validate();
  if (!approx_unitary(e))
    throw std::invalid_argument("eta_of_error: E must be unitary");
  const Matrix e_eff =
      geom.output_permutation() * e * geom.output_permutation().adjoint();
  const PauliDecomposition dec =
      decompose_in_weyl(e_eff, {geom.dim_c()}, {geom.dim_d()});
  std::vector<double> terms;
  terms.reserve(dec.left_count());
  for (std::size_t p = 0; p < dec.left_count(); ++p)
    terms.push_back(std::norm(dec.coeff(p, 0)));
  return pairwise_sum(terms);
}

double eta_trace_formula(const Matrix& e, const OtocGeometry& geom) {
  geom.validate();
  const std::size_t dc = geom.dim_c(), dd = geom.dim_d();
  const Matrix e_eff =
      geom.output_permutation() * e * geom.output_permutation().adjoint();
  SystemLayout layout({{"C", dc}, {"D", dd}, {"Dp", dd}});
  const Matrix pi = epr_projector(layout, "D", "Dp");
  const Matrix e_emb = embed_operator(layout, e_eff, {"C", "D"});
  const Matrix ic =
      Matrix::Identity(layout.total_dim(), layout.total_dim()) /
      static_cast<double>(dc);
  const Matrix inner = pi * ic * pi;  // (I/d_C ⊗ Pi) with Pi idempotent
  return (pi * e_emb * inner * e_emb.adjoint()).trace().real();
}

std::optional<double> coherent_otoc_bound(double p_epr, double eta) {
  if (eta < 0.0 || eta > 1.0 + kEntropyTol)
    throw std::invalid_argument("coherent_otoc_bound: eta outside [0, 1]");
  if (eta <= 0.5) return std::nullopt;
  return p_epr / (2.0 * eta - 1.0);
}

cdouble beta_coefficient(const Matrix& u, const Matrix& v,
                         const OtocGeometry& geom, const Matrix& op_d) {
  const std::size_t da = geom.dim_a();
  return otoc_coherent(u, v, geom, Matrix::Identity(da, da), op_d);
}

double fidelity_mi_bound_bits(double f_epr, std::size_t d_r) {
  if (f_epr <= 0.0)
    throw std::invalid_argument("fidelity_mi_bound: F must be positive");
  return 2.0 * std::log2(static_cast<double>(d_r)) + 2.0 * std::log2(f_epr);
}

double fidelity_otoc_bound(double f_epr, std::size_t d_r) {
  if (f_epr <= 0.0)
    throw std::invalid_argument("fidelity_otoc_bound: F must be positive");
  const double dr = static_cast<double>(d_r);
  return 1.0 / (dr * dr * f_epr * f_epr);
}

double undo_check(const ProtocolConfig& config) {
  if (!std::holds_alternative<UnitaryEvolution>(config.evolution))
    throw std::invalid_argument("undo_check: unitary mode only");
  if (config.mode != InputMode::EprReference)
    throw std::invalid_argument("undo_check: EPR-reference mode only");
  const PureState psi_in = build_psi_in_pure(config);
  auto [rest, p] = project_pair(psi_in, "D", "Dp",
                                epr_pair_coefficients(config.geom.dim_d()));
  if (p < kPostSelectionFloor)
    throw PostSelectionImpossible("undo_check: P_EPR is numerically zero");
  const PureState out = rest.normalized();
  auto [rest2, p2] = project_pair(out, "C", "Cp",
                                  epr_pair_coefficients(config.geom.dim_c()));
  if (p2 < kPostSelectionFloor) return 0.0;
  const double p3 = epr_probability(rest2.normalized(), "R", "Rp");
  return p2 * p3;
}

BellDecodeResult clifford_bell_decode(const ProtocolConfig& config,
                                      const WeylOperator& outcome) {
  if (!std::holds_alternative<UnitaryEvolution>(config.evolution))
    throw std::invalid_argument("clifford_bell_decode: unitary mode only");
  if (config.mode != InputMode::EprReference)
    throw std::invalid_argument("clifford_bell_decode: EPR-reference mode only");
  if (outcome.dims != config.geom.d_dims())
    throw std::invalid_argument("clifford_bell_decode: outcome label must live on D");
  const std::size_t dd = config.geom.dim_d();
  const PureState psi_in = build_psi_in_pure(config);

  // Bell states (W ⊗ I)|EPR> labelled by the Weyl operators on D.
  const Matrix t_outcome =
      outcome.matrix() / std::sqrt(static_cast<double>(dd));
  auto [measured_raw, p_out] = project_pair(psi_in, "D", "Dp", t_outcome);
  if (p_out < kPostSelectionFloor)
    throw PostSelectionImpossible("clifford_bell_decode: outcome probability is zero");
  const PureState measured = measured_raw.normalized();

  auto [target_raw, p_epr] =
      project_pair(psi_in, "D", "Dp", epr_pair_coefficients(dd));
  if (p_epr < kPostSelectionFloor)
    throw PostSelectionImpossible("clifford_bell_decode: P_EPR is zero");
  const PureState target = target_raw.normalized();

  // C inherits the non-D output sites (already rotated to the leading block).
  std::vector<std::size_t> c_dims;
  {
    std::vector<bool> in_d(config.geom.num_sites(), false);
    for (std::size_t s : config.geom.d_sites) in_d[s] = true;
    for (std::size_t s = 0; s < config.geom.num_sites(); ++s)
      if (!in_d[s]) c_dims.push_back(config.geom.site_dims[s]);
  }
  std::vector<std::size_t> r_dims = config.geom.a_dims();
  if (c_dims.empty()) c_dims.push_back(config.geom.dim_c());

  const double threshold = 1.0 - kEntropyTol;
  for (const auto& p_label : enumerate_weyl(c_dims)) {
    const Matrix pm = p_label.matrix();
    const PureState with_p = apply_on(measured, pm, {"Cp"});
    for (const auto& q_label : enumerate_weyl(r_dims)) {
      const PureState candidate = apply_on(with_p, q_label.matrix(), {"Rp"});
      const double fid =
          std::norm(target.amplitudes().dot(candidate.amplitudes()));
      if (fid > threshold)
        return {p_label, q_label, fid, p_out};
    }
  }
  throw NotCliffordBehavior(
      "clifford_bell_decode: no Weyl correction reaches fidelity 1 - 1e-9 "
      "(expected for non-Clifford evolutions)");
}

std::vector<Vector> state_2_design(std::size_t d) {
  std::vector<Vector> states;
  if (d == 2) {
    const double s = 1.0 / std::sqrt(2.0);
    const cdouble i(0.0, 1.0);
    Vector v(2);
    v << 1, 0; states.push_back(v);
    v << 0, 1; states.push_back(v);
    v << s, s; states.push_back(v);
    v << s, -s; states.push_back(v);
    v << s, i * s; states.push_back(v);
    v << s, -i * s; states.push_back(v);
    return states;
  }
  // Odd prime d: computational basis plus the d quadratic-phase Fourier
  // bases; together these d(d+1) states form a projective 2-design.
  if (d % 2 == 0 || d < 2)
    throw std::invalid_argument("state_2_design: need d = 2 or an odd prime");
  for (std::size_t p = 2; p * p <= d; ++p)
    if (d % p == 0)
      throw std::invalid_argument("state_2_design: d must be prime");
  for (std::size_t m = 0; m < d; ++m) {
    Vector v = Vector::Zero(d);
    v(m) = 1.0;
    states.push_back(v);
  }
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t m = 0; m < d; ++m) {
      Vector v(d);
      for (std::size_t j = 0; j < d; ++j) {
        const double phase = 2.0 * std::numbers::pi *
                             static_cast<double>((k * j * j + m * j) % d) /
                             static_cast<double>(d);
        v(j) = norm * cdouble(std::cos(phase), std::sin(phase));
      }
      states.push_back(v);
    }
  }
  return states;
}

}  // namespace otoclab
