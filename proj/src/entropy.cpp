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

#include "otoclab/entropy.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <set>

namespace otoclab {

namespace {

constexpr double kLog2e = 1.4426950408889634073599246810019;

Eigen::VectorXd clipped_spectrum(const Matrix& m, const char* what) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -kPsdClipTol)
      throw PsdViolation(std::string(what) + ": eigenvalue " +
                         std::to_string(ev(i)) + " below -1e-9");
    if (ev(i) < 0.0) ev(i) = 0.0;
  }
  return ev;
}

void check_disjoint(const std::vector<std::string>& x,
                    const std::vector<std::string>& y) {
  std::set<std::string> sx(x.begin(), x.end());
  for (const auto& n : y)
    if (sx.count(n))
      throw std::invalid_argument("mutual information: regions overlap at '" +
                                  n + "'");
}

double region_entropy(const DensityMatrix& rho,
                      const std::vector<std::string>& names,
                      double (*entropy)(const DensityMatrix&)) {
  if (names.size() == rho.layout().num_registers()) return entropy(rho);
  return entropy(partial_trace(rho, names));
}

// Thermofield-double pair coefficients with the given marginal on the
// primary (first) register of the pair; the mirror side carries rho^T.
Matrix tfd_pair_coefficients(const Matrix& rho) {
  return psd_sqrt(rho);
}

Matrix transpose_copy(const Matrix& m) { return m.transpose(); }

void check_state_matrix(const Matrix& rho, std::size_t dim, const char* what) {
  if (rho.rows() != rho.cols() || static_cast<std::size_t>(rho.rows()) != dim)
    throw std::invalid_argument(std::string(what) + ": shape mismatch");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kStructuralTol)
    throw std::invalid_argument(std::string(what) + ": not Hermitian");
  if (std::abs(rho.trace() - cdouble(1.0)) > kStructuralTol)
    throw std::invalid_argument(std::string(what) + ": trace differs from 1");
}

}  // namespace

double renyi2_bits(const DensityMatrix& rho) {
  const double purity = rho.purity();
  if (purity <= 0.0)
    throw PsdViolation("renyi2: nonpositive purity " + std::to_string(purity));
  return -std::log2(purity);
}

double von_neumann_bits(const DensityMatrix& rho) {
  const Eigen::VectorXd ev = clipped_spectrum(rho.matrix(), "von_neumann");
  std::vector<double> terms;
  terms.reserve(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > kSpectrumCutoff) terms.push_back(-ev(i) * std::log2(ev(i)));
  return pairwise_sum(terms);
}

double mutual_info_renyi2(const DensityMatrix& rho,
                          const std::vector<std::string>& x,
                          const std::vector<std::string>& y) {
  check_disjoint(x, y);
  std::vector<std::string> xy = x;
  xy.insert(xy.end(), y.begin(), y.end());
  return region_entropy(rho, x, renyi2_bits) +
         region_entropy(rho, y, renyi2_bits) -
         region_entropy(rho, xy, renyi2_bits);
}

double mutual_info_von_neumann(const DensityMatrix& rho,
                               const std::vector<std::string>& x,
                               const std::vector<std::string>& y) {
  check_disjoint(x, y);
  std::vector<std::string> xy = x;
  xy.insert(xy.end(), y.begin(), y.end());
  return region_entropy(rho, x, von_neumann_bits) +
         region_entropy(rho, y, von_neumann_bits) -
         region_entropy(rho, xy, von_neumann_bits);
}

EntropyReport entropy_report(const DensityMatrix& rho) {
  EntropyReport r{};
  const auto s2 = [&](const std::vector<std::string>& names) {
    return region_entropy(rho, names, renyi2_bits);
  };
  const auto vn = [&](const std::vector<std::string>& names) {
    return region_entropy(rho, names, von_neumann_bits);
  };
  r.s2_r = s2({"R"});
  r.s2_c = s2({"C"});
  r.s2_d = s2({"D"});
  r.s2_bp = s2({"Bp"});
  r.s2_bpd = s2({"Bp", "D"});
  r.s2_rbpd = s2({"R", "Bp", "D"});
  r.vn_r = vn({"R"});
  r.vn_c = vn({"C"});
  r.vn_d = vn({"D"});
  r.vn_bp = vn({"Bp"});
  r.vn_bpd = vn({"Bp", "D"});
  r.vn_rbpd = vn({"R", "Bp", "D"});
  r.i2_r_bpd = r.s2_r + r.s2_bpd - r.s2_rbpd;
  r.otoc_combination = r.s2_bpd + r.s2_d - r.s2_bp;
  r.delta = std::exp2(r.i2_r_bpd - r.otoc_combination);
  r.delta_alt = std::exp2(r.s2_c - r.s2_rbpd);
  const double d_c = static_cast<double>(rho.layout().dim_of("C"));
  r.delta_exact = d_c * std::exp2(-r.s2_rbpd);
  return r;
}

NoiseDelta noise_delta(const Channel& q, const OtocGeometry& geom) {
  const DensityMatrix rho = channel_state_rep(q, geom);
  EntropyReport report = entropy_report(rho);
  NoiseDelta out;
  out.report = report;
  out.delta = report.delta_exact;
  out.forms_agree =
      std::abs(report.delta - report.delta_exact) <= kEntropyTol &&
      std::abs(report.delta_alt - report.delta_exact) <= kEntropyTol;
  // Unital channel => maximally mixed output ensemble => the entropy-ratio
  // forms are exact. A disagreement there is an implementation bug.
  Matrix kk = Matrix::Zero(q.dim(), q.dim());
  for (const auto& k : q.kraus()) kk += k * k.adjoint();
  const bool unital =
      (kk - Matrix::Identity(q.dim(), q.dim())).cwiseAbs().maxCoeff() <= 1e-10;
  if (unital && !out.forms_agree)
    throw std::runtime_error(
        "noise_delta: the entropy-ratio forms deviate from the exact value "
        "on a unital channel (" + std::to_string(report.delta) + ", " +
        std::to_string(report.delta_alt) + " vs " +
        std::to_string(report.delta_exact) + ")");
  return out;
}

double depolarizing_delta(double p, std::size_t d_d) {
  const double dd2 = static_cast<double>(d_d) * static_cast<double>(d_d);
  return (1.0 - p) * (1.0 - p) + (2.0 * p - p * p) / dd2;
}

namespace {

struct Spectrum {
  Eigen::VectorXd values;
  Matrix vectors;
};

Spectrum psd_spectrum(const Matrix& m, const char* what) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -kPsdClipTol)
      throw PsdViolation(std::string(what) + ": eigenvalue below -1e-9");
    if (ev(i) < 0.0) ev(i) = 0.0;
  }
  return {ev, es.eigenvectors()};
}

// Matrix power on the support; requires supp(f) ⊆ supp(g) unless flagged off
// by the caller having already validated.
Matrix support_power(const Spectrum& s, double expo, double cutoff) {
  Eigen::VectorXd powered = Eigen::VectorXd::Zero(s.values.size());
  for (Eigen::Index i = 0; i < s.values.size(); ++i)
    if (s.values(i) > cutoff) powered(i) = std::pow(s.values(i), expo);
  return s.vectors * powered.cast<cdouble>().asDiagonal() *
         s.vectors.adjoint();
}

void check_support(const Spectrum& g, const Matrix& f, double cutoff,
                   bool allow_singular, const char* what) {
  bool singular = false;
  Matrix null_proj = Matrix::Zero(f.rows(), f.cols());
  for (Eigen::Index i = 0; i < g.values.size(); ++i)
    if (g.values(i) <= cutoff) {
      singular = true;
      null_proj += g.vectors.col(i) * g.vectors.col(i).adjoint();
    }
  if (!singular) return;
  if (!allow_singular)
    throw std::invalid_argument(std::string(what) +
                                ": g is singular; pass allow_singular_g to "
                                "compute on its support");
  const double leak = (null_proj * f * null_proj).cwiseAbs().maxCoeff();
  if (leak > 1e-10)
    throw std::invalid_argument(std::string(what) +
                                ": support of f is not contained in the "
                                "support of g");
}

double spectrum_cutoff(const Eigen::VectorXd& ev) {
  const double top = ev.size() ? ev.maxCoeff() : 0.0;
  return std::max(top, 1.0) * kSpectrumCutoff;
}

}  // namespace

double sandwiched_renyi2_divergence(const Matrix& f, const Matrix& g,
                                    bool allow_singular_g) {
  if (f.rows() != f.cols() || g.rows() != g.cols() || f.rows() != g.rows())
    throw std::invalid_argument("sandwiched divergence: shape mismatch");
  psd_spectrum(f, "sandwiched divergence (f)");
  const Spectrum sg = psd_spectrum(g, "sandwiched divergence (g)");
  const double cutoff = spectrum_cutoff(sg.values);
  check_support(sg, f, cutoff, allow_singular_g, "sandwiched divergence");
  const double tr_f = f.trace().real();
  if (tr_f <= 0.0)
    throw std::invalid_argument("sandwiched divergence: Tr f <= 0");
  const Matrix g_quarter_inv = support_power(sg, -0.25, cutoff);
  const Matrix core = g_quarter_inv * f * g_quarter_inv;
  const double val = (core * core).trace().real() / tr_f;
  return std::log2(val);
}

double relative_entropy_bits(const Matrix& f, const Matrix& g,
                             bool allow_singular_g) {
  if (f.rows() != f.cols() || g.rows() != g.cols() || f.rows() != g.rows())
    throw std::invalid_argument("relative entropy: shape mismatch");
  const Spectrum sf = psd_spectrum(f, "relative entropy (f)");
  const Spectrum sg = psd_spectrum(g, "relative entropy (g)");
  const double cutoff_g = spectrum_cutoff(sg.values);
  check_support(sg, f, cutoff_g, allow_singular_g, "relative entropy");
  const double tr_f = f.trace().real();
  if (tr_f <= 0.0) throw std::invalid_argument("relative entropy: Tr f <= 0");
  const double cutoff_f = spectrum_cutoff(sf.values);
  double tr_f_log_f = 0.0;
  for (Eigen::Index i = 0; i < sf.values.size(); ++i)
    if (sf.values(i) > cutoff_f)
      tr_f_log_f += sf.values(i) * std::log(sf.values(i));
  Eigen::VectorXd log_g = Eigen::VectorXd::Zero(sg.values.size());
  for (Eigen::Index i = 0; i < sg.values.size(); ++i)
    if (sg.values(i) > cutoff_g) log_g(i) = std::log(sg.values(i));
  const Matrix log_g_mat =
      sg.vectors * log_g.cast<cdouble>().asDiagonal() * sg.vectors.adjoint();
  const double tr_f_log_g = (f * log_g_mat).trace().real();
  return (tr_f_log_f - tr_f_log_g) / tr_f * kLog2e;
}

FiniteTempAmplitude finite_temp_amplitude(const Matrix& u,
                                          const OtocGeometry& geom,
                                          const Matrix& rho_a,
                                          const Matrix& rho_b,
                                          const Matrix& rho_d_target) {
  geom.validate();
  const std::size_t da = geom.dim_a(), db = geom.dim_b(), dd = geom.dim_d();
  check_state_matrix(rho_a, da, "finite_temp_amplitude: rho_A");
  check_state_matrix(rho_b, db, "finite_temp_amplitude: rho_B");
  check_state_matrix(rho_d_target, dd, "finite_temp_amplitude: rho_D");
  const Matrix u_eff = geom.effective_unitary(u);
  if (static_cast<std::size_t>(u.rows()) != geom.dim())
    throw std::invalid_argument("finite_temp_amplitude: U dim mismatch");

  // Pair coefficients. The forward-copy registers (A, B, D) carry the given
  // ensembles; mirror registers carry transposes (EPR transpose identity).
  const Matrix t_ra = tfd_pair_coefficients(transpose_copy(rho_a));
  const Matrix t_bbp = tfd_pair_coefficients(rho_b);
  const Matrix t_aprp = tfd_pair_coefficients(transpose_copy(rho_a));
  const Matrix t_ddp = tfd_pair_coefficients(rho_d_target);

  const auto pair_state = [](const Matrix& t, const std::string& first,
                             const std::string& second) {
    const std::size_t d = t.rows();
    SystemLayout layout({{first, d}, {second, d}});
    Vector amps(d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) amps(i * d + j) = t(i, j);
    return PureState(std::move(layout), std::move(amps),
                     /*allow_unnormalized=*/true)
        .normalized();
  };

  // Four-register state for the mutual information I(R, BpD).
  PureState psi4 = tensor(pair_state(t_ra, "R", "A"),
                          pair_state(t_bbp, "B", "Bp"));
  psi4 = apply_on(psi4, u_eff, {"A", "B"});
  psi4 = merge_registers(psi4, {"A", "B"}, "AB");
  psi4 = split_register(psi4, "AB",
                        {{"C", geom.dim_c()}, {"D", geom.dim_d()}});
  const DensityMatrix rho4 = to_density(psi4.normalized());
  const double mi_vn = mutual_info_von_neumann(rho4, {"R"}, {"Bp", "D"});
  const double mi_r2 = mutual_info_renyi2(rho4, {"R"}, {"Bp", "D"});

  // Six-register protocol state and the thermofield-double projection.
  PureState psi6 = tensor(tensor(pair_state(t_ra, "R", "A"),
                                 pair_state(t_bbp, "B", "Bp")),
                          pair_state(t_aprp, "Ap", "Rp"));
  psi6 = apply_on(psi6, u_eff, {"A", "B"});
  psi6 = apply_on(psi6, u_eff.conjugate(), {"Ap", "Bp"});
  psi6 = permute_registers(psi6, {"R", "A", "B", "Ap", "Bp", "Rp"});
  psi6 = merge_registers(psi6, {"A", "B"}, "AB");
  psi6 = merge_registers(psi6, {"Ap", "Bp"}, "ABp");
  psi6 = split_register(psi6, "AB",
                        {{"C", geom.dim_c()}, {"D", geom.dim_d()}});
  psi6 = split_register(psi6, "ABp",
                        {{"Cp", geom.dim_c()}, {"Dp", geom.dim_d()}});
  const double p = project_pair(psi6.normalized(), "D", "Dp", t_ddp).second;
  if (p < kPostSelectionFloor)
    throw PostSelectionImpossible(
        "finite_temp_amplitude: projection amplitude is numerically zero");

  FiniteTempAmplitude out{};
  out.p = p;
  out.bound_bits = -std::log2(p);
  out.mi_von_neumann = mi_vn;
  out.mi_renyi2 = mi_r2;

  // Measure the bound's preconditions on this instance.
  const Matrix out_state = u_eff * kron(rho_a, rho_b) * u_eff.adjoint();
  SystemLayout cd({{"C", geom.dim_c()}, {"D", geom.dim_d()}});
  const DensityMatrix rho_cd(cd, out_state, /*validate=*/false);
  const Matrix rho_c_m = partial_trace(rho_cd, {"C"}).matrix();
  const Matrix rho_d_m = partial_trace(rho_cd, {"D"}).matrix();
  out.target_matches_marginal =
      (rho_d_m - rho_d_target).cwiseAbs().maxCoeff() <= 1e-8;
  out.output_factorized =
      (out_state - kron(rho_c_m, rho_d_m)).cwiseAbs().maxCoeff() <= 1e-8;
  out.bound_asserted = out.target_matches_marginal && out.output_factorized;
  if (out.bound_asserted && mi_vn < out.bound_bits - kEntropyTol)
    throw std::runtime_error(
        "finite_temp_amplitude: mutual-information bound violated (I = " +
        std::to_string(mi_vn) + ", -log2 P = " + std::to_string(out.bound_bits) +
        ")");

  // Recorded relation to the printed divergence expression; the reduced
  // state is kept in layout order (D, Bp).
  try {
    const Matrix f = partial_trace(rho4, {"D", "Bp"}).matrix();
    const Matrix rho_bp = partial_trace(rho4, {"Bp"}).matrix();
    const Spectrum st = psd_spectrum(rho_d_target, "finite_temp (target)");
    const Matrix target_inv =
        support_power(st, -1.0, spectrum_cutoff(st.values));
    const Matrix g = kron(target_inv, rho_bp);
    // gap = log2 P - D2; zero when the printed expression is exact.
    out.printed_divergence_gap =
        -out.bound_bits - sandwiched_renyi2_divergence(f, g, true);
  } catch (const std::exception&) {
    out.printed_divergence_gap = std::nullopt;
  }
  return out;
}

}  // namespace otoclab
