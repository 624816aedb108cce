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

#include "otoclab/otoc.hpp"

#include <cmath>

#include "otoclab/weyl.hpp"

namespace otoclab {

namespace {

void check_real(const cdouble& z, double tol, const char* what) {
  if (std::abs(z.imag()) > tol)
    throw std::runtime_error(std::string(what) + ": imaginary part " +
                             std::to_string(z.imag()) + " exceeds tolerance");
}

cdouble four_point_trace(const Matrix& oa, const Matrix& w1, const Matrix& w2,
                         std::size_t d) {
  // Tr(O_A w1 O_A^dagger w2)/d
  return (oa * w1 * oa.adjoint() * w2).trace() / static_cast<double>(d);
}

}  // namespace

cdouble otoc_point(const Matrix& u, const OtocGeometry& geom,
                   const Matrix& op_a, const Matrix& op_d) {
  geom.validate();
  const Matrix oa = geom.embed_input(op_a);
  const Matrix od = geom.embed_output(op_d);
  const Matrix w = u.adjoint() * od * u;
  return four_point_trace(oa, w, w.adjoint(), geom.dim());
}

cdouble otoc_doubled(const Matrix& u, const OtocGeometry& geom,
                     const Matrix& op_a, const Matrix& op_d) {
  geom.validate();
  const std::size_t da = geom.dim_a(), db = geom.dim_b();
  const Matrix u_eff = geom.effective_unitary(u);
  PureState chain =
      tensor(epr_state(da, "A", "Ap"), epr_state(db, "B", "Bp"));
  chain = permute_registers(chain, {"A", "B", "Bp", "Ap"});
  // The adjoint insertion makes the doubled expectation reproduce the
  // operator ordering of the four-point trace exactly (the two differ by
  // O_A <-> O_A^dagger, i.e. by complex conjugation for Weyl phases).
  PureState phi = apply_on(chain, Matrix(op_a.adjoint()), {"A"});
  phi = apply_on(phi, u_eff, {"A", "B"});
  phi = apply_on(phi, u_eff.conjugate(), {"Ap", "Bp"});
  phi = permute_registers(phi, {"A", "B", "Ap", "Bp"});
  phi = merge_registers(phi, {"A", "B"}, "M");
  phi = merge_registers(phi, {"Ap", "Bp"}, "Mp");
  phi = split_register(phi, "M", {{"C", geom.dim_c()}, {"D", geom.dim_d()}});
  phi = split_register(phi, "Mp",
                       {{"Cp", geom.dim_c()}, {"Dp", geom.dim_d()}});
  const Matrix pair_op = kron(op_d, op_d.conjugate());
  return expectation(phi, pair_op, {"D", "Dp"});
}

double otoc_avg(const Matrix& u, const OtocGeometry& geom) {
  geom.validate();
  const std::size_t d = geom.dim();
  const auto was = enumerate_weyl(geom.a_dims());
  const auto wds = enumerate_weyl(geom.d_dims());
  std::vector<Matrix> oas;
  oas.reserve(was.size());
  for (const auto& wa : was) oas.push_back(geom.embed_input(wa.matrix()));
  std::vector<cdouble> vals;
  vals.reserve(was.size() * wds.size());
  for (const auto& wd : wds) {
    const Matrix od = geom.embed_output(wd.matrix());
    const Matrix w = u.adjoint() * od * u;
    const Matrix wdag = w.adjoint();
    for (const auto& oa : oas)
      vals.push_back(four_point_trace(oa, w, wdag, d));
  }
  const cdouble avg =
      pairwise_sum(vals) / static_cast<double>(was.size() * wds.size());
  check_real(avg, kStructuralTol, "otoc_avg");
  return avg.real();
}

double scrambled_value(std::size_t d_a, std::size_t d_d) {
  if (d_a < 2 || d_d < 2)
    throw std::invalid_argument("scrambled_value: dims must be >= 2");
  const double a = static_cast<double>(d_a) * static_cast<double>(d_a);
  const double d = static_cast<double>(d_d) * static_cast<double>(d_d);
  return 1.0 / a + 1.0 / d - 1.0 / (a * d);
}

cdouble otoc_channel_point(const Channel& q, const OtocGeometry& geom,
                           const Matrix& op_a, const Matrix& op_d) {
  geom.validate();
  if (q.dim() != geom.dim())
    throw std::invalid_argument("otoc_channel_point: dim mismatch");
  const Matrix oa = geom.embed_input(op_a);
  const Matrix w = q.heisenberg(geom.embed_output(op_d));
  return four_point_trace(oa, w, w.adjoint(), geom.dim());
}

double otoc_channel_avg(const Channel& q, const OtocGeometry& geom) {
  geom.validate();
  if (q.dim() != geom.dim())
    throw std::invalid_argument("otoc_channel_avg: dim mismatch");
  const std::size_t d = geom.dim();
  const auto was = enumerate_weyl(geom.a_dims());
  const auto wds = enumerate_weyl(geom.d_dims());
  std::vector<Matrix> oas;
  oas.reserve(was.size());
  for (const auto& wa : was) oas.push_back(geom.embed_input(wa.matrix()));
  std::vector<cdouble> vals;
  vals.reserve(was.size() * wds.size());
  for (const auto& wd : wds) {
    const Matrix w = q.heisenberg(geom.embed_output(wd.matrix()));
    const Matrix wdag = w.adjoint();
    for (const auto& oa : oas)
      vals.push_back(four_point_trace(oa, w, wdag, d));
  }
  const cdouble avg =
      pairwise_sum(vals) / static_cast<double>(was.size() * wds.size());
  check_real(avg, kEntropyTol, "otoc_channel_avg");
  return avg.real();
}

cdouble otoc_coherent(const Matrix& u, const Matrix& v,
                      const OtocGeometry& geom, const Matrix& op_a,
                      const Matrix& op_d) {
  geom.validate();
  if (u.rows() != v.rows())
    throw std::invalid_argument("otoc_coherent: U and V dims differ");
  const Matrix oa = geom.embed_input(op_a);
  const Matrix od = geom.embed_output(op_d);
  const Matrix w_fwd = u.adjoint() * od * u;
  const Matrix w_bwd = v.adjoint() * od.adjoint() * v;
  return four_point_trace(oa, w_fwd, w_bwd, geom.dim());
}

double otoc_coherent_avg(const Matrix& u, const Matrix& v,
                         const OtocGeometry& geom) {
  geom.validate();
  const std::size_t d = geom.dim();
  const auto was = enumerate_weyl(geom.a_dims());
  const auto wds = enumerate_weyl(geom.d_dims());
  std::vector<Matrix> oas;
  oas.reserve(was.size());
  for (const auto& wa : was) oas.push_back(geom.embed_input(wa.matrix()));
  std::vector<cdouble> vals;
  vals.reserve(was.size() * wds.size());
  for (const auto& wd : wds) {
    const Matrix od = geom.embed_output(wd.matrix());
    const Matrix w_fwd = u.adjoint() * od * u;
    const Matrix w_bwd = v.adjoint() * od.adjoint() * v;
    for (const auto& oa : oas)
      vals.push_back(four_point_trace(oa, w_fwd, w_bwd, d));
  }
  const cdouble avg =
      pairwise_sum(vals) / static_cast<double>(was.size() * wds.size());
  check_real(avg, kEntropyTol, "otoc_coherent_avg");
  return avg.real();
}

FiniteTempOtoc otoc_finite_temp(const Matrix& u, const OtocGeometry& geom,
                                const Matrix& op_x, const Matrix& op_y,
                                const Matrix& op_z, const Matrix& op_w,
                                const Matrix& rho_ab, OtocSide side) {
  geom.validate();
  const std::size_t d = geom.dim();
  if (rho_ab.rows() != rho_ab.cols() ||
      static_cast<std::size_t>(rho_ab.rows()) != d)
    throw std::invalid_argument("otoc_finite_temp: rho_AB side mismatch");
  if ((rho_ab - rho_ab.adjoint()).cwiseAbs().maxCoeff() > kStructuralTol ||
      std::abs(rho_ab.trace() - cdouble(1.0)) > kStructuralTol)
    throw std::invalid_argument(
        "otoc_finite_temp: rho_AB must be Hermitian with unit trace");

  // Factorization test: compare against the product of its marginals.
  const std::size_t da = geom.dim_a(), db = geom.dim_b();
  SystemLayout lab({{"A", da}, {"B", db}});
  DensityMatrix rho(lab, rho_ab, /*validate=*/false);
  const Matrix rho_a = partial_trace(rho, {"A"}).matrix();
  const Matrix rho_b = partial_trace(rho, {"B"}).matrix();
  const bool factorized =
      (rho_ab - kron(rho_a, rho_b)).cwiseAbs().maxCoeff() <= 1e-8;

  const Matrix x = geom.embed_input(op_x);
  const Matrix z = geom.embed_input(op_z);
  const Matrix y_t = u.adjoint() * geom.embed_output(op_y) * u;
  const Matrix w_t = u.adjoint() * geom.embed_output(op_w) * u;

  cdouble value;
  if (side == OtocSide::OneSided) {
    value = (x * y_t * z * w_t * rho_ab).trace();
  } else {
    const Matrix root = psd_sqrt(rho_ab);
    value = (x * y_t * root * z * w_t * root).trace();
  }
  return {value, factorized};
}

double haar_mean_otoc_exact(const OtocGeometry& geom) {
  geom.validate();
  const double d = static_cast<double>(geom.dim());
  // Twirl of a traceless Weyl W: E[W M W^dagger] = alpha M + beta Tr(M) I,
  // fixed by Tr-consistency on M = W^dagger and M = I.
  Eigen::Matrix2d lhs;
  lhs << d * d, d, d, d * d;
  Eigen::Vector2d rhs(0.0, d);
  const Eigen::Vector2d sol = lhs.fullPivLu().solve(rhs);
  const double alpha = sol(0);
  const double na = static_cast<double>(geom.dim_a() * geom.dim_a());
  const double nd = static_cast<double>(geom.dim_d() * geom.dim_d());
  const double identity_pairs = na + nd - 1.0;
  const double traceless_pairs = (na - 1.0) * (nd - 1.0);
  return (identity_pairs + traceless_pairs * alpha) / (na * nd);
}

}  // namespace otoclab
