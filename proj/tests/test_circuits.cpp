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

#include "otoclab/circuits.hpp"

#include <cmath>
#include <map>

#include "doctest.h"
#include "otoclab/otoc.hpp"
#include "otoclab/rng.hpp"
#include "otoclab/weyl.hpp"

using namespace otoclab;

TEST_CASE("assembled circuits are unitary and reproducible") {
  for (const NamedCircuit& c :
       {qubit_clifford_scrambler(), classical_scrambler(), qutrit_scrambler()}) {
    CHECK(approx_unitary(c.unitary));
    const Matrix again = assemble_circuit(c.site_dims, c.gates);
    CHECK((again - c.unitary).cwiseAbs().maxCoeff() == 0.0);  // bit-for-bit
  }
}

TEST_CASE("qubit scrambler certificate") {
  const NamedCircuit c = qubit_clifford_scrambler();
  const auto deloc = delocalization_check(c.unitary, c.site_dims);
  CHECK(deloc.maximally_scrambling);
  OtocGeometry g;
  g.site_dims = c.site_dims;
  g.n_a_sites = 1;
  for (std::size_t site : {0ul, 1ul, 2ul}) {
    g.d_sites = {site};
    CHECK(otoc_avg(c.unitary, g) == doctest::Approx(0.25).epsilon(1e-12));
  }
  CHECK(clifford_witness(c.unitary, c.site_dims, 32, 11)
            .consistent_with_clifford);
}

TEST_CASE("qutrit gates and scrambler") {
  // CNOT_{1->2}: |1,1> -> |1,2>; control zero leaves targets alone.
  const Matrix fwd = qutrit_cnot(false);
  Vector v = Vector::Zero(9);
  v(1 * 3 + 1) = 1.0;
  Vector w = fwd * v;
  CHECK(std::abs(w(1 * 3 + 2) - 1.0) < 1e-14);
  for (int j = 0; j < 3; ++j) {
    Vector e = Vector::Zero(9);
    e(j) = 1.0;  // |0, j>
    CHECK(std::abs((fwd * e)(j) - 1.0) < 1e-14);
  }
  // Reversed direction: |i,j> -> |i+j, j>.
  const Matrix rev = qutrit_cnot(true);
  Vector x = Vector::Zero(9);
  x(1 * 3 + 2) = 1.0;  // |1,2>
  CHECK(std::abs((rev * x)(0 * 3 + 2) - 1.0) < 1e-14);  // |0,2> (1+2 = 0 mod 3)

  // U|i,j> = |2i+j, i+j>: check the full basis map.
  const Matrix u = qutrit_scrambler().unitary;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Vector e = Vector::Zero(9);
      e(i * 3 + j) = 1.0;
      const Vector out = u * e;
      const int oi = (2 * i + j) % 3, oj = (i + j) % 3;
      CHECK(std::abs(out(oi * 3 + oj) - 1.0) < 1e-14);
    }
  // U|1,0> = |2,1>.
  Vector e10 = Vector::Zero(9);
  e10(3) = 1.0;
  CHECK(std::abs((u * e10)(2 * 3 + 1) - 1.0) < 1e-14);
}

TEST_CASE("swap gate") {
  const Matrix s = swap_gate(3);
  Vector v = Vector::Zero(9);
  v(1 * 3 + 2) = 1.0;
  CHECK(std::abs((s * v)(2 * 3 + 1) - 1.0) < 1e-14);
  CHECK(approx_equal(s * s, Matrix::Identity(9, 9), 1e-14));
}

TEST_CASE("classical scrambler certificate") {
  const NamedCircuit c = classical_scrambler();
  // Permutation matrix: exactly one 1 per row and column.
  for (int i = 0; i < 8; ++i) {
    int row_ones = 0, col_ones = 0;
    for (int j = 0; j < 8; ++j) {
      const double r = std::abs(c.unitary(i, j));
      const double cc = std::abs(c.unitary(j, i));
      CHECK((r < 1e-14 || std::abs(r - 1.0) < 1e-14));
      row_ones += r > 0.5;
      col_ones += cc > 0.5;
    }
    CHECK(row_ones == 1);
    CHECK(col_ones == 1);
  }
  // Z-sector delocalizes: every one-body Pauli image has weight >= 2 and
  // some Z image reaches weight 3; some X image has weight < 3.
  const auto deloc = delocalization_check(c.unitary, c.site_dims);
  bool z_weight3 = false, x_below3 = false;
  for (const auto& e : deloc.entries) {
    CHECK(e.support.size() >= 2);
    if (e.a == 0 && e.support.size() == 3) z_weight3 = true;
    if (e.b == 0 && e.support.size() < 3) x_below3 = true;
  }
  CHECK(z_weight3);
  CHECK(x_below3);
}

TEST_CASE("haar samples are unitary, deterministic, and left-invariant") {
  const Matrix u1 = haar_sample(16, 123);
  const Matrix u2 = haar_sample(16, 123);
  CHECK((u1 - u2).cwiseAbs().maxCoeff() == 0.0);
  CHECK(approx_unitary(u1));
  const Matrix u3 = haar_sample(16, 124);
  CHECK((u1 - u3).cwiseAbs().maxCoeff() > 1e-3);

  // Kolmogorov-Smirnov on an invariant statistic under fixed left
  // multiplication: s(U) = |<0|U|0>|^2.
  Rng rng(2026);
  const Matrix fixed = haar_sample(8, 55);
  const int n = 300;
  std::vector<double> sa, sb;
  for (int i = 0; i < n; ++i) {
    const Matrix a = haar_sample(8, rng.next_u64());
    const Matrix b = fixed * haar_sample(8, rng.next_u64());
    sa.push_back(std::norm(a(0, 0)));
    sb.push_back(std::norm(b(0, 0)));
  }
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  double dmax = 0.0;
  std::size_t ia = 0, ib = 0;
  while (ia < sa.size() && ib < sb.size()) {
    if (sa[ia] <= sb[ib])
      ++ia;
    else
      ++ib;
    dmax = std::max(dmax,
                    std::abs(static_cast<double>(ia) / n -
                             static_cast<double>(ib) / n));
  }
  const double en = std::sqrt(n * n / (2.0 * n));
  const double lambda = (en + 0.12 + 0.11 / en) * dmax;
  double p = 0.0;
  for (int k = 1; k <= 100; ++k)
    p += 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
  CHECK(p > 0.01);
}

TEST_CASE("clifford samples pass the witness and reproduce their tableau") {
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const Matrix u = clifford_sample(n, rng.next_u64());
    CHECK(approx_unitary(u, 1e-9));
    std::vector<std::size_t> dims(n, 2);
    CHECK(clifford_witness(u, dims, 16, rng.next_u64())
              .consistent_with_clifford);
    // Determinism.
    const Matrix again = clifford_sample(n, rng.base_seed());
    (void)again;
  }
  const Matrix a = clifford_sample(3, 999);
  const Matrix b = clifford_sample(3, 999);
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("single-qubit clifford sampling covers the group uniformly") {
  // 24 elements mod phase; chi-square-style occupancy check.
  Rng rng(4242);
  std::map<std::string, int> counts;
  const int n = 2400;
  for (int i = 0; i < n; ++i) {
    const Matrix u = clifford_sample(1, rng.next_u64());
    std::string key;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        key += std::to_string(std::lround(u(r, c).real() * 1e6)) + ",";
        key += std::to_string(std::lround(u(r, c).imag() * 1e6)) + ";";
      }
    counts[key]++;
  }
  CHECK(counts.size() == 24);
  for (const auto& [key, count] : counts) {
    CHECK(count > 50);   // expectation 100
    CHECK(count < 170);
  }
}

TEST_CASE("clifford ensemble matches the haar mean but not the haar spread") {
  OtocGeometry g;
  g.site_dims = {2, 2, 2};
  g.n_a_sites = 1;
  g.d_sites = {2};
  Rng rng(31337);
  const int n = 120;
  std::vector<double> haar_vals, cliff_vals;
  for (int i = 0; i < n; ++i) {
    haar_vals.push_back(otoc_avg(haar_sample(8, rng.next_u64()), g));
    cliff_vals.push_back(otoc_avg(clifford_sample(3, rng.next_u64()), g));
  }
  const auto mean = [](const std::vector<double>& xs) {
    double m = 0.0;
    for (double x : xs) m += x;
    return m / xs.size();
  };
  const auto stddev = [&](const std::vector<double>& xs) {
    const double m = mean(xs);
    double v = 0.0;
    for (double x : xs) v += (x - m) * (x - m);
    return std::sqrt(v / (xs.size() - 1));
  };
  const double mh = mean(haar_vals), mc = mean(cliff_vals);
  const double sh = stddev(haar_vals), sc = stddev(cliff_vals);
  const double se = std::sqrt(sh * sh / n + sc * sc / n);
  CHECK(std::abs(mh - mc) < 4.0 * se + 1e-3);
  CHECK(sc > 2.0 * sh);  // the spread is not suppressed for Cliffords

  // Haar mean agrees with the exact fourth-moment oracle, and the Haar
  // spread shrinks as the total dimension grows (d = 8 -> d = 16).
  const double exact = haar_mean_otoc_exact(g);
  CHECK(std::abs(mh - exact) < 3.0 * sh / std::sqrt(double(n)) + 1e-3);
  OtocGeometry g16;
  g16.site_dims = {2, 2, 2, 2};
  g16.n_a_sites = 1;
  g16.d_sites = {3};
  std::vector<double> haar16;
  for (int i = 0; i < n; ++i)
    haar16.push_back(otoc_avg(haar_sample(16, rng.next_u64()), g16));
  CHECK(stddev(haar16) < sh);
}
