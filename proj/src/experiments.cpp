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

#include "otoclab/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "otoclab/circuits.hpp"
#include "otoclab/entropy.hpp"
#include "otoclab/grover.hpp"
#include "otoclab/otoc.hpp"
#include "otoclab/protocol.hpp"
#include "otoclab/rng.hpp"

namespace otoclab {

namespace {

constexpr const char* kLibraryVersion = "0.1.0";

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void Record::add(const std::string& key, const std::string& value) {
  fields_.emplace_back(key, value);
}
void Record::add(const std::string& key, double value) {
  fields_.emplace_back(key, value);
}
void Record::add(const std::string& key, std::uint64_t value) {
  fields_.emplace_back(key, value);
}
void Record::add(const std::string& key, bool value) {
  fields_.emplace_back(key, value);
}

std::string Record::to_ndjson() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : fields_) {
    if (!first) out += ",";
    first = false;
    out += "\"" + json_escape(k) + "\":";
    if (std::holds_alternative<std::string>(v))
      out += "\"" + json_escape(std::get<std::string>(v)) + "\"";
    else if (std::holds_alternative<double>(v))
      out += format_double(std::get<double>(v));
    else if (std::holds_alternative<std::uint64_t>(v))
      out += std::to_string(std::get<std::uint64_t>(v));
    else
      out += std::get<bool>(v) ? "true" : "false";
  }
  out += "}";
  return out;
}

std::string Record::csv_header() const {
  std::string out;
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    if (i) out += ",";
    out += fields_[i].first;
  }
  return out;
}

std::string Record::csv_row() const {
  std::string out;
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    if (i) out += ",";
    const auto& v = fields_[i].second;
    if (std::holds_alternative<std::string>(v))
      out += std::get<std::string>(v);
    else if (std::holds_alternative<double>(v))
      out += format_double(std::get<double>(v));
    else if (std::holds_alternative<std::uint64_t>(v))
      out += std::to_string(std::get<std::uint64_t>(v));
    else
      out += std::get<bool>(v) ? "true" : "false";
  }
  return out;
}

namespace {

using nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check_keys(const json& obj, const char* where,
                const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key))
      throw ConfigError(std::string(where) + ": unknown key '" + key + "'");
  }
}

struct CircuitSpec {
  std::string name;
  std::vector<std::size_t> site_dims;
  Matrix u;
};

CircuitSpec from_named(const NamedCircuit& c) {
  return {c.name, c.site_dims, c.unitary};
}

CircuitSpec parse_circuit(const json& j) {
  if (!j.is_object()) throw ConfigError("circuit: expected an object");
  check_keys(j, "circuit",
             {"name", "d", "haar", "clifford", "site_dims", "gates"});
  if (j.contains("name")) {
    const std::string name = j.at("name").get<std::string>();
    if (name == "qubit_clifford_scrambler")
      return from_named(qubit_clifford_scrambler());
    if (name == "classical_scrambler") return from_named(classical_scrambler());
    if (name == "qutrit_scrambler") return from_named(qutrit_scrambler());
    if (name == "swap") {
      const std::size_t d = j.value("d", 2);
      return {"swap", {d, d}, swap_gate(d)};
    }
    throw ConfigError("circuit: unknown name '" + name + "'");
  }
  if (j.contains("haar")) {
    const json& h = j.at("haar");
    check_keys(h, "circuit.haar", {"site_dims", "seed"});
    std::vector<std::size_t> dims =
        h.at("site_dims").get<std::vector<std::size_t>>();
    std::size_t d = 1;
    for (std::size_t x : dims) d *= x;
    return {"haar", dims, haar_sample(d, h.at("seed").get<std::uint64_t>())};
  }
  if (j.contains("clifford")) {
    const json& c = j.at("clifford");
    check_keys(c, "circuit.clifford", {"n_qubits", "seed"});
    const std::size_t n = c.at("n_qubits").get<std::size_t>();
    return {"clifford", std::vector<std::size_t>(n, 2),
            clifford_sample(n, c.at("seed").get<std::uint64_t>())};
  }
  if (j.contains("gates")) {
    std::vector<std::size_t> dims =
        j.at("site_dims").get<std::vector<std::size_t>>();
    std::vector<Gate> gates;
    for (const json& g : j.at("gates")) {
      check_keys(g, "circuit.gates[]", {"kind", "targets"});
      gates.push_back({g.at("kind").get<std::string>(),
                       g.at("targets").get<std::vector<std::size_t>>()});
    }
    return {"gate_list", dims, assemble_circuit(dims, gates)};
  }
  throw ConfigError("circuit: need one of name/haar/clifford/gates");
}

OtocGeometry parse_geometry(const json& config, const CircuitSpec& circuit) {
  OtocGeometry geom;
  geom.site_dims = circuit.site_dims;
  geom.n_a_sites = config.value("n_a_sites", 1);
  geom.d_sites =
      config.value("d_sites", std::vector<std::size_t>{circuit.site_dims.size() - 1});
  try {
    geom.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("geometry: ") + e.what());
  }
  return geom;
}

// Hermitian Weyl generator on the D block (qubit D for the (1,1) label).
Matrix hermitian_weyl_on_d(const OtocGeometry& geom, int a, int b) {
  const std::size_t dd = geom.dim_d();
  if (a < 0 || b < 0 || a >= static_cast<int>(dd) || b >= static_cast<int>(dd))
    throw ConfigError("coherent noise: weyl label out of range");
  Matrix w = weyl_site_matrix(dd, a, b);
  if ((w - w.adjoint()).cwiseAbs().maxCoeff() > kStructuralTol) {
    const Matrix wi = cdouble(0, 1) * w;
    if ((wi - wi.adjoint()).cwiseAbs().maxCoeff() > kStructuralTol)
      throw ConfigError(
          "coherent noise: label does not yield a Hermitian generator; use a "
          "qubit D region");
    w = wi;
  }
  return w;
}

Matrix coherent_error(const OtocGeometry& geom, double theta, int a, int b) {
  const std::size_t d = geom.dim();
  const Matrix h =
      kron(Matrix::Identity(geom.dim_c(), geom.dim_c()),
           hermitian_weyl_on_d(geom, a, b));
  const Matrix perm = geom.output_permutation();
  return perm.adjoint() *
         (std::cos(theta) * Matrix::Identity(d, d) +
          cdouble(0, 1) * std::sin(theta) * h) *
         perm;
}

EvolutionModel parse_evolution(const json& config, const CircuitSpec& circuit,
                               const OtocGeometry& geom) {
  if (!config.contains("noise")) return UnitaryEvolution{circuit.u};
  const json& n = config.at("noise");
  check_keys(n, "noise", {"type", "p", "theta", "weyl"});
  const std::string type = n.at("type").get<std::string>();
  if (type == "depolarizing")
    return NoisyEvolution{
        depolarizing_channel(circuit.u, n.at("p").get<double>())};
  if (type == "coherent") {
    const double theta = n.at("theta").get<double>();
    const auto weyl = n.value("weyl", std::vector<int>{0, 1});
    if (weyl.size() != 2) throw ConfigError("noise.weyl: expected [a, b]");
    const Matrix e = coherent_error(geom, theta, weyl[0], weyl[1]);
    return CoherentEvolution{circuit.u, circuit.u * e};
  }
  throw ConfigError("noise.type: unknown '" + type + "'");
}

struct Context {
  std::uint64_t seed = 0;
  std::string config_hash;
  double tol_scale = 1.0;
};

void add_provenance(Record& r, const Context& ctx, const std::string& kind,
                    std::uint64_t point) {
  r.add("experiment", kind);
  r.add("config_hash", ctx.config_hash);
  r.add("seed", ctx.seed);
  r.add("point", point);
  r.add("version", std::string(kLibraryVersion));
}

void add_decoding_report(Record& r, const DecodingReport& report) {
  r.add("mode", report.mode_name);
  r.add("d_a", static_cast<std::uint64_t>(report.d_a));
  r.add("d_d", static_cast<std::uint64_t>(report.d_d));
  r.add("p_epr", report.p_epr);
  r.add("f_epr", report.f_epr);
  r.add("pf", report.pf);
  r.add("delta", static_cast<double>(report.d_a * report.d_a) * report.pf);
  if (report.otoc_avg_forward) r.add("otoc_avg", *report.otoc_avg_forward);
  if (report.i2_r_bpd) r.add("i2_r_bpd", *report.i2_r_bpd);
  if (report.delta_entropy) r.add("delta_entropy", *report.delta_entropy);
  if (report.eta_measured) r.add("eta_measured", *report.eta_measured);
  if (report.eta_true) r.add("eta_true", *report.eta_true);
  if (report.eta_input_frame)
    r.add("eta_input_frame", *report.eta_input_frame);
  if (report.undo) r.add("undo", *report.undo);
  if (report.bounds.coherent_otoc_bound)
    r.add("coherent_otoc_bound", *report.bounds.coherent_otoc_bound);
  r.add("mi_bound_bits", report.bounds.mi_bound_bits);
  r.add("fidelity_otoc_bound", report.bounds.fidelity_otoc_bound);
  r.add("rbar_marginal_distance", report.rbar_marginal_distance);
  if (report.fidelity_spread) {
    r.add("fidelity_spread", *report.fidelity_spread);
    r.add("bounds_reliable", report.bounds_reliable);
  }
  if (report.entropy) {
    const EntropyReport& e = *report.entropy;
    r.add("s2_r", e.s2_r);
    r.add("s2_c", e.s2_c);
    r.add("s2_d", e.s2_d);
    r.add("s2_bp", e.s2_bp);
    r.add("s2_bpd", e.s2_bpd);
    r.add("s2_rbpd", e.s2_rbpd);
    r.add("vn_r", e.vn_r);
    r.add("vn_c", e.vn_c);
    r.add("vn_d", e.vn_d);
    r.add("vn_bp", e.vn_bp);
    r.add("vn_bpd", e.vn_bpd);
    r.add("vn_rbpd", e.vn_rbpd);
    r.add("otoc_combination", e.otoc_combination);
  }
}

using PointTask = std::function<Record()>;

std::vector<Record> run_points(std::size_t workers,
                               const std::vector<PointTask>& tasks) {
  std::vector<Record> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      try {
        results[i] = tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        try {
          results[i] = tasks[i]();
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

// ---------------------------------------------------------------------------
// Experiment kinds
// ---------------------------------------------------------------------------

std::vector<Record> run_otoc(const json& config, const Context& ctx) {
  check_keys(config, "otoc config",
             {"experiment", "seed", "circuit", "n_a_sites", "d_sites",
              "noise"});
  const CircuitSpec circuit = parse_circuit(config.at("circuit"));
  const OtocGeometry geom = parse_geometry(config, circuit);
  Record r;
  add_provenance(r, ctx, "otoc", 0);
  r.add("circuit", circuit.name);
  if (config.contains("noise")) {
    const EvolutionModel ev = parse_evolution(config, circuit, geom);
    const auto* noisy = std::get_if<NoisyEvolution>(&ev);
    if (noisy == nullptr)
      throw ConfigError("otoc: only depolarizing noise is supported here");
    const auto& q = noisy->q;
    r.add("otoc_channel_avg", otoc_channel_avg(q, geom));
    const EntropyReport rep = entropy_report(channel_state_rep(q, geom));
    r.add("entropy_combination", rep.otoc_combination);
    r.add("i2_r_bpd", rep.i2_r_bpd);
    r.add("delta_entropy", rep.delta);
  } else {
    r.add("otoc_avg", otoc_avg(circuit.u, geom));
    const DensityMatrix rho = to_density(unitary_state_rep(circuit.u, geom));
    r.add("i2_r_bpd", mutual_info_renyi2(rho, {"R"}, {"Bp", "D"}));
  }
  r.add("scrambled_value", scrambled_value(geom.dim_a(), geom.dim_d()));
  r.add("haar_mean_exact", haar_mean_otoc_exact(geom));
  return {r};
}

std::vector<Record> run_decode(const json& config, const Context& ctx) {
  check_keys(config, "decode config",
             {"experiment", "seed", "circuit", "n_a_sites", "d_sites",
              "noise", "shots"});
  const CircuitSpec circuit = parse_circuit(config.at("circuit"));
  const OtocGeometry geom = parse_geometry(config, circuit);
  ProtocolConfig pc{parse_evolution(config, circuit, geom), geom,
                    InputMode::EprReference, Vector(), ctx.seed};
  Record r;
  add_provenance(r, ctx, "decode", 0);
  r.add("circuit", circuit.name);
  try {
    const DecodingReport report = run_protocol(pc);
    add_decoding_report(r, report);
    if (config.contains("shots")) {
      // Measurement-sampling realism layer: Bernoulli draws against the
      // exact post-selection and fidelity probabilities. The library values
      // stay deterministic; only this estimate consumes randomness.
      const std::uint64_t shots = config.at("shots").get<std::uint64_t>();
      if (shots == 0) throw ConfigError("decode: shots must be positive");
      Rng rng(ctx.seed);
      std::uint64_t selected = 0, decoded = 0;
      for (std::uint64_t s = 0; s < shots; ++s) {
        if (rng.uniform() >= report.p_epr) continue;
        ++selected;
        if (rng.uniform() < report.f_epr) ++decoded;
      }
      r.add("shots", shots);
      r.add("p_epr_sampled",
            static_cast<double>(selected) / static_cast<double>(shots));
      if (selected > 0)
        r.add("f_epr_sampled",
              static_cast<double>(decoded) / static_cast<double>(selected));
    }
  } catch (const PostSelectionImpossible& e) {
    r.add("error", std::string(e.what()));
  }
  return {r};
}

std::vector<Vector> parse_states(const json& config, std::size_t d_a) {
  if (!config.contains("states")) return state_2_design(d_a);
  const json& s = config.at("states");
  if (s.is_string()) {
    const std::string name = s.get<std::string>();
    if (name == "2design") return state_2_design(d_a);
    if (name == "computational") {
      std::vector<Vector> out;
      for (std::size_t k = 0; k < d_a; ++k) {
        Vector v = Vector::Zero(d_a);
        v(k) = 1.0;
        out.push_back(v);
      }
      return out;
    }
    throw ConfigError("states: unknown set '" + name + "'");
  }
  std::vector<Vector> out;
  for (const json& sv : s) {
    Vector v(sv.size());
    for (std::size_t i = 0; i < sv.size(); ++i) {
      const auto& pair = sv.at(i);
      v(i) = cdouble(pair.at(0).get<double>(), pair.at(1).get<double>());
    }
    v.normalize();
    if (static_cast<std::size_t>(v.size()) != d_a)
      throw ConfigError("states: state dim must be d_A");
    out.push_back(v);
  }
  return out;
}

std::vector<Record> run_state_decode(const json& config, const Context& ctx,
                                     const RunOptions& options) {
  check_keys(config, "state-decode config",
             {"experiment", "seed", "circuit", "n_a_sites", "d_sites", "noise",
              "states"});
  const CircuitSpec circuit = parse_circuit(config.at("circuit"));
  const OtocGeometry geom = parse_geometry(config, circuit);
  const EvolutionModel ev = parse_evolution(config, circuit, geom);
  const auto states = parse_states(config, geom.dim_a());

  std::vector<PointTask> tasks;
  for (std::size_t i = 0; i < states.size(); ++i) {
    tasks.push_back([&, i]() {
      Record r;
      add_provenance(r, ctx, "state-decode", i);
      r.add("circuit", circuit.name);
      ProtocolConfig pc{ev, geom, InputMode::FixedState, states[i], ctx.seed};
      try {
        const auto [p, f] = state_decode(pc);
        r.add("p_psi", p);
        r.add("f_psi", f);
        r.add("pf_psi", p * f);
      } catch (const PostSelectionImpossible& e) {
        r.add("error", std::string(e.what()));
      }
      return r;
    });
  }
  auto records = run_points(options.workers, tasks);

  // Design-average summary over the state set (meaningful for a 2-design).
  double mean_pf = 0.0;
  for (const Vector& psi : states) {
    ProtocolConfig pc{ev, geom, InputMode::FixedState, psi, ctx.seed};
    const auto [p, f] = state_decode(pc);
    mean_pf += p * f;
  }
  mean_pf /= static_cast<double>(states.size());
  ProtocolConfig epr{ev, geom, InputMode::EprReference, Vector(), ctx.seed};
  const DecodingReport er = run_protocol(epr);
  const double da = static_cast<double>(geom.dim_a());
  const double delta = da * da * er.pf;
  Record summary;
  add_provenance(summary, ctx, "state-decode", records.size());
  summary.add("kind", std::string("summary"));
  summary.add("mean_pf", mean_pf);
  summary.add("design_average_prediction",
              (er.p_epr + delta / da) / (da + 1.0));
  summary.add("p_epr", er.p_epr);
  summary.add("spread_gate",
              std::string(records.size() >= 6 ? "2design" : "custom"));
  records.push_back(summary);
  return records;
}

std::vector<Record> run_grover(const json& config, const Context& ctx,
                               const RunOptions& options) {
  check_keys(config, "grover config",
             {"experiment", "seed", "circuit", "n_a_sites", "d_sites",
              "m_values"});
  const CircuitSpec circuit = parse_circuit(config.at("circuit"));
  const OtocGeometry geom = parse_geometry(config, circuit);
  const auto ms = config.value("m_values", std::vector<int>{0, 1});
  std::vector<PointTask> tasks;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    tasks.push_back([&, i]() {
      Record r;
      add_provenance(r, ctx, "grover", i);
      r.add("circuit", circuit.name);
      r.add("m", static_cast<std::uint64_t>(ms[i]));
      const GroverResult res = grover_decode(circuit.u, geom, ms[i]);
      r.add("success", res.success_prob);
      r.add("predicted", res.predicted);
      r.add("fidelity_to_out", res.fidelity_to_out);
      r.add("ideal_regime", res.ideal_regime);
      r.add("verify_epr", verify_epr_after_decode(res.state));
      return r;
    });
  }
  return run_points(options.workers, tasks);
}

std::vector<Record> run_sweep_depolarize(const json& config, const Context& ctx,
                                         const RunOptions& options) {
  check_keys(config, "sweep-depolarize config",
             {"experiment", "seed", "circuit", "n_a_sites", "d_sites",
              "p_values"});
  const CircuitSpec circuit = parse_circuit(config.at("circuit"));
  const OtocGeometry geom = parse_geometry(config, circuit);
  std::vector<double> ps = config.value(
      "p_values", std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  std::vector<PointTask> tasks;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    tasks.push_back([&, i]() {
      const double p = ps[i];
      Record r;
      add_provenance(r, ctx, "sweep-depolarize", i);
      r.add("circuit", circuit.name);
      r.add("p", p);
      const Channel q = depolarizing_channel(circuit.u, p);
      ProtocolConfig pc{NoisyEvolution{q}, geom, InputMode::EprReference,
                        Vector(), ctx.seed};
      DecodingReport report;
      try {
        report = run_protocol(pc);
      } catch (const PostSelectionImpossible& e) {
        r.add("error", std::string(e.what()));
        return r;
      }
      add_decoding_report(r, report);
      const double formula = depolarizing_delta(p, geom.dim_d());
      r.add("delta_formula", formula);
      const double da2 = static_cast<double>(geom.dim_a() * geom.dim_a());
      r.add("delta_formula_ok",
            std::abs(da2 * report.pf - formula) <= 1e-9 * ctx.tol_scale);
      // Fixed-Weyl (1-p)^2 scaling: worst deviation over traceless pairs.
      double worst = 0.0;
      for (const auto& wa : enumerate_weyl(geom.a_dims())) {
        if (wa.is_identity()) continue;
        for (const auto& wd : enumerate_weyl(geom.d_dims())) {
          if (wd.is_identity()) continue;
          const cdouble noisy =
              otoc_channel_point(q, geom, wa.matrix(), wd.matrix());
          const cdouble clean =
              otoc_point(circuit.u, geom, wa.matrix(), wd.matrix());
          worst = std::max(worst,
                           std::abs(noisy - (1.0 - p) * (1.0 - p) * clean));
        }
      }
      r.add("weyl_scaling_error", worst);
      return r;
    });
  }
  return run_points(options.workers, tasks);
}

std::vector<Record> run_sweep_coherent(const json& config, const Context& ctx,
                                       const RunOptions& options) {
  check_keys(config, "sweep-coherent config",
             {"experiment", "seed", "circuit", "n_a_sites", "d_sites",
              "theta_values", "weyl"});
  const CircuitSpec circuit = parse_circuit(config.at("circuit"));
  const OtocGeometry geom = parse_geometry(config, circuit);
  const auto thetas = config.value(
      "theta_values", std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
  const auto weyl = config.value("weyl", std::vector<int>{0, 1});
  if (weyl.size() != 2) throw ConfigError("weyl: expected [a, b]");
  std::vector<PointTask> tasks;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    tasks.push_back([&, i]() {
      const double theta = thetas[i];
      Record r;
      add_provenance(r, ctx, "sweep-coherent", i);
      r.add("circuit", circuit.name);
      r.add("theta", theta);
      const Matrix e = coherent_error(geom, theta, weyl[0], weyl[1]);
      ProtocolConfig pc{CoherentEvolution{circuit.u, circuit.u * e}, geom,
                        InputMode::EprReference, Vector(), ctx.seed};
      const DecodingReport report = run_protocol(pc);
      add_decoding_report(r, report);
      const double otoc_true = *report.otoc_avg_forward;
      if (report.bounds.coherent_otoc_bound) {
        r.add("coherent_bound_margin",
              *report.bounds.coherent_otoc_bound - otoc_true);
      }
      r.add("fidelity_otoc_bound_margin",
            report.bounds.fidelity_otoc_bound - otoc_true);
      r.add("mi_bound_margin",
            -std::log2(otoc_true) - report.bounds.mi_bound_bits);
      return r;
    });
  }
  return run_points(options.workers, tasks);
}

std::vector<Record> run_ensemble(const json& config, const Context& ctx,
                                 const RunOptions& options) {
  check_keys(config, "ensemble config",
             {"experiment", "seed", "source", "count", "site_dims",
              "n_a_sites", "d_sites"});
  const std::string source = config.at("source").get<std::string>();
  const std::size_t count = config.at("count").get<std::size_t>();
  CircuitSpec circuit;
  circuit.site_dims = config.at("site_dims").get<std::vector<std::size_t>>();
  circuit.name = source;
  OtocGeometry geom = parse_geometry(config, circuit);
  std::size_t dim = 1;
  for (std::size_t d : circuit.site_dims) dim *= d;
  if (source == "clifford")
    for (std::size_t d : circuit.site_dims)
      if (d != 2) throw ConfigError("ensemble: clifford needs qubit sites");
  if (source != "clifford" && source != "haar")
    throw ConfigError("ensemble: source must be haar or clifford");

  Rng base(ctx.seed);
  std::vector<std::uint64_t> seeds;
  for (std::size_t i = 0; i < count; ++i)
    seeds.push_back(base.split(i).base_seed());

  std::vector<PointTask> tasks;
  for (std::size_t i = 0; i < count; ++i) {
    tasks.push_back([&, i]() {
      Record r;
      add_provenance(r, ctx, "ensemble", i);
      r.add("source", source);
      r.add("sample_seed", seeds[i]);
      const Matrix u = source == "haar"
                           ? haar_sample(dim, seeds[i])
                           : clifford_sample(circuit.site_dims.size(), seeds[i]);
      r.add("otoc_avg", otoc_avg(u, geom));
      return r;
    });
  }
  auto records = run_points(options.workers, tasks);

  std::vector<double> vals;
  for (std::size_t i = 0; i < count; ++i) {
    const Matrix u = source == "haar"
                         ? haar_sample(dim, seeds[i])
                         : clifford_sample(circuit.site_dims.size(), seeds[i]);
    vals.push_back(otoc_avg(u, geom));
  }
  double mean = 0.0;
  for (double v : vals) mean += v;
  mean /= static_cast<double>(count);
  double var = 0.0;
  for (double v : vals) var += (v - mean) * (v - mean);
  var /= static_cast<double>(count > 1 ? count - 1 : 1);
  Record summary;
  add_provenance(summary, ctx, "ensemble", count);
  summary.add("kind", std::string("summary"));
  summary.add("source", source);
  summary.add("mean", mean);
  summary.add("std", std::sqrt(var));
  summary.add("stderr", std::sqrt(var / static_cast<double>(count)));
  summary.add("haar_mean_exact", haar_mean_otoc_exact(geom));
  records.push_back(summary);
  return records;
}

std::vector<Record> run_clifford_test(const json& config, const Context& ctx) {
  check_keys(config, "clifford-test config",
             {"experiment", "seed", "circuit", "trials"});
  const CircuitSpec circuit = parse_circuit(config.at("circuit"));
  const std::size_t trials = config.value("trials", 16);
  const auto report =
      clifford_witness(circuit.u, circuit.site_dims, trials, ctx.seed);
  std::vector<Record> records;
  for (std::size_t i = 0; i < report.evidence.size(); ++i) {
    const auto& ev = report.evidence[i];
    Record r;
    add_provenance(r, ctx, "clifford-test", i);
    r.add("circuit", circuit.name);
    r.add("p_label", ev.p.label());
    r.add("q_label", ev.q.label());
    r.add("value_re", ev.value.real());
    r.add("value_im", ev.value.imag());
    records.push_back(r);
  }
  Record summary;
  add_provenance(summary, ctx, "clifford-test", report.evidence.size());
  summary.add("kind", std::string("summary"));
  summary.add("circuit", circuit.name);
  summary.add("verdict", std::string(report.consistent_with_clifford
                                         ? "consistent-with-clifford"
                                         : "not-clifford"));
  records.push_back(summary);
  return records;
}

Matrix random_density_matrix(std::size_t d, Rng& rng) {
  Matrix g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      g(i, j) = cdouble(rng.gaussian(), rng.gaussian());
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

std::vector<Record> run_finite_temp(const json& config, const Context& ctx,
                                    const RunOptions& options) {
  check_keys(config, "finite-temp config",
             {"experiment", "seed", "count"});
  const std::size_t count = config.value("count", 20);
  OtocGeometry geom;
  geom.site_dims = {2, 2};
  geom.n_a_sites = 1;
  geom.d_sites = {1};
  Rng base(ctx.seed);
  std::vector<std::uint64_t> seeds;
  for (std::size_t i = 0; i < count; ++i)
    seeds.push_back(base.split(i).base_seed());

  std::vector<PointTask> tasks;
  for (std::size_t i = 0; i < count; ++i) {
    tasks.push_back([&, i]() {
      Rng rng(seeds[i]);
      // Factorizing evolution: a product of local unitaries, optionally
      // composed with SWAP, keeps the output ensemble a product and the
      // mutual-information bound in force.
      Matrix u = kron(haar_sample(2, rng.next_u64()),
                      haar_sample(2, rng.next_u64()));
      if (i % 2) u = swap_gate(2) * u;
      const Matrix rho_a = random_density_matrix(2, rng);
      const Matrix rho_b = random_density_matrix(2, rng);
      const Matrix u_eff = geom.effective_unitary(u);
      const Matrix out = u_eff * kron(rho_a, rho_b) * u_eff.adjoint();
      SystemLayout cd({{"C", 2}, {"D", 2}});
      const Matrix rho_d =
          partial_trace(DensityMatrix(cd, out, false), {"D"}).matrix();
      const auto ft = finite_temp_amplitude(u, geom, rho_a, rho_b, rho_d);
      Record r;
      add_provenance(r, ctx, "finite-temp", i);
      r.add("p", ft.p);
      r.add("bound_bits", ft.bound_bits);
      r.add("mi_von_neumann", ft.mi_von_neumann);
      r.add("mi_renyi2", ft.mi_renyi2);
      r.add("bound_margin", ft.mi_von_neumann - ft.bound_bits);
      r.add("bound_asserted", ft.bound_asserted);
      if (ft.printed_divergence_gap)
        r.add("printed_divergence_gap", *ft.printed_divergence_gap);
      // Divergence ordering on a random full-rank pair.
      const Matrix f = random_density_matrix(4, rng);
      const Matrix g = random_density_matrix(4, rng);
      r.add("d2_minus_d1", sandwiched_renyi2_divergence(f, g) -
                               relative_entropy_bits(f, g));
      return r;
    });
  }
  return run_points(options.workers, tasks);
}

}  // namespace

std::string gate_list_config_json(const NamedCircuit& circuit) {
  nlohmann::json j;
  j["site_dims"] = circuit.site_dims;
  j["gates"] = nlohmann::json::array();
  for (const auto& g : circuit.gates)
    j["gates"].push_back({{"kind", g.kind}, {"targets", g.targets}});
  return j.dump();
}

int run_experiment_config(const std::string& config_text, std::ostream& out,
                          std::ostream& err, const RunOptions& options) {
  json config;
  try {
    config = json::parse(config_text);
  } catch (const std::exception& e) {
    err << "config parse error: " << e.what() << "\n";
    return kExitConfig;
  }
  std::vector<Record> records;
  try {
    if (!config.is_object() || !config.contains("experiment"))
      throw ConfigError("config: missing 'experiment'");
    Context ctx;
    ctx.seed = options.seed_override.value_or(
        config.value("seed", std::uint64_t{0}));
    char hashbuf[20];
    std::snprintf(hashbuf, sizeof(hashbuf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(config_text)));
    ctx.config_hash = hashbuf;
    ctx.tol_scale = options.tolerance_profile == "loose" ? 100.0 : 1.0;
    if (options.tolerance_profile != "strict" &&
        options.tolerance_profile != "loose")
      throw ConfigError("tolerance profile must be strict or loose");

    const std::string kind = config.at("experiment").get<std::string>();
    if (kind == "otoc")
      records = run_otoc(config, ctx);
    else if (kind == "decode")
      records = run_decode(config, ctx);
    else if (kind == "state-decode")
      records = run_state_decode(config, ctx, options);
    else if (kind == "grover")
      records = run_grover(config, ctx, options);
    else if (kind == "sweep-depolarize")
      records = run_sweep_depolarize(config, ctx, options);
    else if (kind == "sweep-coherent")
      records = run_sweep_coherent(config, ctx, options);
    else if (kind == "ensemble")
      records = run_ensemble(config, ctx, options);
    else if (kind == "clifford-test")
      records = run_clifford_test(config, ctx);
    else if (kind == "finite-temp")
      records = run_finite_temp(config, ctx, options);
    else
      throw ConfigError("config: unknown experiment '" + kind + "'");
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const json::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }

  if (options.format == "ndjson") {
    for (const auto& r : records) out << r.to_ndjson() << "\n";
  } else if (options.format == "csv") {
    if (!records.empty()) {
      out << records.front().csv_header() << "\n";
      const std::string header = records.front().csv_header();
      for (const auto& r : records) {
        if (r.csv_header() == header) out << r.csv_row() << "\n";
      }
    }
  } else {
    err << "config error: unknown format '" << options.format << "'\n";
    return kExitConfig;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// Built-in fixture suite: closed-form results with known exact values
// ---------------------------------------------------------------------------

namespace {

struct Fixture {
  std::string location;
  std::string description;
  double expected;
  double got;
  double tol;
  bool pass() const { return std::abs(expected - got) <= tol; }
};

void run_fixture_suite(std::vector<Fixture>& fx) {
  const NamedCircuit scrambler = qubit_clifford_scrambler();
  const NamedCircuit qutrit = qutrit_scrambler();
  const NamedCircuit classical = classical_scrambler();
  const auto geom3 = [](std::size_t site) {
    OtocGeometry g;
    g.site_dims = {2, 2, 2};
    g.n_a_sites = 1;
    g.d_sites = {site};
    return g;
  };
  const auto geomq = [](std::size_t site) {
    OtocGeometry g;
    g.site_dims = {3, 3};
    g.n_a_sites = 1;
    g.d_sites = {site};
    return g;
  };
  const auto unitary_cfg = [](const Matrix& u, const OtocGeometry& g) {
    return ProtocolConfig{UnitaryEvolution{u}, g, InputMode::EprReference,
                          Vector(), 0};
  };

  // Maximal qubit scrambler: averaged OTOC saturates 1/d_A^2.
  for (std::size_t site : {0ul, 1ul, 2ul})
    fx.push_back({"scrambler", "otoc_avg scrambler D=site" + std::to_string(site),
                  0.25, otoc_avg(scrambler.unitary, geom3(site)), 1e-10});
  fx.push_back({"haar-asymptote", "Haar asymptote d_A=d_D=2",
                7.0 / 16.0, scrambled_value(2, 2), 1e-12});

  // Decoding succeeds on all three projection pairings.
  for (std::size_t site : {0ul, 1ul, 2ul}) {
    const auto rep = run_protocol(unitary_cfg(scrambler.unitary, geom3(site)));
    fx.push_back({"Fig.3", "P_EPR pairing " + std::to_string(site), 0.25,
                  rep.p_epr, 1e-10});
    fx.push_back({"Fig.3", "F_EPR pairing " + std::to_string(site), 1.0,
                  rep.f_epr, 1e-10});
  }

  // P*F = 1/d_A^2 for any unitary evolution (Haar sample).
  {
    const auto rep = run_protocol(
        unitary_cfg(haar_sample(8, 7), geom3(2)));
    fx.push_back({"teleport-identity", "P*F = 1/d_A^2 (Haar U)", 0.25, rep.pf, 1e-10});
  }

  // Averaged OTOC equals 2^{-I2(R,BpD)}.
  {
    const Matrix u = haar_sample(8, 11);
    const auto g = geom3(2);
    const double avg = otoc_avg(u, g);
    const DensityMatrix rho = to_density(unitary_state_rep(u, g));
    fx.push_back({"otoc-identity", "otoc_avg = 2^{-I2(R,B'D)}", avg,
                  std::exp2(-mutual_info_renyi2(rho, {"R"}, {"Bp", "D"})),
                  1e-10});
  }

  // Complete depolarization endpoints.
  {
    const auto g = geom3(2);
    const Channel q1 = depolarizing_channel(scrambler.unitary, 1.0);
    const DensityMatrix rho = channel_state_rep(q1, g);
    fx.push_back({"depolarize", "p=1 channel state is I/d^2", 0.0,
                  (rho.matrix() - Matrix::Identity(64, 64) / 64.0)
                      .cwiseAbs()
                      .maxCoeff(),
                  1e-12});
    fx.push_back({"depolarize", "delta(p=1) = 1/d_D^2", 0.25,
                  noise_delta(q1, g).delta, 1e-9});
    fx.push_back({"depolarize", "delta(unitary) = 1", 1.0,
                  noise_delta(unitary_channel(scrambler.unitary), g).delta,
                  1e-9});
    fx.push_back({"depolarize", "tilde OTOC at p=1 -> 1/d_D^2", 0.25,
                  otoc_channel_avg(q1, g), 1e-10});
  }

  // Depolarizing delta: closed form and agreement of both measurement routes.
  for (double p : {0.2, 0.5, 0.9}) {
    const auto g = geom3(2);
    const Channel q = depolarizing_channel(scrambler.unitary, p);
    ProtocolConfig pc{NoisyEvolution{q}, g, InputMode::EprReference, Vector(),
                      0};
    const auto rep = run_protocol(pc);
    fx.push_back({"depolarize", "delta(p=" + format_double(p) + ") closed form",
                  depolarizing_delta(p, 2), 4.0 * rep.pf, 1e-9});
    fx.push_back({"depolarize", "delta routes agree (p=" + format_double(p) + ")",
                  *rep.delta_entropy, 4.0 * rep.pf, 1e-9});
  }

  // Traceless-operator (1-p)^2 scaling.
  {
    const auto g = geom3(2);
    const double p = 0.45;
    const Channel q = depolarizing_channel(scrambler.unitary, p);
    const cdouble noisy = otoc_channel_point(q, g, weyl_x(2), weyl_z(2));
    const cdouble clean =
        otoc_point(scrambler.unitary, g, weyl_x(2), weyl_z(2));
    fx.push_back({"depolarize", "(1-p)^2 scaling", 0.0,
                  std::abs(noisy - (1.0 - p) * (1.0 - p) * clean), 1e-12});
  }

  // State 2-design average of P*F, ideal and channel forms.
  {
    const auto g = geom3(2);
    const auto design = state_2_design(2);
    for (double p : {0.0, 0.6}) {
      const Channel q = depolarizing_channel(scrambler.unitary, p);
      double mean_pf = 0.0;
      for (const Vector& psi : design) {
        ProtocolConfig pc{NoisyEvolution{q}, g, InputMode::FixedState, psi, 0};
        const auto [pp, ff] = state_decode(pc);
        mean_pf += pp * ff;
      }
      mean_pf /= static_cast<double>(design.size());
      ProtocolConfig epr{NoisyEvolution{q}, g, InputMode::EprReference,
                         Vector(), 0};
      const auto rep = run_protocol(epr);
      const double delta = 4.0 * rep.pf;
      fx.push_back({"design-average",
                    "2-design mean P F (p=" + format_double(p) + ")",
                    (rep.p_epr + delta / 2.0) / 3.0, mean_pf, 1e-9});
    }
  }

  // State-decoding bounds on the maximal scrambler.
  {
    const auto g = geom3(2);
    Vector zero = Vector::Zero(2);
    zero(0) = 1.0;
    ProtocolConfig pc{UnitaryEvolution{scrambler.unitary}, g,
                      InputMode::FixedState, zero, 0};
    const auto [p, f] = state_decode(pc);
    fx.push_back({"state-decode", "P_psi = 1/d_A^2 (maximal scrambler)", 0.25, p,
                  1e-10});
    fx.push_back({"state-decode", "F_psi = 1 (maximal scrambler)", 1.0, f, 1e-10});
  }

  // The triple-projection undo property.
  fx.push_back({"undo", "undo check scrambler", 1.0,
                undo_check(unitary_cfg(scrambler.unitary, geom3(2))), 1e-10});
  fx.push_back({"undo", "undo check U=I", 0.25,
                undo_check(unitary_cfg(Matrix::Identity(8, 8), geom3(2))),
                1e-10});

  // Qutrit scrambler basis map and conjugation table.
  {
    Vector e10 = Vector::Zero(9);
    e10(3) = 1.0;
    const Vector out = qutrit.unitary * e10;
    fx.push_back({"qutrit", "U|1,0> = |2,1>", 1.0,
                  std::abs(out(2 * 3 + 1)), 1e-12});
    const std::vector<std::size_t> dims{3, 3};
    struct Rel {
      std::pair<int, int> in0, in1, out0, out1;
      const char* name;
    };
    const std::vector<Rel> rels = {
        {{0, 1}, {0, 0}, {0, 1}, {0, 2}, "Z x I -> Z x Z^2"},
        {{0, 0}, {0, 1}, {0, 2}, {0, 2}, "I x Z -> Z^2 x Z^2"},
        {{1, 0}, {0, 0}, {2, 0}, {1, 0}, "X x I -> X^2 x X"},
        {{0, 0}, {1, 0}, {1, 0}, {1, 0}, "I x X -> X x X"},
    };
    for (const auto& rel : rels) {
      WeylOperator p = WeylOperator::identity(dims);
      p.exps = {rel.in0, rel.in1};
      const auto dec = conjugate_weyl(qutrit.unitary, p);
      WeylOperator img = WeylOperator::identity(dims);
      img.exps = {rel.out0, rel.out1};
      fx.push_back({"qutrit", rel.name, 1.0,
                    std::abs(dec.coeff_flat(weyl_index(img))), 1e-10});
    }
    for (std::size_t site : {0ul, 1ul}) {
      const auto rep = run_protocol(unitary_cfg(qutrit.unitary, geomq(site)));
      fx.push_back({"qutrit", "qutrit F pairing " + std::to_string(site),
                    1.0, rep.f_epr, 1e-10});
    }
  }

  // SWAP contrast: ordinary teleportation works on one pairing only.
  {
    const auto good = run_protocol(unitary_cfg(swap_gate(3), geomq(1)));
    const auto bad = run_protocol(unitary_cfg(swap_gate(3), geomq(0)));
    fx.push_back({"swap", "SWAP decodes on the matched pair", 1.0,
                  good.f_epr, 1e-10});
    fx.push_back({"swap", "SWAP baseline on the other pair", 1.0 / 9.0,
                  bad.f_epr, 1e-10});
  }

  // Classical scrambler: computational inputs teleport, superpositions fail.
  {
    const auto g = geom3(1);
    for (int s = 0; s < 2; ++s) {
      Vector basis = Vector::Zero(2);
      basis(s) = 1.0;
      ProtocolConfig pc{UnitaryEvolution{classical.unitary}, g,
                        InputMode::FixedState, basis, 0};
      fx.push_back({"scrambler", "classical: computational input " +
                                    std::to_string(s),
                    1.0, state_decode(pc).f_psi, 1e-9});
    }
    Vector plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    ProtocolConfig pc{UnitaryEvolution{classical.unitary}, g,
                      InputMode::FixedState, plus, 0};
    fx.push_back({"scrambler", "classical: |+> fails (F = 1/2)", 0.5,
                  state_decode(pc).f_psi, 1e-9});
  }

  // Coherent-error eta endpoints.
  {
    const auto g = geom3(2);
    fx.push_back({"coherent-eta", "eta(E = I) = 1", 1.0,
                  eta_of_error(Matrix::Identity(8, 8), g), 1e-12});
    const Matrix perm = g.output_permutation();
    const Matrix e_d =
        perm.adjoint() * kron(Matrix::Identity(4, 4), weyl_x(2)) * perm;
    fx.push_back({"coherent-eta", "eta(E = I x O_D) = 0", 0.0, eta_of_error(e_d, g),
                  1e-12});
  }

  // beta coefficient at V = U.
  {
    const auto g = geom3(2);
    const Matrix u = haar_sample(8, 23);
    fx.push_back({"coherent-beta", "beta_{I,O_D} at V = U", 1.0,
                  beta_coefficient(u, u, g, weyl_z(2)).real(), 1e-12});
  }

  // Fidelity bounds saturate on the maximal scrambler.
  {
    const auto rep = run_protocol(unitary_cfg(scrambler.unitary, geom3(2)));
    fx.push_back({"fidelity-bounds", "I2 >= 2log2 dR + 2log2 F (saturated)",
                  *rep.i2_r_bpd, rep.bounds.mi_bound_bits, 1e-9});
    fx.push_back({"fidelity-bounds", "OTOC <= 1/(dR^2 F^2) (saturated)",
                  *rep.otoc_avg_forward, rep.bounds.fidelity_otoc_bound,
                  1e-9});
  }

  // Clifford witness values and Bell-outcome decoding.
  {
    const auto report =
        clifford_witness(scrambler.unitary, {2, 2, 2}, 16, 2026);
    double worst = 0.0;
    for (const auto& ev : report.evidence)
      worst = std::max(worst, std::min(std::abs(ev.value - cdouble(1.0)),
                                       std::abs(ev.value + cdouble(1.0))));
    fx.push_back({"clifford-decode", "scrambler witness values are +/-1", 0.0, worst,
                  1e-10});
    const auto g = geom3(2);
    const ProtocolConfig pc = unitary_cfg(scrambler.unitary, g);
    double min_fid = 1.0;
    for (const auto& outcome : enumerate_weyl({2}))
      min_fid =
          std::min(min_fid, clifford_bell_decode(pc, outcome).fidelity);
    fx.push_back({"clifford-decode", "all Bell outcomes decode with a Weyl pair", 1.0,
                  min_fid, 1e-9});
    bool haar_fails = false;
    const ProtocolConfig hc = unitary_cfg(haar_sample(8, 31), g);
    for (const auto& outcome : enumerate_weyl({2})) {
      if (outcome.is_identity()) continue;
      try {
        clifford_bell_decode(hc, outcome);
      } catch (const NotCliffordBehavior&) {
        haar_fails = true;
      }
    }
    fx.push_back({"clifford-decode", "Haar unitary defeats the Pauli correction", 1.0,
                  haar_fails ? 1.0 : 0.0, 0.5});
  }

  // Deterministic Grover decoder.
  {
    const auto g = geom3(2);
    const GroverPlan plan = make_grover_plan(2);
    fx.push_back({"grover", "theta = pi/3 for d_A = 2", std::numbers::pi / 3.0,
                  plan.theta, 1e-12});
    const GroverResult m0 = grover_decode(scrambler.unitary, g, 0);
    const GroverResult m1 = grover_decode(scrambler.unitary, g, 1);
    fx.push_back({"grover", "m=0 success = 1/4", 0.25, m0.success_prob, 1e-9});
    fx.push_back({"grover", "m=1 success = 1", 1.0, m1.success_prob, 1e-6});
    fx.push_back({"grover", "EPR on DD' after decode", 1.0,
                  verify_epr_after_decode(m1.state), 1e-6});
  }

  // Infinite-temperature consistency of the thermal projection amplitude.
  {
    OtocGeometry g;
    g.site_dims = {2, 2};
    g.n_a_sites = 1;
    g.d_sites = {1};
    const Matrix u = haar_sample(4, 17);
    const Matrix mixed = Matrix::Identity(2, 2) / 2.0;
    const auto ft = finite_temp_amplitude(u, g, mixed, mixed, mixed);
    fx.push_back({"finite-temp", "P = <OTOC> at infinite temperature",
                  otoc_avg(u, g), ft.p, 1e-10});
    fx.push_back({"finite-temp", "bound = I2 at infinite temperature",
                  ft.mi_renyi2, ft.bound_bits, 1e-9});
  }
}

}  // namespace

int verify_fixtures(std::ostream& out, std::ostream& err) {
  std::vector<Fixture> fixtures;
  try {
    run_fixture_suite(fixtures);
  } catch (const std::exception& e) {
    err << "fixture suite aborted: " << e.what() << "\n";
    return kExitNumerical;
  }
  std::size_t failed = 0;
  out << "fixture suite\n";
  for (const auto& f : fixtures) {
    const bool ok = f.pass();
    if (!ok) ++failed;
    char line[256];
    std::snprintf(line, sizeof(line), "%-5s %-12s %-46s expected=%-12.6g got=%-12.6g\n",
                  ok ? "PASS" : "FAIL", f.location.c_str(),
                  f.description.c_str(), f.expected, f.got);
    out << line;
  }
  out << fixtures.size() - failed << "/" << fixtures.size()
      << " fixtures passed\n";
  return failed == 0 ? kExitOk : kExitNumerical;
}

}  // namespace otoclab
