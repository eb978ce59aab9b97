// Copyright 2026 The dipesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// dipe: command-line front end for the simulator and analytics.
//
//   dipe estimate --ensemble local-clifford --state-a ghz:4 --state-b ghz:4
//   dipe variance-sweep --ensemble local-clifford,global-clifford --shots 10,100 ...
//   dipe upsilon --n 6 --depth 3 --pauli ZIIIXI --method both
//   dipe reproduce fig2a --config sweeps.ini --out fig2a.csv
//
// Exit status: 0 success, 2 configuration error, 3 resource cap, 1 otherwise.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "dipe/dipe.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitResource = 3;

std::string full_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

dipe::EnsembleSpec resolve_ensemble(const std::string& name, std::optional<std::size_t> depth) {
  if (name == "local" || name == "local-clifford") return dipe::EnsembleSpec::local();
  if (name == "global" || name == "global-clifford") return dipe::EnsembleSpec::global();
  if (name == "brickwork") {
    if (!depth) throw dipe::ConfigError("brickwork needs --depth");
    return dipe::EnsembleSpec::brickwork(*depth);
  }
  auto spec = dipe::parse_ensemble(name);
  if (depth && spec.kind == dipe::EnsembleKind::Brickwork && *depth != spec.depth) {
    throw dipe::ConfigError("--depth disagrees with '" + name + "'");
  }
  return spec;
}

// Writes to `path`, or stdout when empty.
template <class Fn>
void emit(const std::string& path, Fn&& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw dipe::ConfigError("cannot open '" + path + "' for writing");
  fn(os);
}

std::string dat_path(const std::string& csv) {
  const auto dot = csv.rfind('.');
  const auto slash = csv.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return csv + ".dat";
  return csv.substr(0, dot) + ".dat";
}

struct Common {
  std::string ensemble = "local-clifford";
  std::optional<std::size_t> depth;
  std::string state_a, state_b;
  std::size_t rounds = 1000;
  std::uint64_t seed = 1;
  std::string out;
  std::size_t threads = 1;
  std::string backend;
};

std::optional<dipe::Backend> backend_of(const Common& c) {
  if (c.backend.empty()) return std::nullopt;
  return dipe::parse_backend(c.backend);
}

dipe::StatePair load_pair(const Common& c) {
  if (c.state_a.empty() || c.state_b.empty()) throw dipe::ConfigError("--state-a and --state-b are required");
  const auto b = backend_of(c);
  return dipe::StatePair(dipe::parse_state(c.state_a, b), dipe::parse_state(c.state_b, b));
}

int run_estimate(const Common& c, std::size_t shots, const std::string& per_round) {
  const auto spec = resolve_ensemble(c.ensemble, c.depth);
  const auto pair = load_pair(c);
  auto rep = dipe::run_protocol(spec, pair, c.rounds, shots, c.seed, c.threads, !per_round.empty());
  try {
    rep.exact_inner_product = dipe::inner_product(pair);
  } catch (const dipe::ResourceCapError&) {
  }
  emit(c.out, [&](std::ostream& os) {
    os << "ensemble,n,m,rounds,seed,omega_hat,empirical_variance,std_error,exact_inner_product\n";
    os << spec.name() << ',' << rep.n << ',' << rep.m << ',' << rep.rounds << ',' << c.seed << ','
       << full_real(rep.omega_hat) << ',' << full_real(rep.empirical_variance) << ',' << full_real(rep.std_error) << ','
       << (rep.exact_inner_product ? full_real(*rep.exact_inner_product) : "nan") << '\n';
  });
  if (!per_round.empty()) {
    emit(per_round, [&](std::ostream& os) {
      os << "round,unitary_seed,x_m\n";
      for (const auto& r : rep.per_round) os << r.round_index << ',' << r.unitary_seed << ',' << full_real(r.x_m) << '\n';
    });
  }
  return 0;
}

int run_variance_sweep(const Common& c, const std::string& shots_list) {
  const auto pair = load_pair(c);
  dipe::SweepResult res;
  std::uint64_t point = 0;
  for (const auto& name : dipe::detail::split_list(c.ensemble)) {
    const auto spec = resolve_ensemble(name, c.depth);
    for (auto m : dipe::detail::parse_uint_list(shots_list, "shots")) {
      const auto xs = dipe::run_rounds(spec, pair, c.rounds, m, dipe::derive_seed(c.seed, {point++}), c.threads);
      const auto [var, se] = dipe::variance_with_jackknife(xs);
      dipe::SweepRow r;
      r.scenario = "variance-sweep";
      r.ensemble = spec.name();
      r.d = spec.depth;
      r.n = pair.num_qubits();
      r.m = m;
      r.empirical_variance = var;
      r.analytic_reference = dipe::analytic_variance(spec, pair, m);
      r.stderr_ = se;
      res.rows.push_back(r);
    }
  }
  emit(c.out, [&](std::ostream& os) { res.write_csv(os); });
  return 0;
}

int run_upsilon(std::size_t n, std::size_t depth, const std::string& pauli, const std::string& method) {
  const auto p = dipe::PauliString::parse(pauli.empty() ? std::string(n, 'I') : pauli);
  if (n != 0) dipe::require_same_n(n, p.size(), "upsilon --n and --pauli");
  if (method != "mps" && method != "oracle" && method != "both") {
    throw dipe::ConfigError("--method must be mps, oracle or both");
  }
  std::optional<double> mps, oracle;
  if (method != "oracle") mps = dipe::upsilon_mps(p, depth);
  if (method != "mps") oracle = dipe::upsilon_oracle(p, depth);
  std::cout << "pauli,depth,method,value\n";
  if (mps) std::cout << p.to_string() << ',' << depth << ",mps," << full_real(*mps) << '\n';
  if (oracle) std::cout << p.to_string() << ',' << depth << ",oracle," << full_real(*oracle) << '\n';
  if (mps && oracle) std::cout << "# discrepancy " << full_real(std::abs(*mps - *oracle)) << '\n';
  return 0;
}

int run_reproduce(const std::string& scenario, const std::string& config, const Common& c, bool seed_set,
                  bool threads_set, std::optional<std::size_t> rounds) {
  dipe::SweepConfig cfg;
  if (config.empty()) {
    cfg = dipe::SweepConfig::defaults(scenario);
  } else {
    std::ifstream in(config);
    if (!in) throw dipe::ConfigError("cannot read config '" + config + "'");
    cfg = dipe::parse_config(in, scenario);
  }
  if (seed_set) cfg.seed = c.seed;
  if (threads_set) cfg.threads = c.threads;
  if (rounds) cfg.rounds = *rounds;
  if (!c.out.empty()) cfg.out = c.out;
  cfg.validate();
  const auto res = dipe::run_scenario(cfg);
  emit(cfg.out, [&](std::ostream& os) { res.write_csv(os); });
  if (!cfg.out.empty()) {
    emit(dat_path(cfg.out), [&](std::ostream& os) { res.write_dat(os); });
  }
  if (scenario == "haar-scaling") {
    for (auto m : cfg.m_values) {
      for (const auto& [e, base] : dipe::fitted_bases(res, m)) {
        std::cerr << "fitted base " << e << " m=" << m << ": " << dipe::format_real(base) << '\n';
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed inner product estimation with randomized Clifford measurements"};
  app.require_subcommand(1);

  Common c;
  std::size_t shots = 100;
  std::string shots_list = "100";
  std::string per_round;
  std::size_t depth_value = 0;

  auto add_common = [&](CLI::App* sub, bool states) {
    if (states) {
      sub->add_option("--ensemble", c.ensemble, "local-clifford, global-clifford, brickwork:<d> or brickwork");
      sub->add_option_function<std::size_t>("--depth", [&](const std::size_t& d) { c.depth = d; }, "brickwork depth");
      sub->add_option("--state-a", c.state_a, "first state, e.g. ghz:4, sstate:8:2:0.785, haar:6:11")->required();
      sub->add_option("--state-b", c.state_b, "second state")->required();
      sub->add_option("--backend", c.backend, "statevector or stabilizer");
      sub->add_option("--rounds", c.rounds, "rounds N");
    }
    sub->add_option("--seed", c.seed, "master seed");
    sub->add_option("--out", c.out, "output CSV path (stdout if omitted)");
    sub->add_option("--threads", c.threads, "worker threads; 0 = all cores");
  };

  auto* est = app.add_subcommand("estimate", "run the protocol on one pair of states");
  add_common(est, true);
  est->add_option("--shots", shots, "shots m per round");
  est->add_option("--per-round", per_round, "also write per-round records to this CSV");

  auto* sweep = app.add_subcommand("variance-sweep", "empirical and analytic variance over ensembles and shot counts");
  add_common(sweep, true);
  sweep->add_option("--shots", shots_list, "comma list or range of shot counts, e.g. 10,100 or 10..50:10");

  auto* ups = app.add_subcommand("upsilon", "brickwork depth factor for one Pauli string");
  std::size_t up_n = 0;
  std::string pauli, method = "both";
  ups->add_option("--n", up_n, "qubit count (checked against --pauli)");
  ups->add_option("--depth", depth_value, "brickwork depth")->required();
  ups->add_option("--pauli", pauli, "Pauli string over IXYZ");
  ups->add_option("--method", method, "mps, oracle or both");

  auto* rep = app.add_subcommand("reproduce", "config-driven sweeps");
  std::string scenario, config;
  std::optional<std::size_t> rep_rounds;
  rep->add_option("scenario", scenario, "fig2a, fig2b, haar-scaling or upsilon-convergence")
      ->required()
      ->check(CLI::IsMember({"fig2a", "fig2b", "haar-scaling", "upsilon-convergence"}));
  rep->add_option("--config", config, "key = value file with [scenario] sections");
  rep->add_option_function<std::size_t>("--rounds", [&](const std::size_t& r) { rep_rounds = r; }, "override rounds");
  add_common(rep, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*est) return run_estimate(c, shots, per_round);
    if (*sweep) return run_variance_sweep(c, shots_list);
    if (*ups) {
      if (up_n == 0 && pauli.empty()) throw dipe::ConfigError("upsilon needs --n or --pauli");
      return run_upsilon(up_n, depth_value, pauli, method);
    }
    if (*rep) {
      return run_reproduce(scenario, config, c, rep->count("--seed") > 0, rep->count("--threads") > 0, rep_rounds);
    }
  } catch (const dipe::ResourceCapError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const dipe::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
