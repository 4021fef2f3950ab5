#include <spinwire/runner.hpp>

#include <spinwire/io.hpp>
#include <spinwire/sweep.hpp>
#include <spinwire/verify.hpp>

#include <json.hpp>

#include <iostream>
#include <sstream>

namespace spinwire {

namespace {

using nlohmann::json;

std::string csv_preamble(const RunConfig& cfg) {
  std::string out = "# spinwire " + to_string(cfg.command) + "\n";
  for (const auto& [key, value] : echo_config(cfg)) {
    out += "# " + key + " = " + value + "\n";
  }
  return out;
}

json config_json(const RunConfig& cfg) {
  json meta = json::object();
  for (const auto& [key, value] : echo_config(cfg)) meta[key] = value;
  return meta;
}

void emit(const RunConfig& cfg, const std::string& content) {
  if (cfg.output.empty()) {
    std::cout << content;
  } else {
    write_file_atomic(cfg.output, content);
  }
}

std::string render_json(const RunConfig& cfg, json payload) {
  payload["command"] = to_string(cfg.command);
  payload["config"] = config_json(cfg);
  return payload.dump(2) + "\n";
}

// Tabular outputs share one shape: named columns plus rows of doubles.
std::string render_table(const RunConfig& cfg, const std::vector<std::string>& columns,
                         const std::vector<std::vector<Real>>& rows) {
  if (cfg.format == OutputFormat::csv) {
    std::string out = csv_preamble(cfg);
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out += (c ? "," : "") + columns[c];
    }
    out += "\n";
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        out += (c ? "," : "") + format_double(row[c]);
      }
      out += "\n";
    }
    return out;
  }
  json payload;
  payload["columns"] = columns;
  json data = json::array();
  for (const auto& row : rows) {
    json line = json::object();
    for (std::size_t c = 0; c < row.size(); ++c) line[columns[c]] = row[c];
    data.push_back(std::move(line));
  }
  payload["rows"] = std::move(data);
  return render_json(cfg, std::move(payload));
}

int run_spectrum(const RunConfig& cfg) {
  const SpectralDecomposition decomp = eigendecompose(cfg.chain_params());
  std::vector<std::vector<Real>> rows;
  rows.reserve(decomp.dimension());
  for (Index k = 0; k < decomp.dimension(); ++k) {
    rows.push_back({static_cast<Real>(k + 1), decomp.eigenvalues[k]});
  }
  emit(cfg, render_table(cfg, {"k", "eigenvalue"}, rows));
  return 0;
}

int run_evolve(const RunConfig& cfg) {
  const ChainParams params = cfg.chain_params();
  const SpectralDecomposition decomp = eigendecompose(params);
  const ExcitationState initial = ExcitationState::basis(params.n_sites(), cfg.site_in);
  const RealVector times = cfg.t_axis();

  std::vector<std::vector<Real>> rows;
  rows.reserve(times.size());
  for (Index i = 0; i < times.size(); ++i) {
    const ExcitationState state = evolve(decomp, initial, times[i], params.alpha());
    const Complex amp = state.amplitude_at(cfg.site_out);
    rows.push_back({times[i], amp.real(), amp.imag(), std::abs(amp)});
  }
  emit(cfg, render_table(cfg, {"t", "F_re", "F_im", "F_abs"}, rows));
  return 0;
}

int run_fidelity(const RunConfig& cfg) {
  const ChainParams params = cfg.chain_params();
  const RealVector times = cfg.t_axis();
  std::vector<std::vector<Real>> rows;
  rows.reserve(times.size());

  if (cfg.method == FidelityMethod::exact) {
    const auto series = fidelity_series(params, {times.begin(), times.end()});
    for (const TransferResult& r : series) {
      rows.push_back({r.time, r.amplitude.real(), r.amplitude.imag(), r.magnitude});
    }
    emit(cfg, render_table(cfg, {"t", "F_re", "F_im", "F_abs"}, rows));
    return 0;
  }

  ContinuumFidelity evaluator(params, cfg.quadrature_spec());
  for (Index i = 0; i < times.size(); ++i) {
    const auto sample = evaluator.evaluate(times[i]);
    rows.push_back({sample.transfer.time, sample.transfer.amplitude.real(),
                    sample.transfer.amplitude.imag(), sample.transfer.magnitude,
                    static_cast<Real>(sample.nodes_used)});
  }
  emit(cfg, render_table(cfg, {"t", "F_re", "F_im", "F_abs", "nodes_used"}, rows));
  return 0;
}

int run_sweep(const RunConfig& cfg) {
  const SweepGrid grid = sweep_td(cfg.chain_params(), cfg.t_axis(), cfg.d_axis());
  std::vector<std::vector<Real>> rows;
  rows.reserve(grid.t_axis.size() * grid.d_axis.size());
  for (Index i = 0; i < grid.t_axis.size(); ++i) {
    for (Index j = 0; j < grid.d_axis.size(); ++j) {
      rows.push_back({grid.t_axis[i], grid.d_axis[j], grid.values(i, j)});
    }
  }
  emit(cfg, render_table(cfg, {"t", "D", "F_abs"}, rows));
  return 0;
}

int run_optimize(const RunConfig& cfg) {
  const MaximizationResult result =
      maximize_fidelity(cfg.chain_params(), Interval{cfg.t_min, cfg.t_max},
                        Interval{cfg.d_min, cfg.d_max}, cfg.budget);
  json payload;
  payload["best_t"] = result.best_t;
  payload["best_d"] = result.best_d;
  payload["best_fidelity"] = result.best_fidelity;
  payload["evaluations"] = result.evaluations;
  payload["converged"] = result.converged;
  emit(cfg, render_json(cfg, std::move(payload)));
  return 0;
}

int run_bscan(const RunConfig& cfg) {
  const BInvarianceReport report =
      b_invariance_scan(cfg.chain_params(), cfg.b_list, cfg.t_axis());
  json payload;
  payload["b_values"] = report.b_values;
  json pairs = json::array();
  for (const auto& pair : report.pairs) {
    pairs.push_back({{"b_first", pair.b_first},
                     {"b_second", pair.b_second},
                     {"max_deviation", pair.max_deviation}});
  }
  payload["pairs"] = std::move(pairs);
  payload["max_deviation"] = report.max_deviation;
  payload["tolerance"] = report.tolerance;
  payload["pass"] = report.pass;
  emit(cfg, render_json(cfg, std::move(payload)));
  return report.pass ? 0 : 3;
}

int run_verify(const RunConfig& cfg) {
  const auto cases = random_verification_params(cfg.sets, 2, cfg.n_max, cfg.seed);
  const VerifyReport report = verify_equivalence(cases, cfg.times, cfg.seed + 1, cfg.tol);

  json payload;
  payload["seed"] = report.seed;
  payload["tolerance"] = report.tolerance;
  payload["times_per_case"] = report.times_per_case;
  json case_list = json::array();
  for (const VerifyCase& c : report.cases) {
    case_list.push_back({{"n", c.params.n_sites()},
                         {"j", c.params.j_coupling()},
                         {"d", c.params.d_coupling()},
                         {"b", c.params.field().uniform_value()},
                         {"alpha", c.params.alpha()},
                         {"transfer_deviation", c.transfer_deviation},
                         {"state_deviation", c.state_deviation},
                         {"norm_deviation", c.norm_deviation},
                         {"excitation_drift", c.excitation_drift},
                         {"ground_amplitude_drift", c.ground_amplitude_drift}});
  }
  payload["cases"] = std::move(case_list);
  payload["max_transfer_deviation"] = report.max_transfer_deviation;
  payload["max_state_deviation"] = report.max_state_deviation;
  payload["max_norm_deviation"] = report.max_norm_deviation;
  payload["max_excitation_drift"] = report.max_excitation_drift;
  payload["max_ground_amplitude_drift"] = report.max_ground_amplitude_drift;
  payload["pass"] = report.pass;
  emit(cfg, render_json(cfg, std::move(payload)));
  return report.pass ? 0 : 3;
}

}  // namespace

int run(const RunConfig& config) {
  switch (config.command) {
    case Command::spectrum: return run_spectrum(config);
    case Command::evolve: return run_evolve(config);
    case Command::fidelity: return run_fidelity(config);
    case Command::sweep: return run_sweep(config);
    case Command::optimize: return run_optimize(config);
    case Command::bscan: return run_bscan(config);
    case Command::verify: return run_verify(config);
  }
  throw Error("unhandled command");
}

int run_cli(const std::vector<std::string>& args) {
  try {
    return run(parse_config(args));
  } catch (const HelpRequested& help) {
    std::cout << help.text;
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InvalidParams& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NonUniformField& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ZeroField& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ZeroCoupling& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const TooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    // remaining spinwire errors (quadrature/eigensolver failures) and any
    // unexpected numeric condition
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace spinwire
