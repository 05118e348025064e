#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "manifest.hpp"
#include "pauliprop/analysis.hpp"
#include "pauliprop/calculus.hpp"
#include "pauliprop/errors.hpp"
#include "pauliprop/io.hpp"
#include "pauliprop/models.hpp"
#include "pauliprop/optimizer.hpp"
#include "pauliprop/oracle.hpp"
#include "pauliprop/propagator.hpp"

namespace pp = pauliprop;
using pauliprop::cli::Manifest;
using nlohmann::json;

namespace {

std::vector<std::string> g_args;

pp::Cutoff parse_cutoff(const std::string& s) {
  if (s.empty() || s == "full" || s == "none") return std::nullopt;
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.front() == '-' || v > UINT32_MAX) {
    throw pp::ValidationError("cutoff '" + s + "' must be a non-negative integer, 'full' or 'none'");
  }
  return static_cast<std::uint32_t>(v);
}

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<pp::Cutoff> parse_cutoff_list(const std::string& s) {
  std::vector<pp::Cutoff> out;
  for (const auto& item : split(s)) out.push_back(parse_cutoff(item));
  if (out.empty()) throw pp::ValidationError("empty cutoff list");
  return out;
}

std::vector<double> parse_double_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (const auto& item : split(s)) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw pp::ValidationError(what + ": '" + item + "' is not a number");
    out.push_back(v);
  }
  if (out.empty()) throw pp::ValidationError(what + " is empty");
  return out;
}

json cutoff_json(const pp::Cutoff& c) { return c ? json(*c) : json(nullptr); }

// Unlimited cutoffs are written as their sound finite value.
std::string cutoff_cell(const pp::Cutoff& c, std::size_t full) {
  return std::to_string(c ? *c : full);
}

std::string cutoff_label(const pp::Cutoff& c) { return c ? std::to_string(*c) : "full"; }

pp::Boundary parse_boundary(const std::string& s) {
  if (s == "open") return pp::Boundary::Open;
  if (s == "periodic") return pp::Boundary::Periodic;
  throw pp::ValidationError("boundary must be 'open' or 'periodic', got '" + s + "'");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw pp::ValidationError("cannot open output file '" + path + "'");
  return out;
}

std::string opt_cell(const std::optional<double>& v) { return v ? pp::io::format_double(*v) : ""; }

struct CircuitSource {
  std::string path;
  std::size_t n = 0;
  std::size_t depth = 0;

  void add(CLI::App* sub) {
    sub->add_option("--circuit", path, "Circuit JSON file");
    sub->add_option("--n", n, "Qubits of the local entangler ansatz (without --circuit)");
    sub->add_option("--depth", depth, "Ansatz repetitions (without --circuit)");
  }

  pp::Circuit load(Manifest& m) const {
    if (!path.empty()) {
      m.input(path);
      return pp::io::read_circuit_file(path);
    }
    if (n == 0 || depth == 0) throw pp::ValidationError("give --circuit or both --n and --depth");
    return pp::local_entangler(n, depth);
  }
};

// "sumz" is the sum of single-qubit Z terms; anything else goes through the
// observable parser.
pp::IntegerObservable load_observable(const std::string& spec, std::size_t n_qubits, Manifest& m) {
  if (spec == "sumz") {
    pp::IntegerObservable obs;
    for (std::size_t q = 0; q < n_qubits; ++q) {
      std::string letters(n_qubits, 'I');
      letters[q] = 'Z';
      obs.push_back({1, pp::PauliWord::from_string(letters)});
    }
    return obs;
  }
  if (std::filesystem::is_regular_file(spec)) m.input(spec);
  return pp::io::parse_observable(spec);
}

void add_adam(CLI::App* sub, pp::AdamConfig& cfg) {
  sub->add_option("--adam-lr", cfg.learning_rate, "Learning rate")->capture_default_str();
  sub->add_option("--adam-beta1", cfg.beta1)->capture_default_str();
  sub->add_option("--adam-beta2", cfg.beta2)->capture_default_str();
  sub->add_option("--adam-eps", cfg.epsilon)->capture_default_str();
  sub->add_option("--adam-steps", cfg.max_steps, "Maximum steps")->capture_default_str();
  sub->add_option("--adam-init-scale", cfg.init_scale, "Stddev of initial angles")
      ->capture_default_str();
  sub->add_option("--adam-grad-tol", cfg.grad_norm_tol, "Stop below this gradient norm; 0 disables")
      ->capture_default_str();
  sub->add_option("--seed", cfg.seed)->capture_default_str();
}

json adam_json(const pp::AdamConfig& c) {
  return {{"learning_rate", c.learning_rate}, {"beta1", c.beta1},       {"beta2", c.beta2},
          {"epsilon", c.epsilon},             {"max_steps", c.max_steps}, {"seed", c.seed},
          {"init_scale", c.init_scale},       {"grad_norm_tol", c.grad_norm_tol}};
}

void record_flags(Manifest& m, const CLI::App* sub) {
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help") continue;
    if (opt->get_type_size() == 0) {
      m.flag(name, opt->count() > 0);
    } else if (opt->count() > 0) {
      const auto& r = opt->results();
      m.flag(name, r.size() == 1 ? json(r[0]) : json(r));
    } else {
      m.flag(name, opt->get_default_str());
    }
  }
}

struct Run {
  Manifest manifest;
  std::string manifest_path;

  Run(const std::string& command, const std::vector<std::string>& argv, const std::string& out)
      : manifest(command, argv), manifest_path(out + ".manifest.json") {}

  void finish(const CLI::App* sub) {
    record_flags(manifest, sub);
    manifest.write(manifest_path);
  }
};

pp::ExpectationPolynomial load_poly(const std::string& path, Manifest& m) {
  m.input(path);
  return pp::trim(pp::io::read_observable_file(path));
}

std::vector<std::vector<double>> load_thetas(const std::string& path,
                                             const pp::ExpectationPolynomial& poly, Manifest& m) {
  m.input(path);
  auto rows = pp::io::read_theta_file(path);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != poly.n_params()) {
      throw pp::ValidationError("theta row " + std::to_string(i) + " has " +
                                std::to_string(rows[i].size()) + " values, polynomial has " +
                                std::to_string(poly.n_params()) + " parameters");
    }
  }
  return rows;
}

void write_theta_header(std::ostream& out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) out << (j ? "," : "") << "theta" << j;
  out << '\n';
}

void write_row(std::ostream& out, const std::vector<double>& v) {
  for (std::size_t j = 0; j < v.size(); ++j) out << (j ? "," : "") << pp::io::format_double(v[j]);
  out << '\n';
}

std::string cuts_label(const pp::TruncationConfig& t) {
  return "w=" + cutoff_label(t.w_cut) + ";nu=" + cutoff_label(t.nu_cut);
}

}  // namespace

int main(int argc, char** argv) {
  g_args.assign(argv, argv + argc);

  CLI::App app{"Symbolic Pauli propagation and VQE toolkit"};
  app.set_version_flag("--version", std::string(PAULIPROP_VERSION));
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  // ansatz
  {
    auto* sub = app.add_subcommand("ansatz", "Write the local entangler circuit as JSON");
    static std::size_t n = 0, depth = 0;
    static std::string out;
    sub->add_option("--n", n, "Qubits")->required();
    sub->add_option("--depth", depth, "Repetitions")->required();
    sub->add_option("--out", out, "Circuit JSON")->required();
    sub->callback([sub] {
      Run run("ansatz", g_args, out);
      const pp::Circuit c = pp::local_entangler(n, depth);
      {
        auto f = open_out(out);
        pp::io::write_circuit_json(f, c);
      }
      run.manifest.output(out);
      std::cout << "gates=" << c.gates.size() << " params=" << c.n_params << '\n';
      run.finish(sub);
    });
  }

  // propagate
  {
    auto* sub = app.add_subcommand("propagate", "Propagate an observable through a circuit");
    static CircuitSource src;
    static std::string observable, w_cut = "full", nu_cut = "full", out;
    static std::size_t max_terms = pp::TruncationConfig{}.max_terms;
    static std::size_t threads = 1;
    src.add(sub);
    sub->add_option("--observable", observable, "Pauli letters or a file of '<coeff> <letters>'")
        ->required();
    sub->add_option("--w-cut", w_cut, "Weight cutoff or 'full'")->capture_default_str();
    sub->add_option("--nu-cut", nu_cut, "Frequency cutoff or 'full'")->capture_default_str();
    sub->add_option("--max-terms", max_terms)->capture_default_str();
    sub->add_option("--threads", threads, "Observable partitions")->capture_default_str();
    sub->add_option("--out", out, "Output JSONL")->required();
    sub->callback([sub] {
      Run run("propagate", g_args, out);
      const pp::Circuit c = src.load(run.manifest);
      const auto obs = load_observable(observable, c.n_qubits, run.manifest);
      pp::TruncationConfig cfg{parse_cutoff(w_cut), parse_cutoff(nu_cut), max_terms};
      const auto po = threads > 1 ? pp::propagate_partitioned(obs, c, cfg, threads)
                                  : pp::propagate(obs, c, cfg);
      {
        auto f = open_out(out);
        pp::io::write_observable_jsonl(f, po);
      }
      run.manifest.output(out);
      const auto& meta = po.meta();
      const auto poly = pp::trim(po);
      std::cout << "terms=" << po.size() << " surviving=" << poly.size()
                << " discarded_by_weight=" << meta.discarded_by_weight
                << " discarded_by_frequency=" << meta.discarded_by_frequency
                << " gates=" << meta.gate_count_processed << '\n';
      run.manifest.note("terms", po.size());
      run.manifest.note("surviving", poly.size());
      run.manifest.note("discarded_by_weight", meta.discarded_by_weight);
      run.manifest.note("discarded_by_frequency", meta.discarded_by_frequency);
      run.finish(sub);
    });
  }

  // evaluate
  {
    auto* sub = app.add_subcommand("evaluate", "Evaluate a propagated observable at theta rows");
    static std::string poly_path, theta_path, out;
    static unsigned threads = 1;
    sub->add_option("--poly", poly_path, "Propagated observable JSONL")->required();
    sub->add_option("--theta", theta_path, "Theta CSV")->required();
    sub->add_option("--threads", threads)->capture_default_str();
    sub->add_option("--out", out, "Output CSV (row,value)")->required();
    sub->callback([sub] {
      Run run("evaluate", g_args, out);
      const auto poly = load_poly(poly_path, run.manifest);
      const auto rows = load_thetas(theta_path, poly, run.manifest);
      const auto values = pp::evaluate_batch(poly, rows, threads);
      {
        auto f = open_out(out);
        f << "row,value\n";
        for (std::size_t i = 0; i < values.size(); ++i)
          f << i << ',' << pp::io::format_double(values[i]) << '\n';
      }
      run.manifest.output(out);
      std::cout << "rows=" << values.size() << '\n';
      run.finish(sub);
    });
  }

  // grad
  {
    auto* sub = app.add_subcommand("grad", "Gradients of a propagated observable at theta rows");
    static std::string poly_path, theta_path, out, method = "analytic", check;
    static double fd_step = 1e-5, check_tol = 1e-5;
    static unsigned threads = 1;
    sub->add_option("--poly", poly_path)->required();
    sub->add_option("--theta", theta_path)->required();
    sub->add_option("--method", method, "analytic, fd or shift")
        ->check(CLI::IsMember({"analytic", "fd", "shift"}))
        ->capture_default_str();
    sub->add_option("--check", check, "Compare against 'fd' and fail above --check-tol")
        ->check(CLI::IsMember({"fd"}));
    sub->add_option("--check-tol", check_tol)->capture_default_str();
    sub->add_option("--fd-step", fd_step)->capture_default_str();
    sub->add_option("--threads", threads)->capture_default_str();
    sub->add_option("--out", out, "Output CSV (row,g0,...)")->required();
    sub->callback([sub] {
      Run run("grad", g_args, out);
      const auto poly = load_poly(poly_path, run.manifest);
      const auto rows = load_thetas(theta_path, poly, run.manifest);
      std::vector<std::vector<double>> grads;
      if (method == "analytic") {
        grads = pp::gradient_batch(poly, rows, threads);
      } else {
        for (const auto& r : rows) {
          if (method == "fd") {
            grads.push_back(pp::finite_difference_gradient(poly, r, fd_step));
          } else {
            std::vector<double> g(r.size());
            for (std::size_t j = 0; j < r.size(); ++j) g[j] = pp::parameter_shift(poly, r, j);
            grads.push_back(std::move(g));
          }
        }
      }
      {
        auto f = open_out(out);
        f << "row";
        for (std::size_t j = 0; j < poly.n_params(); ++j) f << ",g" << j;
        f << '\n';
        for (std::size_t i = 0; i < grads.size(); ++i) {
          f << i << ',';
          write_row(f, grads[i]);
        }
      }
      run.manifest.output(out);
      std::optional<double> worst;
      if (check == "fd") {
        worst = 0.0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
          const auto fd = pp::finite_difference_gradient(poly, rows[i], fd_step);
          for (std::size_t j = 0; j < fd.size(); ++j) {
            const double rel = std::abs(grads[i][j] - fd[j]) / std::max(std::abs(fd[j]), 1.0);
            worst = std::max(*worst, rel);
          }
        }
        run.manifest.note("check_fd_max_rel_error", *worst);
        std::cout << "check fd max_rel_error=" << pp::io::format_double(*worst) << '\n';
      }
      std::cout << "rows=" << grads.size() << '\n';
      run.finish(sub);
      if (worst && *worst > check_tol) {
        throw pp::ConvergenceError("gradient check failed: max relative error " +
                                   pp::io::format_double(*worst) + " > " +
                                   pp::io::format_double(check_tol));
      }
    });
  }

  // vqe
  {
    auto* sub = app.add_subcommand("vqe", "Train the ANNNI VQE on the propagated surrogate");
    static std::size_t n = 0, depth = 0, oracle_limit = 14, max_terms = pp::TruncationConfig{}.max_terms;
    static double kappa = 0, h = 0;
    static std::string boundary = "open", w_cut = "8", nu_cut = "20", prefix;
    static pp::AdamConfig adam;
    sub->add_option("--n", n, "Spins")->required();
    sub->add_option("--depth", depth, "Ansatz repetitions")->required();
    sub->add_option("--kappa", kappa)->capture_default_str();
    sub->add_option("--h", h)->capture_default_str();
    sub->add_option("--boundary", boundary, "open or periodic")->capture_default_str();
    sub->add_option("--w-cut", w_cut)->capture_default_str();
    sub->add_option("--nu-cut", nu_cut)->capture_default_str();
    sub->add_option("--max-terms", max_terms)->capture_default_str();
    sub->add_option("--oracle-limit", oracle_limit, "Largest n with exact references")
        ->capture_default_str();
    add_adam(sub, adam);
    sub->add_option("--out-prefix", prefix, "Prefix of the output files")->required();
    sub->callback([sub] {
      const std::string trace_path = prefix + "_trace.csv";
      const std::string theta_path = prefix + "_theta.csv";
      const std::string summary_path = prefix + "_summary.json";
      Run run("vqe", g_args, prefix);
      run.manifest.seed(adam.seed);
      const pp::Boundary bc = parse_boundary(boundary);
      pp::AnnniSpec spec{n, 1.0, bc, kappa, h};
      spec.validate();
      adam.validate();
      const pp::TruncationConfig cuts{parse_cutoff(w_cut), parse_cutoff(nu_cut), max_terms};
      const auto surrogate = pp::build_annni_surrogate(n, depth, bc, cuts);
      const auto trace = pp::vqe_train(surrogate.polys, kappa, h, adam);

      std::optional<double> e_true, e_exact, rel;
      if (n <= oracle_limit) {
        e_true = pp::simulate_expectation(surrogate.circuit, trace.theta, pp::annni_hamiltonian(spec));
        e_exact = pp::ground_energy(spec);
        rel = std::abs(*e_true - *e_exact) / std::abs(*e_exact);
      }

      {
        auto f = open_out(trace_path);
        f << "step,energy,grad_norm\n";
        for (const auto& s : trace.steps)
          f << s.step << ',' << pp::io::format_double(s.energy) << ','
            << pp::io::format_double(s.grad_norm) << '\n';
      }
      {
        auto f = open_out(theta_path);
        write_theta_header(f, trace.theta.size());
        write_row(f, trace.theta);
      }
      json summary = {
          {"n", n},
          {"depth", depth},
          {"kappa", kappa},
          {"h", h},
          {"boundary", boundary},
          {"w_cut", cutoff_json(cuts.w_cut)},
          {"nu_cut", cutoff_json(cuts.nu_cut)},
          {"adam", adam_json(adam)},
          {"steps", trace.steps.size()},
          {"propagated_terms", surrogate.propagated_terms},
          {"polynomial_terms",
           {surrogate.polys.p1.size(), surrogate.polys.p2.size(), surrogate.polys.p3.size()}},
          {"e_surrogate", trace.final_energy},
          {"e_true", e_true ? json(*e_true) : json(nullptr)},
          {"e_exact", e_exact ? json(*e_exact) : json(nullptr)},
          {"rel_error", rel ? json(*rel) : json(nullptr)},
          {"train_seconds", trace.wall_seconds},
      };
      {
        auto f = open_out(summary_path);
        f << summary.dump(2) << '\n';
      }
      for (const auto& p : {trace_path, theta_path, summary_path}) run.manifest.output(p);
      run.manifest.note("e_surrogate", trace.final_energy);
      if (rel) run.manifest.note("rel_error", *rel);

      std::cout << "surrogate energy: " << pp::io::format_double(trace.final_energy) << '\n';
      if (e_true) {
        std::cout << "true energy:      " << pp::io::format_double(*e_true) << '\n'
                  << "exact energy:     " << pp::io::format_double(*e_exact) << '\n'
                  << "relative error:   " << pp::io::format_double(*rel) << '\n';
      } else {
        std::cout << "no exact comparison (n > oracle limit " << oracle_limit << ")\n";
      }
      run.finish(sub);
    });
  }

  // histogram
  {
    auto* sub = app.add_subcommand("histogram", "Weight and frequency histograms of a propagation");
    static std::string poly_path, out;
    sub->add_option("--poly", poly_path, "Propagated observable JSONL")->required();
    sub->add_option("--out", out, "Output CSV (kind,bin,count,surviving)")->required();
    sub->callback([sub] {
      Run run("histogram", g_args, out);
      run.manifest.input(poly_path);
      const auto stats = pp::term_statistics(pp::io::read_observable_file(poly_path));
      {
        auto f = open_out(out);
        f << "kind,bin,count,surviving\n";
        auto emit = [&](const char* kind, const auto& all, const auto& kept) {
          for (const auto& [bin, count] : all) {
            const auto it = kept.find(bin);
            f << kind << ',' << bin << ',' << count << ',' << (it == kept.end() ? 0 : it->second)
              << '\n';
          }
        };
        emit("weight", stats.weight, stats.surviving_weight);
        emit("frequency", stats.frequency, stats.surviving_frequency);
      }
      run.manifest.output(out);
      run.finish(sub);
    });
  }

  // sweep
  {
    auto* sub = app.add_subcommand("sweep", "Mean absolute truncation error over a cutoff grid");
    static CircuitSource src;
    static std::string observable = "sumz", w_list = "1,2,3,4", nu_list = "2,5,10,full", out;
    static std::size_t samples = 1000, fit_samples = 200;
    static std::uint64_t seed = 2024;
    static bool fit = false;
    src.add(sub);
    sub->add_option("--observable", observable, "Pauli letters, a file, or 'sumz'")
        ->capture_default_str();
    sub->add_option("--w-cuts", w_list)->capture_default_str();
    sub->add_option("--nu-cuts", nu_list)->capture_default_str();
    sub->add_option("--samples", samples)->capture_default_str();
    sub->add_option("--seed", seed)->capture_default_str();
    sub->add_flag("--fit", fit, "Fit decay constants and add the bound column");
    sub->add_option("--fit-samples", fit_samples)->capture_default_str();
    sub->add_option("--out", out, "Output CSV (w_cut,nu_cut,mae,stderr,bound_if_fitted)")->required();
    sub->callback([sub] {
      Run run("sweep", g_args, out);
      run.manifest.seed(seed);
      const pp::Circuit c = src.load(run.manifest);
      const auto obs = load_observable(observable, c.n_qubits, run.manifest);
      const auto ws = parse_cutoff_list(w_list);
      const auto nus = parse_cutoff_list(nu_list);
      std::optional<pp::BoundParams> fitted;
      if (fit) {
        const auto po = pp::propagate(obs, c, {});
        const auto df = pp::fit_decay_constants(po, fit_samples, seed);
        run.manifest.note("fit", {{"C0", df.params.C0},
                                  {"alpha", df.params.alpha},
                                  {"beta", df.params.beta},
                                  {"A", df.params.A()},
                                  {"B", df.params.B()},
                                  {"valid", df.params.valid()},
                                  {"alpha_identified", df.alpha_identified},
                                  {"beta_identified", df.beta_identified},
                                  {"rms_log_residual", df.rms_log_residual}});
        std::cout << "fit C0=" << pp::io::format_double(df.params.C0)
                  << " alpha=" << pp::io::format_double(df.params.alpha)
                  << " beta=" << pp::io::format_double(df.params.beta)
                  << (df.params.valid() ? "" : " (bound not applicable: A or B >= 1)") << '\n';
        fitted = df.params;
      }
      const auto sweep = pp::mae_sweep(c, obs, ws, nus, samples, seed, fitted);
      {
        auto f = open_out(out);
        f << "w_cut,nu_cut,mae,stderr,bound_if_fitted\n";
        for (const auto& cell : sweep.cells) {
          f << cutoff_cell(cell.w_cut, c.n_qubits) << ',' << cutoff_cell(cell.nu_cut, c.n_params)
            << ',' << pp::io::format_double(cell.mae) << ',' << pp::io::format_double(cell.std_error)
            << ',' << opt_cell(cell.bound) << '\n';
        }
      }
      run.manifest.output(out);
      std::cout << "cells=" << sweep.cells.size() << '\n';
      run.finish(sub);
    });
  }

  // bound
  {
    auto* sub = app.add_subcommand("bound", "Worst-case truncation error bound");
    static pp::BoundParams bp;
    static std::string w_list = "1,2,3,4,5,6,7,8", nu_list = "2,5,10,20", out;
    sub->add_option("--C0", bp.C0)->capture_default_str();
    sub->add_option("--alpha", bp.alpha)->capture_default_str();
    sub->add_option("--beta", bp.beta)->capture_default_str();
    sub->add_option("--n", bp.n_qubits, "Qubits")->required();
    sub->add_option("--P", bp.n_params, "Parameters")->required();
    sub->add_option("--w-cuts", w_list)->capture_default_str();
    sub->add_option("--nu-cuts", nu_list)->capture_default_str();
    sub->add_option("--out", out, "Output CSV (w_cut,nu_cut,bound)")->required();
    sub->callback([sub] {
      Run run("bound", g_args, out);
      const auto ws = parse_cutoff_list(w_list);
      const auto nus = parse_cutoff_list(nu_list);
      std::vector<std::string> lines;
      for (const auto& w : ws) {
        for (const auto& nu : nus) {
          lines.push_back(cutoff_cell(w, bp.n_qubits) + ',' + cutoff_cell(nu, bp.n_params) + ',' +
                          pp::io::format_double(pp::truncation_bound(bp, w, nu)));
        }
      }
      {
        auto f = open_out(out);
        f << "w_cut,nu_cut,bound\n";
        for (const auto& l : lines) f << l << '\n';
      }
      run.manifest.output(out);
      run.manifest.note("A", bp.A());
      run.manifest.note("B", bp.B());
      run.finish(sub);
    });
  }

  // variance
  {
    auto* sub = app.add_subcommand("variance", "Monte Carlo check of E[prod f_i^2] = 2^-nu");
    static std::uint32_t nu_max = 8;
    static std::size_t samples = 1'000'000;
    static std::uint64_t seed = 2024;
    static std::string out;
    sub->add_option("--nu-max", nu_max)->capture_default_str();
    sub->add_option("--samples", samples)->capture_default_str();
    sub->add_option("--seed", seed)->capture_default_str();
    sub->add_option("--out", out, "Output CSV (nu,estimate,expected,stderr)")->required();
    sub->callback([sub] {
      Run run("variance", g_args, out);
      run.manifest.seed(seed);
      const auto rows = pp::frequency_variance_check(nu_max, samples, seed);
      {
        auto f = open_out(out);
        f << "nu,estimate,expected,stderr\n";
        for (const auto& r : rows)
          f << r.nu << ',' << pp::io::format_double(r.estimate) << ','
            << pp::io::format_double(r.expected) << ',' << pp::io::format_double(r.std_error) << '\n';
      }
      run.manifest.output(out);
      run.finish(sub);
    });
  }

  // oracle
  {
    auto* sub = app.add_subcommand("oracle", "Exact ANNNI ground energy");
    static std::size_t n = 0;
    static double kappa = 0, h = 0;
    static std::string boundary = "open", method = "auto", out;
    sub->add_option("--n", n, "Spins")->required();
    sub->add_option("--kappa", kappa)->capture_default_str();
    sub->add_option("--h", h)->capture_default_str();
    sub->add_option("--boundary", boundary)->capture_default_str();
    sub->add_option("--method", method, "auto, dense or lanczos")
        ->check(CLI::IsMember({"auto", "dense", "lanczos"}))
        ->capture_default_str();
    sub->add_option("--out", out, "Output CSV (n,kappa,h,boundary,method,ground_energy)")
        ->required();
    sub->callback([sub] {
      Run run("oracle", g_args, out);
      pp::AnnniSpec spec{n, 1.0, parse_boundary(boundary), kappa, h};
      spec.validate();
      const auto m = method == "dense"     ? pp::EigenMethod::Dense
                     : method == "lanczos" ? pp::EigenMethod::Lanczos
                                           : pp::EigenMethod::Auto;
      const double e = pp::ground_energy(spec, m);
      {
        auto f = open_out(out);
        f << "n,kappa,h,boundary,method,ground_energy\n"
          << n << ',' << pp::io::format_double(kappa) << ',' << pp::io::format_double(h) << ','
          << boundary << ',' << method << ',' << pp::io::format_double(e) << '\n';
      }
      run.manifest.output(out);
      run.manifest.note("ground_energy", e);
      std::cout << "ground_energy=" << pp::io::format_double(e) << '\n';
      run.finish(sub);
    });
  }

  // phase-sweep
  {
    auto* sub = app.add_subcommand("phase-sweep", "VQE over a (kappa, h) grid");
    static std::size_t n = 0, depth = 0, oracle_limit = 14, max_terms = pp::TruncationConfig{}.max_terms;
    static std::string kappas = "0,0.5,1", hs = "0,1,2", boundary = "open", w_cut = "8",
                       nu_cut = "20", out;
    static unsigned threads = 1;
    static pp::AdamConfig adam;
    sub->add_option("--n", n)->required();
    sub->add_option("--depth", depth)->required();
    sub->add_option("--kappas", kappas)->capture_default_str();
    sub->add_option("--hs", hs)->capture_default_str();
    sub->add_option("--boundary", boundary)->capture_default_str();
    sub->add_option("--w-cut", w_cut)->capture_default_str();
    sub->add_option("--nu-cut", nu_cut)->capture_default_str();
    sub->add_option("--max-terms", max_terms)->capture_default_str();
    sub->add_option("--oracle-limit", oracle_limit)->capture_default_str();
    sub->add_option("--threads", threads)->capture_default_str();
    add_adam(sub, adam);
    sub->add_option("--out", out,
                    "Output CSV (kappa,h,e_vqe_surrogate,e_vqe_true_if_available,e_exact,rel_error,"
                    "seed,cuts)")
        ->required();
    sub->callback([sub] {
      Run run("phase-sweep", g_args, out);
      run.manifest.seed(adam.seed);
      const pp::TruncationConfig cuts{parse_cutoff(w_cut), parse_cutoff(nu_cut), max_terms};
      pp::SweepConfig cfg;
      cfg.kappas = parse_double_list(kappas, "kappas");
      cfg.hs = parse_double_list(hs, "hs");
      cfg.adam = adam;
      cfg.oracle_limit = oracle_limit;
      cfg.threads = threads;
      const auto surrogate = pp::build_annni_surrogate(n, depth, parse_boundary(boundary), cuts);
      const auto points = pp::phase_diagram_sweep(surrogate, cfg);
      {
        auto f = open_out(out);
        f << "kappa,h,e_vqe_surrogate,e_vqe_true_if_available,e_exact,rel_error,seed,cuts\n";
        for (const auto& p : points) {
          f << pp::io::format_double(p.kappa) << ',' << pp::io::format_double(p.h) << ','
            << pp::io::format_double(p.e_surrogate) << ',' << opt_cell(p.e_true) << ','
            << opt_cell(p.e_exact) << ',' << opt_cell(p.rel_error) << ',' << p.seed << ','
            << cuts_label(cuts) << '\n';
        }
      }
      run.manifest.output(out);
      std::cout << "points=" << points.size() << '\n';
      run.finish(sub);
    });
  }

  // gradtail
  {
    auto* sub = app.add_subcommand("gradtail", "Max gradient deviation over a cutoff grid");
    static CircuitSource src;
    static std::string observable = "sumz", w_list = "1,2,3,4", nu_list = "2,5,10,full", out;
    static std::size_t samples = 100;
    static std::uint64_t seed = 2024;
    src.add(sub);
    sub->add_option("--observable", observable)->capture_default_str();
    sub->add_option("--w-cuts", w_list)->capture_default_str();
    sub->add_option("--nu-cuts", nu_list)->capture_default_str();
    sub->add_option("--samples", samples)->capture_default_str();
    sub->add_option("--seed", seed)->capture_default_str();
    sub->add_option("--out", out, "Output CSV (w_cut,nu_cut,max_deviation)")->required();
    sub->callback([sub] {
      Run run("gradtail", g_args, out);
      run.manifest.seed(seed);
      const pp::Circuit c = src.load(run.manifest);
      const auto obs = load_observable(observable, c.n_qubits, run.manifest);
      const auto ws = parse_cutoff_list(w_list);
      const auto nus = parse_cutoff_list(nu_list);
      const auto thetas = pp::sample_uniform_angles(samples, c.n_params, seed);
      const auto table = pp::gradient_tail_check(c, obs, thetas, ws, nus);
      {
        auto f = open_out(out);
        f << "w_cut,nu_cut,max_deviation\n";
        for (std::size_t i = 0; i < ws.size(); ++i)
          for (std::size_t j = 0; j < nus.size(); ++j)
            f << cutoff_cell(ws[i], c.n_qubits) << ',' << cutoff_cell(nus[j], c.n_params) << ','
              << pp::io::format_double(table.at(i, j)) << '\n';
      }
      run.manifest.output(out);
      run.finish(sub);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const pp::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const pp::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return 3;
  } catch (const pp::ConvergenceError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
