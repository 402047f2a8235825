// Copyright 2026 The qdn Authors
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

#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdn/errors.hpp"
#include "qdn/netdsl.hpp"
#include "qdn/network.hpp"
#include "qdn/povm.hpp"
#include "qdn/scenarios.hpp"

namespace qdn::cli {

namespace {

// Rates below this are treated as zero in human-readable output and dropped
// from row listings unless --all is given.
constexpr double kDisplayZero = 1e-12;

struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, std::string message) {
  throw Failure{code, std::move(message)};
}

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

std::string human(double v) {
  if (std::abs(v) < kDisplayZero) return "0";
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

std::string human(std::complex<double> z) {
  const double re = std::abs(z.real()) < kDisplayZero ? 0.0 : z.real();
  const double im = std::abs(z.imag()) < kDisplayZero ? 0.0 : z.imag();
  std::ostringstream s;
  s << std::setprecision(6);
  if (im == 0.0) {
    s << re;
  } else if (re == 0.0) {
    s << im << 'i';
  } else {
    s << re << (im < 0 ? '-' : '+') << std::abs(im) << 'i';
  }
  return s.str();
}

std::string joined_detectors(Label label, char sep) {
  std::string out;
  for (int m : label_detectors(label)) {
    if (!out.empty()) out += sep;
    out += std::to_string(m);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(kIoError, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(kIoError, "error while reading '" + path + "'");
  return buf.str();
}

void print_diagnostics(const std::string& origin,
                       const std::vector<Diagnostic>& diagnostics,
                       std::ostream& err) {
  for (const auto& d : diagnostics) err << origin << ':' << to_string(d) << '\n';
}

// Source selection shared by rates/povm/sweep/export.
struct Source {
  std::string file;
  std::string scenario;
};

void add_source_options(CLI::App& cmd, Source& src) {
  cmd.add_option("file", src.file, "network description (.qdn)");
  cmd.add_option("--scenario", src.scenario, "built-in scenario name")
      ->check(CLI::IsMember(scenario_names()));
}

NetworkDescription load(const Source& src, std::ostream& err) {
  if (src.file.empty() == src.scenario.empty()) {
    fail(kUserError, "give exactly one of a network file or --scenario NAME");
  }
  if (!src.scenario.empty()) return build_scenario(src.scenario);
  const std::string text = read_file(src.file);
  ParseResult parsed = parse_network(text);
  print_diagnostics(src.file, parsed.diagnostics, err);
  if (!parsed.ok()) fail(kUserError, "'" + src.file + "' has errors");
  return std::move(*parsed.network);
}

double constant_value(const std::string& text, const std::string& what) {
  try {
    const auto z = eval(parse_expr(text), {});
    if (std::abs(z.imag()) > 0.0) {
      fail(kUserError, what + ": value '" + text + "' is not real");
    }
    return z.real();
  } catch (const MissingBinding& e) {
    fail(kUserError, what + ": value '" + text + "' refers to '" + e.parameter() +
                         "'; only constants are allowed");
  } catch (const Error& e) {
    fail(kUserError, what + ": cannot read '" + text + "': " + e.what());
  }
}

Binding parse_settings(const std::vector<std::string>& settings,
                       const NetworkDescription& net) {
  Binding binding;
  const std::set<std::string> declared(net.parameters.begin(), net.parameters.end());
  for (const auto& s : settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      fail(kUserError, "--set expects NAME=VALUE, got '" + s + "'");
    }
    const std::string name = s.substr(0, eq);
    if (!declared.contains(name)) {
      fail(kUserError, "--set: network '" + net.name + "' has no parameter '" + name + "'");
    }
    binding[name] = constant_value(s.substr(eq + 1), "--set " + name);
  }
  return binding;
}

void require_bound(const NetworkDescription& net, const Binding& binding) {
  const auto missing = unbound_parameters(net, binding);
  if (missing.empty()) return;
  std::string names;
  for (const auto& m : missing) names += (names.empty() ? "" : ", ") + m;
  fail(kUserError, "unbound parameter" + std::string(missing.size() > 1 ? "s " : " ") +
                       names + " (use --set NAME=VALUE)");
}

Evaluation evaluate_or_fail(const NetworkDescription& net, const Binding& binding,
                            bool normalize) {
  try {
    return evaluate(net, binding, {.normalize = normalize});
  } catch (const Error& e) {
    fail(kUserError, e.what());
  }
}

std::vector<std::pair<Label, double>> selected_rows(const RateTable& table, bool all) {
  std::vector<std::pair<Label, double>> rows;
  for (const auto& [label, p] : table.rates) {
    if (all || std::abs(p) >= kDisplayZero) rows.emplace_back(label, p);
  }
  return rows;
}

// ---------------------------------------------------------------------------

int cmd_check(const std::string& path, std::ostream& out, std::ostream& err) {
  const std::string text = read_file(path);
  ParseResult parsed = parse_network(text);
  std::vector<Diagnostic> diagnostics = parsed.diagnostics;
  if (parsed.ok()) {
    const auto& net = *parsed.network;
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> angle(-M_PI, M_PI);
    constexpr int kSamples = 8;
    for (std::size_t k = 0; k < net.maps.size(); ++k) {
      const Location where = k < net.source.maps.size() ? net.source.maps[k] : Location{};
      double worst = 0.0;
      for (int s = 0; s < kSamples; ++s) {
        Binding b;
        for (const auto& p : net.parameters) b[p] = angle(rng);
        try {
          worst = std::max(worst, semi_unitarity_defect(realize(net.maps[k], b)));
        } catch (const Error& e) {
          diagnostics.push_back({Severity::kWarning, where,
                                 std::string("could not evaluate at a sampled binding: ") +
                                     e.what()});
          break;
        }
      }
      if (worst > 1e-10) {
        std::ostringstream msg;
        msg << "map " << k << " -> " << k + 1
            << " is not semi-unitary at sampled bindings (defect " << worst << ")";
        diagnostics.push_back({Severity::kError, where, msg.str()});
      }
    }
  }
  print_diagnostics(path, diagnostics, err);
  if (has_errors(diagnostics)) return kUserError;
  const auto& net = *parsed.network;
  out << path << ": ok (" << net.stages.size() << " stages, " << net.maps.size()
      << " maps, " << net.parameters.size() << " parameters)\n";
  return kOk;
}

struct RatesOptions {
  Source source;
  std::vector<std::string> settings;
  bool json = false;
  bool csv = false;
  bool all = false;
  bool normalize = false;
};

int cmd_rates(const RatesOptions& o, std::ostream& out, std::ostream& err) {
  const NetworkDescription net = load(o.source, err);
  const Binding binding = parse_settings(o.settings, net);
  require_bound(net, binding);
  const Evaluation ev = evaluate_or_fail(net, binding, o.normalize);
  const auto rows = selected_rows(ev.rates, o.all);

  if (o.json) {
    nlohmann::ordered_json doc;
    doc["network"] = net.name;
    doc["binding"] = nlohmann::ordered_json::object();
    for (const auto& p : net.parameters) doc["binding"][p] = binding.at(p);
    doc["rates"] = nlohmann::ordered_json::array();
    for (const auto& [label, p] : rows) {
      doc["rates"].push_back(
          {{"label", label}, {"detectors", label_detectors(label)}, {"p", p}});
    }
    out << doc.dump(2) << '\n';
  } else if (o.csv) {
    out << "label,detectors,rate\n";
    for (const auto& [label, p] : rows) {
      out << label << ',' << joined_detectors(label, ';') << ',' << shortest(p) << '\n';
    }
  } else {
    out << "# network " << net.name << '\n';
    out << "# binding";
    for (const auto& p : net.parameters) out << ' ' << p << '=' << binding.at(p);
    out << '\n';
    out << std::left << std::setw(8) << "label" << std::setw(14) << "detectors"
        << "probability\n";
    for (const auto& [label, p] : rows) {
      out << std::left << std::setw(8) << label << std::setw(14) << format_detectors(label)
          << human(p) << '\n';
    }
  }
  return kOk;
}

int cmd_povm(const RatesOptions& o, std::ostream& out, std::ostream& err) {
  const NetworkDescription net = load(o.source, err);
  const Binding binding = parse_settings(o.settings, net);
  require_bound(net, binding);
  TransitionMatrix total;
  try {
    total = total_transition(net, binding);
  } catch (const Error& e) {
    fail(kUserError, e.what());
  }
  const auto povms = povm_elements(kraus_operators(total, kDisplayZero));
  const auto& basis = net.initial_stage()->basis();

  if (o.json) {
    nlohmann::ordered_json doc;
    doc["network"] = net.name;
    doc["binding"] = nlohmann::ordered_json::object();
    for (const auto& p : net.parameters) doc["binding"][p] = binding.at(p);
    doc["basis"] = nlohmann::ordered_json::array();
    for (const auto& e : basis) doc["basis"].push_back(to_string(e));
    doc["povms"] = nlohmann::ordered_json::array();
    for (const auto& e : povms) {
      nlohmann::ordered_json re = nlohmann::ordered_json::array();
      nlohmann::ordered_json im = nlohmann::ordered_json::array();
      for (Eigen::Index r = 0; r < e.matrix.rows(); ++r) {
        std::vector<double> rr, ii;
        for (Eigen::Index c = 0; c < e.matrix.cols(); ++c) {
          rr.push_back(e.matrix(r, c).real());
          ii.push_back(e.matrix(r, c).imag());
        }
        re.push_back(rr);
        im.push_back(ii);
      }
      doc["povms"].push_back({{"label", e.label},
                              {"detectors", label_detectors(e.label)},
                              {"re", re},
                              {"im", im}});
    }
    out << doc.dump(2) << '\n';
    return kOk;
  }

  out << "# network " << net.name << '\n';
  out << "# initial basis:";
  for (const auto& e : basis) out << ' ' << to_string(e);
  out << '\n';
  std::size_t width = 0;
  for (const auto& e : basis) width = std::max(width, to_string(e).size());
  for (const auto& e : povms) {
    out << "\nE[" << e.label << "] detectors " << format_detectors(e.label) << '\n';
    std::vector<std::vector<std::string>> cells(basis.size());
    std::size_t cell = 0;
    for (std::size_t r = 0; r < basis.size(); ++r) {
      for (std::size_t c = 0; c < basis.size(); ++c) {
        cells[r].push_back(human(e.matrix(static_cast<Eigen::Index>(r),
                                          static_cast<Eigen::Index>(c))));
        cell = std::max(cell, cells[r].back().size());
      }
    }
    for (std::size_t r = 0; r < basis.size(); ++r) {
      out << "  " << std::left << std::setw(static_cast<int>(width)) << to_string(basis[r])
          << " [";
      for (std::size_t c = 0; c < basis.size(); ++c) {
        out << ' ' << std::right << std::setw(static_cast<int>(cell)) << cells[r][c];
      }
      out << " ]\n";
    }
  }
  return kOk;
}

struct SweepAxis {
  std::string name;
  std::vector<double> values;
};

SweepAxis parse_axis(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) {
    fail(kUserError, "--sweep expects NAME=START:STOP:STEPS, got '" + spec + "'");
  }
  SweepAxis axis{spec.substr(0, eq), {}};
  std::vector<std::string> parts;
  std::stringstream rest(spec.substr(eq + 1));
  for (std::string part; std::getline(rest, part, ':');) parts.push_back(part);
  if (parts.size() != 3) {
    fail(kUserError, "--sweep expects NAME=START:STOP:STEPS, got '" + spec + "'");
  }
  const double start = constant_value(parts[0], "--sweep " + axis.name);
  const double stop = constant_value(parts[1], "--sweep " + axis.name);
  long long steps = 0;
  auto [ptr, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), steps);
  if (ec != std::errc{} || ptr != parts[2].data() + parts[2].size() || steps < 1) {
    fail(kUserError, "--sweep " + axis.name + ": STEPS must be an integer >= 1");
  }
  for (long long k = 0; k < steps; ++k) {
    axis.values.push_back(steps == 1 ? start
                                     : start + (stop - start) * static_cast<double>(k) /
                                                   static_cast<double>(steps - 1));
  }
  return axis;
}

struct SweepOptions {
  RatesOptions rates;
  std::vector<std::string> sweeps;
  std::string out_file;
  std::size_t max_grid = kDefaultGridCap;
  unsigned threads = 0;
};

int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err) {
  const NetworkDescription net = load(o.rates.source, err);
  const Binding fixed = parse_settings(o.rates.settings, net);

  std::map<std::string, SweepAxis> by_name;
  for (const auto& s : o.sweeps) {
    SweepAxis axis = parse_axis(s);
    if (std::find(net.parameters.begin(), net.parameters.end(), axis.name) ==
        net.parameters.end()) {
      fail(kUserError, "--sweep: network '" + net.name + "' has no parameter '" +
                           axis.name + "'");
    }
    if (fixed.contains(axis.name)) {
      fail(kUserError, "parameter '" + axis.name + "' is both --set and --sweep");
    }
    if (!by_name.emplace(axis.name, axis).second) {
      fail(kUserError, "parameter '" + axis.name + "' swept twice");
    }
  }
  // axes in declaration order; the first is the slowest-varying
  std::vector<SweepAxis> axes;
  for (const auto& p : net.parameters) {
    if (auto it = by_name.find(p); it != by_name.end()) axes.push_back(it->second);
  }

  std::size_t grid = 1;
  for (const auto& a : axes) {
    if (grid > o.max_grid / a.values.size()) {
      fail(kUserError, "sweep grid exceeds the cap of " + std::to_string(o.max_grid) +
                           " points");
    }
    grid *= a.values.size();
  }
  if (grid > o.max_grid) {
    fail(kUserError, "sweep grid exceeds the cap of " + std::to_string(o.max_grid) + " points");
  }
  {
    Binding probe = fixed;
    for (const auto& a : axes) probe[a.name] = a.values.front();
    require_bound(net, probe);
  }

  const auto binding_at = [&](std::size_t index) {
    Binding b = fixed;
    for (std::size_t k = axes.size(); k-- > 0;) {
      const auto n = axes[k].values.size();
      b[axes[k].name] = axes[k].values[index % n];
      index /= n;
    }
    return b;
  };

  std::vector<std::optional<RateTable>> results(grid);
  std::vector<std::string> errors(grid);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < grid;) {
      try {
        results[k] = evaluate(net, binding_at(k), {.normalize = o.rates.normalize}).rates;
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    }
  };
  unsigned n_threads = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, grid));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  for (std::size_t k = 0; k < grid; ++k) {
    if (!errors[k].empty()) {
      fail(kUserError, "grid point " + std::to_string(k) + ": " + errors[k]);
    }
  }

  std::set<Label> labels;
  for (const auto& r : results) {
    for (const auto& [label, p] : r->rates) {
      if (o.rates.all || std::abs(p) >= kDisplayZero) labels.insert(label);
    }
  }

  std::ofstream file;
  if (!o.out_file.empty()) {
    file.open(o.out_file, std::ios::binary | std::ios::trunc);
    if (!file) fail(kIoError, "cannot write '" + o.out_file + "'");
  }
  std::ostream& sink = o.out_file.empty() ? out : file;
  for (const auto& a : axes) sink << a.name << ',';
  sink << "label,detectors,rate\n";
  for (std::size_t k = 0; k < grid; ++k) {
    const Binding b = binding_at(k);
    for (Label label : labels) {
      for (const auto& a : axes) sink << shortest(b.at(a.name)) << ',';
      auto it = results[k]->rates.find(label);
      const double p = it == results[k]->rates.end() ? 0.0 : it->second;
      sink << label << ',' << joined_detectors(label, ';') << ',' << shortest(p) << '\n';
    }
  }
  sink.flush();
  if (!sink) fail(kIoError, "error writing sweep output");
  return kOk;
}

int cmd_export(const Source& src, const std::string& out_file, std::ostream& out,
               std::ostream& err) {
  const NetworkDescription net = load(src, err);
  const std::string text = format_network(net);
  if (out_file.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream file(out_file, std::ios::binary | std::ios::trunc);
  if (!file) fail(kIoError, "cannot write '" + out_file + "'");
  file << text;
  if (!file.flush()) fail(kIoError, "error writing '" + out_file + "'");
  return kOk;
}

void add_rate_options(CLI::App& cmd, RatesOptions& o) {
  add_source_options(cmd, o.source);
  cmd.add_option("--set", o.settings, "bind a parameter: NAME=VALUE (radians; pi allowed)")
      ->expected(1, -1);
  cmd.add_flag("--normalize", o.normalize, "rescale the initial state to unit norm");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qdn: quantized detector network POVMs and outcome rates", "qdn"};
  app.require_subcommand(1);

  std::string check_path;
  auto* check = app.add_subcommand("check", "validate a network file");
  check->add_option("file", check_path, "network description (.qdn)")->required();

  RatesOptions rates;
  auto* rates_cmd = app.add_subcommand("rates", "outcome and coincidence rates");
  add_rate_options(*rates_cmd, rates);
  auto* fmt = rates_cmd->add_option_group("format");
  fmt->add_flag("--json", rates.json, "JSON output");
  fmt->add_flag("--csv", rates.csv, "CSV output");
  fmt->require_option(0, 1);
  rates_cmd->add_flag("--all", rates.all, "include rates below 1e-12");

  RatesOptions povm;
  auto* povm_cmd = app.add_subcommand("povm", "print the non-zero POVM elements");
  add_rate_options(*povm_cmd, povm);
  povm_cmd->add_flag("--json", povm.json, "JSON output");

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "rates over a parameter grid, as CSV");
  add_rate_options(*sweep_cmd, sweep.rates);
  sweep_cmd->add_option("--sweep", sweep.sweeps, "NAME=START:STOP:STEPS")->expected(1, -1);
  sweep_cmd->add_option("--out", sweep.out_file, "write CSV here instead of stdout");
  sweep_cmd->add_flag("--all", sweep.rates.all, "keep labels whose rate is always below 1e-12");
  sweep_cmd->add_option("--max-grid", sweep.max_grid, "largest allowed grid")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--threads", sweep.threads, "worker threads (default: all cores)");

  Source export_src;
  std::string export_out;
  auto* export_cmd = app.add_subcommand("export", "print a network in .qdn syntax");
  add_source_options(*export_cmd, export_src);
  export_cmd->add_option("--out", export_out, "write here instead of stdout");

  app.add_subcommand("scenarios", "list the built-in scenarios");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUserError;
  }

  try {
    if (*check) return cmd_check(check_path, out, err);
    if (*rates_cmd) return cmd_rates(rates, out, err);
    if (*povm_cmd) return cmd_povm(povm, out, err);
    if (*sweep_cmd) return cmd_sweep(sweep, out, err);
    if (*export_cmd) return cmd_export(export_src, export_out, out, err);
    for (const auto& name : scenario_names()) out << name << '\n';
    return kOk;
  } catch (const Failure& f) {
    err << "qdn: " << f.message << '\n';
    return f.code;
  } catch (const Error& e) {
    err << "qdn: " << e.what() << '\n';
    return kUserError;
  }
}

}  // namespace qdn::cli
