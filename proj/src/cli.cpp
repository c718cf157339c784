#include "catperc/cli.hpp"

#include "catperc/catalan.hpp"
#include "catperc/errors.hpp"
#include "catperc/harness.hpp"
#include "catperc/report.hpp"
#include "catperc/series.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

namespace catperc {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double to_double_strict(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::logic_error&) {
    throw InvalidArgument("not a number: '" + s + "'");
  }
  if (used != s.size()) throw InvalidArgument("not a number: '" + s + "'");
  return v;
}

int to_int_strict(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::logic_error&) {
    throw InvalidArgument("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw InvalidArgument("not an integer: '" + s + "'");
  return v;
}

Vec2 parse_vec(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw InvalidArgument("expected a vector 'x,y', got '" + text + "'");
  return {to_double_strict(parts[0]), to_double_strict(parts[1])};
}

// Options shared by every subcommand.
struct Common {
  std::uint64_t seed = 1;
  std::optional<int> reps;
  std::string out_path;
  std::string format = "csv";
  int threads = 1;
  std::string svg_path;
  double max_seconds = 0.0;
};

struct Outputs {
  std::ostream& out;
  std::ostream& err;
  const Common& common;

  // Writes to --out when given, else to the stream.
  template <typename Fn>
  void emit(Fn&& write) const {
    if (common.out_path.empty()) {
      write(out);
      return;
    }
    std::ofstream file(common.out_path, std::ios::binary);
    if (!file) throw InvalidArgument("cannot open output file " + common.out_path);
    write(file);
  }
};

int finish_experiment(const ExperimentSpec& spec, const std::string& command, const Outputs& io) {
  const RunResult result = run(spec);
  const HeaderLines extra{{"command", command}};
  io.emit([&](std::ostream& os) {
    if (io.common.format == "json") {
      write_json(os, result, extra);
    } else {
      write_csv(os, result, extra);
    }
  });
  if (!io.common.svg_path.empty()) {
    std::ofstream svg(io.common.svg_path, std::ios::binary);
    if (!svg) throw InvalidArgument("cannot open svg file " + io.common.svg_path);
    write_svg(svg, result);
  }
  if (!result.complete) {
    io.err << "incomplete run: " << result.note << '\n';
    return kExitResource;
  }
  return kExitOk;
}

int theta_exact(int n, std::optional<int> k_max, const Outputs& io) {
  nlohmann::ordered_json doc;
  std::string text;
  doc["n"] = n;
  if (k_max) {
    const auto coeffs = exact_theta_coeffs(n, *k_max);
    std::vector<std::string> cs;
    for (const auto& c : coeffs) cs.push_back(c.str());
    for (std::size_t k = 0; k < cs.size(); ++k) text += (k ? "," : "") + cs[k];
    doc["k_max"] = *k_max;
    doc["coefficients"] = cs;
  } else {
    text = exact_theta_poly(n).to_string();
    doc["theta"] = text;
  }
  io.emit([&](std::ostream& os) { os << (io.common.format == "json" ? doc.dump(2) : text) << '\n'; });
  return kExitOk;
}

int lower_bound(int n0, double precision, const Outputs& io) {
  if (!(precision > 0.0)) throw InvalidArgument("precision must be positive");
  const Discriminant d = discriminant(n0);
  const RootInterval r = lower_bound_pm(n0, to_rational(precision));
  nlohmann::ordered_json doc;
  doc["n0"] = n0;
  doc["discriminant"] = d.delta.to_string();
  doc["lo"] = to_double(r.lo);
  doc["hi"] = to_double(r.hi);
  doc["lo_exact"] = to_string(r.lo);
  doc["hi_exact"] = to_string(r.hi);
  doc["exact"] = r.exact();
  io.emit([&](std::ostream& os) {
    if (io.common.format == "json") {
      os << doc.dump(2) << '\n';
      return;
    }
    os << "delta: " << d.delta.to_string() << '\n';
    os << "p_" << n0 << " in [" << format_number(to_double(r.lo)) << ", " << format_number(to_double(r.hi)) << "]\n";
    if (r.exact()) os << "exact: " << to_string(r.lo) << '\n';
  });
  return kExitOk;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> xs;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 2) throw InvalidArgument("integer range must be 'a:b'");
    const int a = to_int_strict(parts[0]), b = to_int_strict(parts[1]);
    if (b < a) throw InvalidArgument("empty integer range '" + text + "'");
    for (int k = a; k <= b; ++k) xs.push_back(k);
    return xs;
  }
  for (const auto& part : split(text, ',')) xs.push_back(to_int_strict(part));
  if (xs.empty()) throw InvalidArgument("empty integer list");
  return xs;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> xs;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw InvalidArgument("grid must be 'start:stop:step'");
    const double a = to_double_strict(parts[0]), b = to_double_strict(parts[1]), step = to_double_strict(parts[2]);
    if (!(step > 0.0) || b < a) throw InvalidArgument("bad grid '" + text + "'");
    const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9));
    for (long k = 0; k <= count; ++k) xs.push_back(std::min(b, a + static_cast<double>(k) * step));
    return xs;
  }
  for (const auto& part : split(text, ',')) xs.push_back(to_double_strict(part));
  if (xs.empty()) throw InvalidArgument("empty grid");
  return xs;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Catalan percolation toolkit: exact series bounds and Monte Carlo experiments", "catperc"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--seed", common.seed, "64-bit seed");
  app.add_option("--reps", common.reps, "replicates per point")->check(CLI::PositiveNumber);
  app.add_option("--out", common.out_path, "output file (default: stdout)");
  app.add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", common.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--svg", common.svg_path, "also write an SVG chart");
  app.add_option("--max-seconds", common.max_seconds, "time budget; exceeded runs are reported incomplete");

  ExperimentSpec spec;
  std::string grid_text, list_text, theta_csv, u_text, v_text, direction = "up";
  std::optional<int> k_max;
  int n0_single = 3;
  double precision = 1e-9;
  bool exact_theta = false;

  auto* phi = app.add_subcommand("phi-curve", "phi_n(p) = P({0,n} occupied | open) over a p grid");
  phi->add_option("--n", spec.n, "window length")->default_val(100);
  phi->add_option("--p-grid", grid_text, "start:stop:step or list")->default_val("0:1:0.05");

  auto* pc = app.add_subcommand("pc-estimate", "coupled critical value p~_c(n)");
  pc->add_option("--n", spec.n, "window length")->default_val(2000);

  auto* trunc = app.add_subcommand("truncated-pc", "p~_c^+(L,n) for a sweep of L on shared fields");
  trunc->add_option("--n", spec.n, "window length")->default_val(2000);
  trunc->add_option("--L", list_text, "truncation lengths")->default_val("1,2,4,8,16,32");

  auto* theta = app.add_subcommand("theta-exact", "exact theta_n(p)");
  theta->add_option("--n", spec.n, "window length")->required();
  theta->add_option("--k-max", k_max, "print only the power-series coefficients up to p^k_max");

  auto* lb = app.add_subcommand("lower-bound", "certified bound p_n0 from the discriminant");
  lb->add_option("--n0", n0_single, "cutoff")->required();
  lb->add_option("--precision", precision, "interval width")->default_val(1e-9);

  auto* lbmc = app.add_subcommand("lower-bound-mc", "numeric p_c^-(n0) from estimated theta_n");
  lbmc->add_option("--n0", list_text, "cutoffs, a:b or list")->default_val("1:10");
  lbmc->add_option("--tail-length", spec.tail_length, "terms of the recurrence")->default_val(4000);
  lbmc->add_option("--tolerance", spec.tolerance, "bisection tolerance")->default_val(1e-4);
  lbmc->add_option("--theta-csv", theta_csv, "theta-hat table with columns n,p,theta_hat,stderr");
  lbmc->add_flag("--exact", exact_theta, "use exact theta_n (n0 <= 8)");

  auto* edge = app.add_subcommand("edge-speed", "edge speeds alpha, beta of enhanced oriented percolation");
  edge->add_option("--p", grid_text, "site density (list)")->default_val("0.7055");
  edge->add_option("--q", spec.q, "row-edge density")->default_val(0.0);
  edge->add_option("--n", spec.n, "depth is 2n levels")->default_val(1000);

  auto* cross = app.add_subcommand("crossing", "parallelogram crossing probability");
  cross->add_option("--p", grid_text, "site density (list)")->default_val("0.7055");
  cross->add_option("--q", spec.q, "row-edge density")->default_val(0.0);
  cross->add_option("--m", spec.m, "height of R((ell,0),(m + sign*4*ell, m))")->default_val(200);
  cross->add_option("--ell", spec.ell, "base width; 0 selects ceil(m^0.45)")->default_val(0);
  cross->add_option("--sign", spec.sign, "-1 or 1")->check(CLI::IsMember({-1, 1}))->default_val(-1);
  cross->add_option("--u", u_text, "generator u as x,y (with --v, overrides m/ell)");
  cross->add_option("--v", v_text, "generator v as x,y");
  cross->add_option("--direction", direction, "up, right or left")->check(CLI::IsMember({"up", "right", "left"}));
  cross->add_option("--band", spec.band, "strip width")->default_val(1.0);

  auto* def = app.add_subcommand("defects", "survival in oriented percolation with geometric defects");
  def->add_option("--p", grid_text, "base bond probability (list)")->default_val("0.95");
  def->add_option("--delta", spec.delta, "geometric parameter")->default_val(0.05);
  def->add_option("--width", spec.width, "columns; 0 selects n-max + 1")->default_val(0);
  def->add_option("--n-max", spec.n, "levels")->default_val(2000);

  auto* coup = app.add_subcommand("coupling-check", "coupling implications on sampled realizations");
  coup->add_option("--n", spec.n, "window length")->default_val(50);
  coup->add_option("--p", grid_text, "parameter list")->default_val("0.5,0.72,0.9");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << "run 'catperc --help' for usage\n";
    return kExitUsage;
  }

  const Outputs io{out, err, common};
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "theta-exact") return theta_exact(spec.n, k_max, io);
    if (command == "lower-bound") return lower_bound(n0_single, precision, io);

    spec.seed = common.seed;
    spec.threads = common.threads;
    spec.max_seconds = common.max_seconds;
    if (!grid_text.empty()) spec.p_grid = parse_grid(grid_text);
    int default_reps = 1000;
    if (command == "phi-curve") {
      spec.kind = ExperimentKind::phi_curve;
      default_reps = 10000;
    } else if (command == "pc-estimate") {
      spec.kind = ExperimentKind::pc_tilde;
      default_reps = 2000;
    } else if (command == "truncated-pc") {
      spec.kind = ExperimentKind::truncated_pc;
      spec.L = parse_int_list(list_text);
      default_reps = 2000;
    } else if (command == "lower-bound-mc") {
      spec.kind = ExperimentKind::lower_bound_mc;
      spec.n0 = parse_int_list(list_text);
      default_reps = 100000;
      if (!theta_csv.empty() && exact_theta) throw InvalidArgument("--theta-csv and --exact are exclusive");
      if (!theta_csv.empty()) {
        std::ifstream in(theta_csv);
        if (!in) throw InvalidArgument("cannot read " + theta_csv);
        spec.theta_table = read_theta_csv(in);
      }
      spec.exact_theta = exact_theta;
    } else if (command == "edge-speed") {
      spec.kind = ExperimentKind::edge_speed;
      default_reps = 200;
    } else if (command == "crossing") {
      spec.kind = ExperimentKind::crossing;
      default_reps = 2000;
      if (u_text.empty() != v_text.empty()) throw InvalidArgument("--u and --v must be given together");
      if (!u_text.empty()) spec.generators = std::make_pair(parse_vec(u_text), parse_vec(v_text));
      spec.direction = direction == "right" ? Direction::right : direction == "left" ? Direction::left : Direction::up;
    } else if (command == "defects") {
      spec.kind = ExperimentKind::defects;
      default_reps = 1000;
    } else if (command == "coupling-check") {
      spec.kind = ExperimentKind::coupling_check;
      default_reps = 10000;
    }
    spec.reps = common.reps.value_or(default_reps);
    return finish_experiment(spec, command, io);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DegenerateRegion& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << '\n';
    return kExitResource;
  }
}

}  // namespace catperc
