#include "cli.hpp"

#include "keyrep/bounds.hpp"
#include "keyrep/measures.hpp"
#include "keyrep/report.hpp"
#include "keyrep/repsim.hpp"
#include "keyrep/states.hpp"
#include "keyrep/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace keyrep::cli {

namespace {

double parse_number(const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(v)) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

std::size_t default_dense_cap() {
  const char* env = std::getenv("KEYREP_DENSE_CAP");
  if (env == nullptr || *env == '\0') return kDefaultDenseCap;
  const double v = parse_number(env);
  if (v < 1.0 || v != std::floor(v)) throw std::invalid_argument("KEYREP_DENSE_CAP must be a positive integer");
  return static_cast<std::size_t>(v);
}

int integer_value(double v, const std::string& what) {
  if (v != std::floor(v) || std::abs(v) > 1e9) throw std::invalid_argument(what + " must be an integer");
  return static_cast<int>(v);
}

struct Common {
  std::string format = "csv";
  std::string output;
  std::size_t dense_cap = kDefaultDenseCap;

  void add_to(CLI::App* sub) {
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", output, "write to this file instead of stdout");
    sub->add_option("--dense-cap", dense_cap, "largest dense matrix dimension (env KEYREP_DENSE_CAP)")
        ->check(CLI::PositiveNumber);
  }
};

void emit(const Table& table, const Common& common, std::ostream& out) {
  const Format fmt = common.format == "json" ? Format::json : Format::csv;
  if (common.output.empty()) {
    write_table(table, fmt, out);
    return;
  }
  std::ofstream file(common.output, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file " + common.output);
  write_table(table, fmt, file);
}

std::vector<double> require_grid(const std::string& spec, const std::string& what) {
  auto grid = parse_grid(spec);
  if (grid.empty()) throw std::invalid_argument(what + " grid is empty");
  return grid;
}

Table gap_table(const std::vector<double>& grid) {
  Table t;
  t.command = "gap-table";
  t.columns = {"d", "p", "kd_lower", "repeater_upper", "gap_open"};
  for (double d : grid) {
    const auto g = gap_report(d);
    t.add_row({d, g.p, g.kd_lower.value, g.repeater_upper.value, g.gap_open()});
  }
  return t;
}

Table hiding_table(const std::vector<double>& grid) {
  Table t;
  t.command = "hiding";
  t.columns = {"m",          "ef_hiding_bound", "ed_ec_bound", "kd_ps_lower", "a0011",
               "epsilon_raw", "epsilon",         "delta",       "hypothesis"};
  for (double mv : grid) {
    const int m = integer_value(mv, "m");
    const auto ef = ef_hiding_bound(m);
    // The symmetrised hiding state is PPT, so its distillable entanglement is 0.
    const auto combined = ed_ec_bound(0.0, ef.value);
    const auto prox = pbit_proximity(m);
    const double kd = kd_ps_lower(privacy_squeeze(rho_m(m)));
    t.add_row({static_cast<std::int64_t>(m), ef.value, combined.value, kd, prox.a0011, prox.epsilon_raw,
               prox.epsilon, prox.delta, prox.hypothesis});
  }
  return t;
}

Table swap_table(Index d, Index n, std::uint64_t seed, std::size_t cap) {
  Rng rng(seed);
  const FlowerParams fp = random_flower_params(d, n, rng);
  const PureState first = regroup(flower_vector(fp, FlowerSide::first), {{"A", "A'"}, {"C_A", "C_A'"}, {"E_A"}},
                                  {"A", "C_A", "E_A"});
  const PureState second = regroup(flower_vector(fp, FlowerSide::second),
                                   {{"C_B", "C_B'"}, {"B", "B'"}, {"E_B"}}, {"C_B", "B", "E_B"});
  const auto ens = bell_swap_pure(first, second, d * n, cap);
  Table t;
  t.command = "swap-demo";
  t.columns = {"nu", "mu", "prob", "off_structure_mass", "entropy", "mc_distillable"};
  for (std::size_t i = 0; i < ens.probs.size(); ++i) {
    const auto& st = ens.states[i];
    t.add_row({static_cast<std::int64_t>(ens.outcomes[i].first), static_cast<std::int64_t>(ens.outcomes[i].second),
               ens.probs[i], off_structure_mass(st), von_neumann_entropy(st), mc_distillable(st)});
  }
  return t;
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.empty() || parts.size() > 4) throw std::invalid_argument("grid must look like a:b[:linear|geometric[:count]]");
  const double a = parse_number(parts[0]);
  if (parts.size() == 1) return {a};
  const double b = parse_number(parts[1]);
  const std::string kind = parts.size() >= 3 ? parts[2] : "linear";
  if (kind != "linear" && kind != "geometric") throw std::invalid_argument("unknown grid kind '" + kind + "'");
  std::vector<double> grid;
  if (b < a) return grid;
  if (kind == "geometric" && a <= 0.0) throw std::invalid_argument("geometric grid needs a positive start");
  const double slack = 1e-9 * std::max(1.0, std::abs(b));
  if (parts.size() == 4) {
    const double count_v = parse_number(parts[3]);
    if (count_v < 1.0 || count_v != std::floor(count_v)) throw std::invalid_argument("grid count must be positive");
    const auto count = static_cast<int>(count_v);
    if (count == 1) return {a};
    for (int i = 0; i < count; ++i) {
      const double f = static_cast<double>(i) / (count - 1);
      grid.push_back(kind == "linear" ? a + f * (b - a) : a * std::pow(b / a, f));
    }
    grid.back() = b;
    return grid;
  }
  for (double v = a; v <= b + slack; v = kind == "linear" ? v + 1.0 : v * 2.0) grid.push_back(v);
  return grid;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Key-repeater bounds, state families and protocol simulations", "keyrep"};
  app.require_subcommand(1);

  std::size_t cap = kDefaultDenseCap;
  try {
    cap = default_dense_cap();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  std::map<std::string, Common> common;
  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    common[name].dense_cap = cap;
    common[name].add_to(sub);
    return sub;
  };

  std::string d_grid = "4:1048576:geometric";
  add("gap-table", "key rate versus repeater rate for the PPT private-bit mixtures")
      ->add_option("--d", d_grid, "shield dimension grid");

  std::string suite;
  VerifyOptions vopt;
  auto* verify = add("verify", "run a verification suite");
  verify->add_option("--suite", suite, "one of pbit, ppt-mixture, hiding, swap, erasure, haar")->required();
  verify->add_option("--max-d", vopt.max_d, "largest shield dimension (pbit, ppt-mixture)");
  verify->add_option("--shield-d", vopt.shield_d, "shield dimension (erasure)");
  verify->add_option("--seed", vopt.seed, "master seed (swap, haar)");

  std::string m_grid = "2:20";
  add("hiding", "bounds for the symmetrised data-hiding family")->add_option("--m", m_grid, "m grid");

  Index swap_d = 2;
  Index swap_n = 2;
  std::uint64_t swap_seed = 0;
  auto* swap = add("swap-demo", "Bell-measurement swap of two flower states");
  swap->add_option("--d", swap_d, "key dimension")->check(CLI::PositiveNumber);
  swap->add_option("--n", swap_n, "number of shield unitaries")->check(CLI::PositiveNumber);
  swap->add_option("--seed", swap_seed, "seed for the Haar unitaries")->required();

  Index shield_d = 2;
  std::string resource = "erasure";
  std::string route = "spectral";
  auto* erasure = add("erasure-demo", "teleport a private bit's shield through the erasure resource");
  erasure->add_option("--shield-d", shield_d, "shield dimension");
  erasure->add_option("--resource", resource, "erasure or epr")->check(CLI::IsMember({"erasure", "epr"}));
  erasure->add_option("--route", route, "purification: spectral or canonical")
      ->check(CLI::IsMember({"spectral", "canonical"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  const Common& c = common[name];
  try {
    if (name == "gap-table") {
      emit(gap_table(require_grid(d_grid, "d")), c, out);
    } else if (name == "verify") {
      vopt.dense_cap = c.dense_cap;
      const auto checks = run_suite(suite, vopt);
      emit(checks_table(suite, checks), c, out);
      return all_pass(checks) ? kOk : kVerifyFailed;
    } else if (name == "hiding") {
      emit(hiding_table(require_grid(m_grid, "m")), c, out);
    } else if (name == "swap-demo") {
      emit(swap_table(swap_d, swap_n, swap_seed, c.dense_cap), c, out);
    } else if (name == "erasure-demo") {
      const auto demo = erasure_demo(shield_d, resource == "epr" ? ShieldResource::epr : ShieldResource::erasure,
                                     route == "canonical" ? PurificationRoute::canonical : PurificationRoute::spectral,
                                     c.dense_cap);
      emit(reports_table("erasure-demo", {demo.report}), c, out);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

}  // namespace keyrep::cli
