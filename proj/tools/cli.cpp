#include "cli.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "thmm/expansions.hpp"
#include "thmm/identities.hpp"
#include "thmm/io.hpp"
#include "thmm/moments.hpp"
#include "thmm/resolvent.hpp"

namespace thmm::cli {

namespace {

struct Config {
  std::string subcommand;
  std::string input;
  std::string out;
  std::string format = "json";
  std::optional<double> tol;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int q = 1;
  int m = 3;
  double a = 0.0;
  double b = 1.0;
  std::string which = "U";
  std::string z_list = "0,0";
  std::string center = "0";
};

// "re,im;re,im;..." with "re" alone meaning a real point.
std::vector<cplx> parse_z_list(const std::string& text) {
  std::vector<cplx> zs;
  std::stringstream all(text);
  std::string item;
  while (std::getline(all, item, ';')) {
    if (item.empty()) continue;
    const auto comma = item.find(',');
    try {
      std::size_t used = 0;
      const std::string re_s = item.substr(0, comma);
      const double re = std::stod(re_s, &used);
      if (used != re_s.size()) throw std::invalid_argument(item);
      double im = 0.0;
      if (comma != std::string::npos) {
        const std::string im_s = item.substr(comma + 1);
        im = std::stod(im_s, &used);
        if (used != im_s.size()) throw std::invalid_argument(item);
      }
      zs.emplace_back(re, im);
    } catch (const std::exception&) {
      throw InvalidArgument("cannot parse z value \"" + item + "\"");
    }
  }
  if (zs.empty()) throw InvalidArgument("empty z list");
  return zs;
}

MomentSequence load_moments(const std::string& path) {
  if (path.empty()) throw InvalidArgument("no moments file given");
  return moments_from_json(read_json_file(path));
}

void emit(const Config& cfg, const Json& doc, std::ostream& out) {
  if (cfg.out.empty()) {
    out << dump(doc);
  } else {
    write_text_file(cfg.out, dump(doc));
  }
}

int cmd_gen(const Config& cfg, std::ostream& out) {
  const GeneratedInstance inst =
      random_hausdorff_sequence(cfg.q, cfg.m, Interval(cfg.a, cfg.b), cfg.seed);
  const std::string prefix = cfg.out.empty() ? "instance" : cfg.out;
  const std::string measure_path = prefix + ".measure.json";
  const std::string moments_path = prefix + ".moments.json";
  write_text_file(measure_path, dump(measure_to_json(inst.measure)));
  write_text_file(moments_path, dump(moments_to_json(inst.moments)));
  const SolvabilityVerdict v = check_solvability(inst.moments);
  Json doc = {{"measure_file", measure_path},
              {"moments_file", moments_path},
              {"seed", cfg.seed},
              {"verdict", verdict_to_json(v)}};
  out << dump(doc);
  return kOk;
}

int cmd_check(const Config& cfg, std::ostream& out) {
  const MomentSequence seq = load_moments(cfg.input);
  const SolvabilityVerdict v =
      cfg.tol ? check_solvability(seq, *cfg.tol) : check_solvability(seq);
  emit(cfg, verdict_to_json(v), out);
  return v.pd && v.assumptions_hold() ? kOk : kAssumptionFailure;
}

int cmd_resolvent(const Config& cfg, std::ostream& out) {
  const MomentSequence seq = load_moments(cfg.input);
  const std::vector<cplx> zs = parse_z_list(cfg.z_list);
  if (cfg.which != "U" && cfg.which != "V") throw InvalidArgument("--which must be U or V");
  const bool want_u = cfg.which == "U";
  Json evals = Json::array();
  const Parity parity = parity_of(seq.order());
  if (parity == Parity::Even) {
    const EvenResolvent res(seq);
    for (cplx z : zs) evals.push_back(resolvent_to_json(want_u ? res.U_at(z) : res.V_at(z)));
  } else {
    const OddResolvent res(seq);
    for (cplx z : zs) evals.push_back(resolvent_to_json(want_u ? res.U_at(z) : res.V_at(z)));
  }
  Json doc = {{"which", cfg.which},
              {"parity", to_string(parity)},
              {"n", half_order(seq.order())},
              {"q", seq.q()},
              {"evaluations", evals}};
  emit(cfg, doc, out);
  return kOk;
}

int cmd_verify(const Config& cfg, std::ostream& out) {
  const MomentSequence seq = load_moments(cfg.input);
  const SolvabilityVerdict v = check_solvability(seq);
  const TolProfile profile = cfg.tol ? TolProfile::uniform(*cfg.tol) : TolProfile{};
  const std::optional<std::uint64_t> seed =
      cfg.seed_given ? std::optional<std::uint64_t>(cfg.seed) : std::nullopt;
  const IdentityReport report = run_battery(seq, default_grid(seq.interval()), profile, seed);
  Json doc = report_to_json(report);
  doc["verdict"] = verdict_to_json(v);
  emit(cfg, doc, out);
  if (!v.pd || !v.assumptions_hold()) return kAssumptionFailure;
  return report.overall ? kOk : kNumericalFailure;
}

int cmd_expand(const Config& cfg, std::ostream& out) {
  const MomentSequence seq = load_moments(cfg.input);
  Center center;
  if (cfg.center == "0") {
    center = Center::Zero;
  } else if (cfg.center == "a") {
    center = Center::A;
  } else {
    throw InvalidArgument("--center must be 0 or a");
  }
  const ExpansionComparison cmp = compare_expansion(seq, center);
  emit(cfg, expansion_to_json(cmp), out);
  const double tol = cfg.tol.value_or(1e-9);
  return cmp.max_diff() <= tol ? kOk : kNumericalFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Truncated Hausdorff matrix moment problem: resolvent matrices and identities"};
  app.require_subcommand(1);
  app.add_option("--tol", cfg.tol, "Tolerance override (uniform over all tiers for verify)");
  app.add_option("--seed", cfg.seed, "Random seed")->each([&cfg](const std::string&) {
    cfg.seed_given = true;
  });
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json"}));
  app.add_option("--out", cfg.out, "Output file (gen: path prefix)");

  CLI::App* gen = app.add_subcommand("gen", "Generate a random positive definite instance");
  gen->add_option("--q", cfg.q, "Block size")->check(CLI::PositiveNumber);
  gen->add_option("--m", cfg.m, "Highest moment index")->check(CLI::NonNegativeNumber);
  gen->add_option("--a", cfg.a, "Left endpoint");
  gen->add_option("--b", cfg.b, "Right endpoint");

  CLI::App* check = app.add_subcommand("check", "Positive definiteness and assumptions");
  check->add_option("moments", cfg.input, "Moments file")->required();

  CLI::App* resolvent = app.add_subcommand("resolvent", "Evaluate U or V at points");
  resolvent->add_option("moments", cfg.input, "Moments file")->required();
  resolvent->add_option("--which", cfg.which, "U or V");
  resolvent->add_option("--z", cfg.z_list, "Points as re,im;re,im;...");

  CLI::App* verify = app.add_subcommand("verify", "Run the identity battery");
  verify->add_option("moments", cfg.input, "Moments file")->required();

  CLI::App* expand = app.add_subcommand("expand", "Series coefficients of V (at 0) or U (at a)");
  expand->add_option("moments", cfg.input, "Moments file")->required();
  expand->add_option("--center", cfg.center, "0 or a");

  // Subcommand options are also accepted globally.
  for (CLI::App* sub : {gen, check, resolvent, verify, expand}) sub->fallthrough();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInputError;
  }

  try {
    if (*gen) return cmd_gen(cfg, out);
    if (*check) return cmd_check(cfg, out);
    if (*resolvent) return cmd_resolvent(cfg, out);
    if (*verify) return cmd_verify(cfg, out);
    if (*expand) return cmd_expand(cfg, out);
  } catch (const InvalidArgument& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const AssumptionViolated& e) {
    err << "assumption failure: " << e.what() << "\n";
    return kAssumptionFailure;
  } catch (const SingularMatrix& e) {
    err << "singular matrix: " << e.what() << "\n";
    return kAssumptionFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalFailure;
  }
  return kInputError;
}

}  // namespace thmm::cli
