#include "clim/io.hpp"
#include "clim/parallel.hpp"
#include "clim/sampling.hpp"
#include "clim/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace clim;

namespace
{

/// Exit codes.
constexpr int ok = 0, property_failed = 1, parse_failed = 2, domain_failed = 3;

/// Malformed flag values or input files; reported like DSL parse errors.
class InputError : public Error
{
public:
  using Error::Error;
};

struct Config
{
  int M = 3;
  std::string weight;
  std::string hamiltonian;
  std::string hamiltonian_file;
  std::string points_file;
  std::size_t count = 10;
  std::uint64_t seed = 1;
  double radius = 1.0;
  std::vector<int> schedule{1, 2, 4, 8, 16, 32, 64};
  std::string output;
  std::string format = "json";
  std::string suite = "all";
  std::size_t dimension_cap = 5000;
  double tol_exact = 1e-12;
  double tol_exponent = -0.7;
  VerifyOptions verify;
};

std::string read_file(const std::string &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw DomainError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// "1,0,2" -> {1,0,2}; malformed text is a parse error.
std::vector<int> parse_int_list(const std::string &text, const std::string &what)
{
  std::vector<int> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ','))
  {
    std::size_t used = 0;
    int v = 0;
    try
    {
      v = std::stoi(item, &used);
    }
    catch (const std::exception &)
    {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos)
      throw InputError(what + ": '" + item + "' is not an integer");
    out.push_back(v);
  }
  if (out.empty())
    throw InputError(what + " is empty");
  return out;
}

Weight parse_weight(const Config &c)
{
  if (c.weight.empty())
    throw DomainError("--weight is required");
  const auto w = parse_int_list(c.weight, "--weight");
  if (static_cast<int>(w.size()) != c.M - 1)
    throw DomainError("--weight needs " + std::to_string(c.M - 1) + " entries for sl_" + std::to_string(c.M));
  for (int v : w)
    if (v < 0)
      throw DomainError("--weight must be dominant (nonnegative entries)");
  return Weight(w);
}

void emit(const Config &c, const std::string &text)
{
  if (c.output.empty())
  {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out)
    throw DomainError("cannot write " + c.output);
  out << text;
}

int cmd_repinfo(const Config &c)
{
  const AlgebraSpec spec(c.M);
  const Weight w = parse_weight(c);
  IrrepOptions options;
  options.dimension_cap = c.dimension_cap;
  const auto weyl = weyl_dimension(spec, w);
  if (weyl > c.dimension_cap)
    throw DimensionCapExceeded("Weyl dimension " + std::to_string(weyl) + " exceeds the cap " +
                               std::to_string(c.dimension_cap));
  const Irrep rep = build_irrep(spec, w, options);

  /// basis vectors are weight vectors; read their Dynkin labels off the H(k) diagonals
  std::map<std::vector<int>, int> diagram;
  double off_diagonal = 0.0;
  for (int b = 0; b < rep.dimension(); ++b)
  {
    std::vector<int> labels;
    for (int k = 1; k < c.M; ++k)
    {
      const Matrix &h = rep.generator(Generator::H(k));
      labels.push_back(static_cast<int>(std::lround(h(b, b).real())));
      for (int a = 0; a < rep.dimension(); ++a)
        if (a != b)
          off_diagonal = std::max(off_diagonal, std::abs(h(a, b)));
    }
    ++diagram[labels];
  }
  int multiplicity = 0;
  for (const auto &[labels, m] : diagram)
    multiplicity = std::max(multiplicity, m);

  double commutation = 0.0, unitarity = 0.0;
  for (const auto &a : spec.catalog())
  {
    for (const auto &b : spec.catalog())
    {
      const Matrix d = commutator(rep.generator(a), rep.generator(b)) - rep.algebra_image(commutator(spec, a, b));
      commutation = std::max(commutation, d.size() ? d.cwiseAbs().maxCoeff() : 0.0);
    }
    const Matrix u = rep.generator(adjoint(a)) - rep.generator(a).adjoint();
    unitarity = std::max(unitarity, u.size() ? u.cwiseAbs().maxCoeff() : 0.0);
  }
  const bool dims = static_cast<std::uint64_t>(rep.dimension()) == weyl;
  const bool passed = dims && commutation <= 1e-10 && unitarity <= 1e-10 && off_diagonal <= 1e-10;

  nlohmann::json j = {{"M", c.M},
                      {"weight", w.fundamental()},
                      {"partition", w.partition()},
                      {"dimension", {{"weyl", weyl}, {"constructed", rep.dimension()}}},
                      {"weight_diagram", {{"distinct_weights", diagram.size()}, {"max_multiplicity", multiplicity}}},
                      {"checks",
                       {{"dimension_match", dims},
                        {"commutation_residual", commutation},
                        {"unitarity_residual", unitarity},
                        {"cartan_off_diagonal", off_diagonal}}},
                      {"passed", passed}};
  if (c.format == "json")
    emit(c, j.dump(2) + "\n");
  else
  {
    std::ostringstream s;
    s << "irrep " << w.str() << " of sl_" << c.M << "\n";
    s << "dim " << rep.dimension() << " (Weyl " << weyl << ")\n";
    s << "weights " << diagram.size() << " distinct, max multiplicity " << multiplicity << "\n";
    s << "commutation residual " << commutation << ", unitarity residual " << unitarity << "\n";
    s << (passed ? "PASS" : "FAIL") << "\n";
    emit(c, s.str());
  }
  return passed ? ok : property_failed;
}

int cmd_limit(const Config &c)
{
  const AlgebraSpec spec(c.M);
  const Weight w = parse_weight(c);
  if (w.is_zero())
    throw DomainError("the zero weight has a trivial orbit; no classical limit to take");
  if (c.hamiltonian.empty() == c.hamiltonian_file.empty())
    throw DomainError("give exactly one of --hamiltonian and --hamiltonian-file");
  const std::string text = c.hamiltonian.empty() ? read_file(c.hamiltonian_file) : c.hamiltonian;
  const AbstractOperator h = parse_hamiltonian(text, spec);

  LimitRun run;
  run.hamiltonian = format(h);
  run.weight = w;
  if (!c.points_file.empty())
  {
    nlohmann::json j;
    try
    {
      j = nlohmann::json::parse(read_file(c.points_file));
    }
    catch (const nlohmann::json::parse_error &e)
    {
      throw InputError(std::string("points file: ") + e.what());
    }
    for (const auto &p : points_from_json(c.M, j))
      run.points.push_back(p.on_chart(w));
  }
  else
    run.points = sample_points(w, c.count, c.seed, c.radius);

  ConvergenceTolerance tol;
  tol.exact = c.tol_exact;
  tol.max_exponent = c.tol_exponent;
  run.reports.resize(run.points.size());
  parallel_for(run.points.size(), [&](std::size_t i) { run.reports[i] = cl_sequence(w, h, run.points[i], c.schedule, tol); });
  for (const auto &r : run.reports)
    if (!r.warning.empty())
    {
      std::cerr << "warning: " << r.warning << "\n";
      break;
    }
  emit(c, c.format == "csv" ? limit_to_csv(run) : limit_to_json(run).dump(2) + "\n");
  return run.passed() ? ok : property_failed;
}

int cmd_verify(const Config &c)
{
  VerifyOptions o = c.verify;
  o.M = c.M;
  o.count = c.count;
  o.seed = c.seed;
  o.radius = c.radius;
  const SuiteReport report = run_suite(c.suite, o);
  for (const auto &p : report.properties)
    std::cerr << (p.passed ? "PASS " : "FAIL ") << p.name << ": " << p.measured << " (tol " << p.tolerance << ")\n";
  emit(c, to_json(report).dump(2) + "\n");
  return report.passed() ? ok : property_failed;
}

/// Turns a JSON config object into flags placed before the user's own, so the
/// command line wins under the take-last policy.
std::vector<std::string> config_to_args(const std::string &path)
{
  nlohmann::json j;
  try
  {
    j = nlohmann::json::parse(read_file(path));
  }
  catch (const nlohmann::json::parse_error &e)
  {
    throw InputError(std::string("config: ") + e.what());
  }
  if (!j.is_object())
    throw InputError("config must be a JSON object");
  std::vector<std::string> args;
  for (const auto &[key, value] : j.items())
  {
    const std::string flag = "--" + key;
    if (value.is_boolean())
    {
      if (value.get<bool>())
        args.push_back(flag);
      continue;
    }
    std::string text;
    if (value.is_string())
      text = value.get<std::string>();
    else if (value.is_array())
    {
      for (std::size_t i = 0; i < value.size(); ++i)
        text += (i ? "," : "") + (value[i].is_string() ? value[i].get<std::string>() : value[i].dump());
    }
    else
      text = value.dump();
    args.push_back(flag);
    args.push_back(text);
  }
  return args;
}

} // namespace

int main(int argc, char **argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  try
  {
    /// splice --config contents in right after the subcommand
    for (std::size_t i = 0; i < args.size(); ++i)
    {
      std::string path;
      std::size_t width = 0;
      if (args[i] == "--config" && i + 1 < args.size())
      {
        path = args[i + 1];
        width = 2;
      }
      else if (args[i].rfind("--config=", 0) == 0)
      {
        path = args[i].substr(9);
        width = 1;
      }
      if (width == 0)
        continue;
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + width));
      const auto extra = config_to_args(path);
      const std::size_t at = args.empty() || args[0].rfind("-", 0) == 0 ? 0 : 1;
      args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), extra.begin(), extra.end());
      break;
    }
  }
  catch (const InputError &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return parse_failed;
  }
  catch (const ParseError &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return parse_failed;
  }
  catch (const Error &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return domain_failed;
  }

  CLI::App app{"clim: classical limits of operators on coadjoint orbits of SU(M)"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  Config c;
  std::string schedule = "1,2,4,8,16,32,64";

  auto common = [&](CLI::App *sub) {
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    sub->add_option("--M", c.M, "group size M of SU(M)")->check(CLI::Range(2, 12));
    sub->add_option("--output", c.output, "write the result here instead of stdout");
    sub->add_option("--config", "JSON file with the same keys as the flags");
  };

  auto *repinfo = app.add_subcommand("repinfo", "build an irrep and check it");
  common(repinfo);
  repinfo->add_option("--weight", c.weight, "highest weight, fundamental coordinates, e.g. 1,0")->required();
  repinfo->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  repinfo->add_option("--dimension-cap", c.dimension_cap, "refuse irreps larger than this");

  auto sampler = [&](CLI::App *sub) {
    sub->add_option("--count", c.count, "number of sampled points");
    sub->add_option("--seed", c.seed, "sampler seed");
    sub->add_option("--radius", c.radius, "sampler disc radius")->check(CLI::PositiveNumber);
  };

  auto *limit = app.add_subcommand("limit", "cl_n -> cl along the ray n*lambda");
  common(limit);
  sampler(limit);
  limit->add_option("--weight", c.weight, "highest weight lambda")->required();
  limit->add_option("--hamiltonian", c.hamiltonian, "operator in the DSL");
  limit->add_option("--hamiltonian-file", c.hamiltonian_file, "file holding the operator");
  limit->add_option("--points", c.points_file, "JSON point or array of points {\"x_i_j\": [re, im]}");
  limit->add_option("--n-schedule", schedule, "comma separated increasing n values");
  limit->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  limit->add_option("--tol-exact", c.tol_exact, "errors below this count as exact");
  limit->add_option("--tol-exponent", c.tol_exponent, "largest accepted decay exponent");

  auto *verify = app.add_subcommand("verify", "run a property suite");
  common(verify);
  sampler(verify);
  verify->add_option("--suite", c.suite, "norm, theorem3, poisson, golden-su3 or all")
      ->check(CLI::IsMember(suite_names()));
  VerifyOptions &v = c.verify;
  verify->add_option("--tol-golden", v.golden);
  verify->add_option("--tol-anchor", v.anchor);
  verify->add_option("--tol-theorem2", v.theorem2);
  verify->add_option("--tol-theorem3-held-out", v.theorem3.held_out);
  verify->add_option("--tol-theorem3-leading", v.theorem3.leading);
  verify->add_option("--tol-poisson", v.poisson);
  verify->add_option("--poisson-step", v.poisson_step);
  verify->add_option("--tol-equivariance", v.equivariance);
  verify->add_option("--tol-commutation", v.commutation);
  verify->add_option("--tol-cross-path", v.cross_path);
  verify->add_option("--tol-parser", v.parser);
  verify->add_option("--exponent-low", v.exponent_low);
  verify->add_option("--exponent-high", v.exponent_high);

  std::size_t verify_count = 100;
  try
  {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (*verify && verify->count("--count") == 0)
      c.count = verify_count;
    c.schedule = parse_int_list(schedule, "--n-schedule");
  }
  catch (const CLI::CallForHelp &e)
  {
    return app.exit(e);
  }
  catch (const CLI::ParseError &e)
  {
    app.exit(e);
    return parse_failed;
  }
  catch (const InputError &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return parse_failed;
  }
  catch (const ParseError &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return parse_failed;
  }

  try
  {
    if (*repinfo)
      return cmd_repinfo(c);
    if (*limit)
      return cmd_limit(c);
    return cmd_verify(c);
  }
  catch (const InputError &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return parse_failed;
  }
  catch (const ParseError &e)
  {
    std::cerr << "parse error: " << e.what() << "\n";
    return parse_failed;
  }
  catch (const Error &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return domain_failed;
  }
}
