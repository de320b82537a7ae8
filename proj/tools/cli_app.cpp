#include "cli_app.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rmcalc/density.hpp"
#include "rmcalc/encodings.hpp"
#include "rmcalc/errors.hpp"
#include "rmcalc/expr.hpp"
#include "rmcalc/moments.hpp"
#include "rmcalc/sampler.hpp"

namespace rmcalc::cli {

namespace {

using nlohmann::json;

struct Input {
  std::string expr;
  std::string json_file;
};

void add_input(CLI::App* cmd, Input& in) {
  cmd->add_option("expr", in.expr, "Matrix expression, e.g. \"wigner + wishart(1/2)\"");
  cmd->add_option("--json", in.json_file, "Polynomial JSON file (bipoly format) instead of an expression");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("cannot read '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Lmz of the input, from either an expression or a polynomial file.
BiPoly resolve(const Input& in) {
  if (!in.expr.empty() && !in.json_file.empty()) throw InvalidArgument("give an expression or --json, not both");
  if (!in.json_file.empty()) {
    std::string kind;
    const BiPoly p = bipoly_from_json(read_file(in.json_file), &kind);
    const Kind k = kind.empty() ? Kind::mz : parse_kind(kind);
    if (p.u_label() != kind_labels(k).first || p.v_label() != kind_labels(k).second)
      throw InvalidArgument("polynomial labels (" + p.u_label() + ", " + p.v_label() + ") do not match kind " +
                            kind_name(k));
    return canonicalize(to_mz(p, k));
  }
  if (in.expr.empty()) throw InvalidArgument("missing expression (or --json file)");
  return evaluate(*parse_expr(in.expr));
}

json poly_json(const BiPoly& p, Kind k) {
  json j = json::parse(to_json(p, kind_name(k)));
  j["pretty"] = to_string(p);
  return j;
}

std::string join(const std::vector<Rational>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s;
}

json strings(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot write '" + path + "'");
  f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random matrix calculator: algebraic eigenvalue distributions as bivariate polynomials", "rmcalc"};
  app.require_subcommand(1);

  Input in;
  std::string format = "text";

  auto* poly = app.add_subcommand("poly", "Canonical Lmz polynomial as JSON");
  add_input(poly, in);

  std::string kind = "mz";
  auto* encode = app.add_subcommand("encode", "Convert to another encoding");
  add_input(encode, in);
  encode->add_option("--kind", kind, "mz, gz, rg, sy, muz or etaz")->required();

  std::optional<double> zmin, zmax;
  int points = 1001;
  std::string out_path;
  auto* density = app.add_subcommand("density", "Density on a grid: CSV \"z,f\" plus a JSON sidecar");
  add_input(density, in);
  density->add_option("--zmin", zmin, "Grid start (default: support estimate - 0.5)");
  density->add_option("--zmax", zmax, "Grid end (default: support estimate + 0.5)");
  density->add_option("--points", points, "Grid points")->check(CLI::Range(2, 10000000));
  density->add_option("--out", out_path, "CSV path; the sidecar goes to <out>.json");

  int n = 4;
  auto* moments = app.add_subcommand("moments", "Moments M_0..M_n");
  add_input(moments, in);
  moments->add_option("--n", n, "Highest moment index")->check(CLI::Range(0, 100000));
  moments->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* cumulants = app.add_subcommand("cumulants", "Free cumulants K_1..K_n");
  add_input(cumulants, in);
  cumulants->add_option("--n", n, "Highest cumulant index")->check(CLI::Range(1, 100000));
  cumulants->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  int max_order = 3, max_degree = 3, terms = 40;
  std::string of = "moments";
  auto* recurrence = app.add_subcommand("recurrence", "Fit a P-recursive recurrence to the moments or cumulants");
  add_input(recurrence, in);
  recurrence->add_option("--max-order", max_order, "Largest order tried")->check(CLI::Range(1, 64));
  recurrence->add_option("--max-degree", max_degree, "Largest coefficient degree tried")->check(CLI::Range(0, 64));
  recurrence->add_option("--terms", terms, "Sequence terms generated")->check(CLI::Range(4, 100000));
  recurrence->add_option("--of", of, "moments or cumulants")->check(CLI::IsMember({"moments", "cumulants"}));
  recurrence->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  VerifyOptions vo;
  std::string variates = "normal";
  auto* verify_cmd = app.add_subcommand("verify", "Monte Carlo comparison against the symbolic density");
  verify_cmd->add_option("expr", in.expr, "Matrix expression")->required();
  verify_cmd->add_option("--dim", vo.dim, "Matrix dimension")->check(CLI::Range(1, 4000));
  verify_cmd->add_option("--trials", vo.trials, "Number of trials")->check(CLI::Range(1, 10000000));
  verify_cmd->add_option("--seed", vo.seed, "Random seed");
  verify_cmd->add_option("--threshold", vo.threshold, "Pass when L1 <= threshold");
  verify_cmd->add_option("--bins", vo.bins, "Histogram bins")->check(CLI::Range(1, 1000000));
  verify_cmd->add_option("--points", vo.points, "Density grid points")->check(CLI::Range(2, 10000000));
  verify_cmd->add_option("--variates", variates, "normal or sign")->check(CLI::IsMember({"normal", "sign"}));
  verify_cmd->add_option("--threads", vo.sampler.threads, "Worker threads, 0 for all cores");
  verify_cmd->add_option("--out", out_path, "Histogram CSV path");
  verify_cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kOk : kUserError;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  try {
    if (sub == "poly") {
      json j = poly_json(resolve(in), Kind::mz);
      if (!in.expr.empty()) j["expr"] = print_expr(*parse_expr(in.expr));
      out << j.dump() << "\n";
    } else if (sub == "encode") {
      const Kind k = parse_kind(kind);
      out << poly_json(from_mz(resolve(in), k), k).dump() << "\n";
    } else if (sub == "density") {
      const BiPoly L = resolve(in);
      DensityProfile p;
      if (zmin || zmax) {
        const auto range = default_range(support_endpoints(L));
        p = density_grid(L, zmin.value_or(range.first), zmax.value_or(range.second), points);
      } else {
        p = density_grid(L, points);
      }
      if (out_path.empty()) {
        out << density_csv(p);
      } else {
        write_file(out_path, density_csv(p));
        write_file(out_path + ".json", density_sidecar_json(p));
      }
      for (const auto& w : p.warnings) err << "warning: " << w << "\n";
    } else if (sub == "moments") {
      const auto m = moment_series(resolve(in), n).coeffs;
      if (format == "json")
        out << json{{"kind", "moments"}, {"terms", strings(m)}}.dump() << "\n";
      else
        out << join(m) << "\n";
    } else if (sub == "cumulants") {
      const auto k = cumulant_series(resolve(in), n - 1).coeffs;
      if (format == "json")
        out << json{{"kind", "cumulants"}, {"first_index", 1}, {"terms", strings(k)}}.dump() << "\n";
      else
        out << join(k) << "\n";
    } else if (sub == "recurrence") {
      const BiPoly L = resolve(in);
      const auto seq = of == "moments" ? moment_series(L, terms - 1).coeffs : cumulant_series(L, terms - 1).coeffs;
      const auto r = fit_recurrence(seq, max_order, max_degree);
      if (!r) {
        err << "rmcalc recurrence: no recurrence within order " << max_order << " and degree " << max_degree
            << " fits " << terms << " terms\n";
        return kNumericFailure;
      }
      if (format == "json") {
        json c = json::array();
        for (const auto& p : r->coeffs) c.push_back(to_string(p, "n"));
        out << json{{"of", of}, {"order", r->order}, {"degree", r->degree}, {"coeffs", c}, {"text", to_string(*r)}}
                   .dump()
            << "\n";
      } else {
        out << to_string(*r) << "\n";
      }
    } else if (sub == "verify") {
      vo.sampler.variates = variates == "sign" ? Variates::Sign : Variates::Normal;
      const VerifyReport r = verify(parse_expr(in.expr), vo);
      if (!out_path.empty()) write_file(out_path, histogram_csv(r.histogram));
      if (format == "json") {
        out << json{{"expr", in.expr},     {"dim", vo.dim},         {"trials", vo.trials},
                    {"seed", vo.seed},     {"l1", r.distance.l1},   {"ks", r.distance.ks},
                    {"threshold", vo.threshold}, {"pass", r.pass},  {"seconds", r.seconds}}
                   .dump()
            << "\n";
      } else {
        char buf[256];
        std::snprintf(buf, sizeof buf, "l1=%.6f ks=%.6f threshold=%g trials=%zu dim=%zu seed=%llu %s\n",
                      r.distance.l1, r.distance.ks, vo.threshold, vo.trials, vo.dim,
                      static_cast<unsigned long long>(vo.seed), r.pass ? "PASS" : "FAIL");
        out << buf;
      }
      return r.pass ? kOk : kNumericFailure;
    }
  } catch (const InvalidArgument& e) {
    err << "rmcalc " << sub << ": " << e.what() << "\n";
    return kUserError;
  } catch (const ComputationError& e) {
    err << "rmcalc " << sub << ": " << e.what() << "\n";
    return kNumericFailure;
  } catch (const std::exception& e) {
    err << "rmcalc " << sub << ": " << e.what() << "\n";
    return kNumericFailure;
  }
  return kOk;
}

}  // namespace rmcalc::cli
