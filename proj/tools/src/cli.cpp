#include "sylvester_io/cli.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "sylvester/errors.hpp"
#include "sylvester_io/json_io.hpp"

namespace sylvester::cli {

namespace {

using io::ordered_json;

/// Raised by a subcommand whose checks ran but did not pass.
class CheckFailed : public std::runtime_error {
 public:
  explicit CheckFailed(ordered_json document) : std::runtime_error("check failed"), document_(std::move(document)) {}
  const ordered_json& document() const { return document_; }

 private:
  ordered_json document_;
};

std::string to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::json:
      return "json";
    case OutputFormat::csv:
      return "csv";
    case OutputFormat::pretty:
      return "pretty";
  }
  return "json";
}

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(Rational::parse(item));
    } catch (const PreconditionError& e) {
      throw io::FormatError(e.what());
    }
  }
  return out;
}

// ---- rendering -------------------------------------------------------------

void flatten(const ordered_json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string scalar_text(const ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void render_csv(const ordered_json& doc, std::ostream& out) {
  std::vector<std::pair<std::string, std::string>> cfg;
  flatten(doc.at("config"), "config", cfg);
  for (const auto& [k, v] : cfg) out << "# " << k << "=" << v << "\n";
  const ordered_json& result = doc.at("result");
  if (result.is_object() && result.contains("rows") && result["rows"].is_array() && !result["rows"].empty()) {
    std::vector<std::string> header;
    for (const auto& row : result["rows"]) {
      for (const auto& [k, v] : row.items()) {
        if (std::find(header.begin(), header.end(), k) == header.end()) header.push_back(k);
      }
    }
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << csv_cell(header[i]);
    out << "\n";
    for (const auto& row : result["rows"]) {
      for (std::size_t i = 0; i < header.size(); ++i) {
        out << (i ? "," : "");
        if (row.contains(header[i])) out << csv_cell(scalar_text(row[header[i]]));
      }
      out << "\n";
    }
    return;
  }
  std::vector<std::pair<std::string, std::string>> flat;
  flatten(result, "", flat);
  out << "key,value\n";
  for (const auto& [k, v] : flat) out << csv_cell(k) << "," << csv_cell(v) << "\n";
}

void render_pretty(const ordered_json& j, int indent, std::ostream& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  for (const auto& [k, v] : j.items()) {
    if (v.is_object() || (v.is_array() && !v.empty() && (v[0].is_object() || v[0].is_array()))) {
      out << pad << k << ":\n";
      if (v.is_object()) {
        render_pretty(v, indent + 1, out);
      } else {
        for (std::size_t i = 0; i < v.size(); ++i) {
          out << pad << "  - [" << i << "]\n";
          if (v[i].is_object()) {
            render_pretty(v[i], indent + 2, out);
          } else {
            out << pad << "    " << v[i].dump() << "\n";
          }
        }
      }
    } else {
      out << pad << k << ": " << scalar_text(v) << "\n";
    }
  }
}

void render(const ordered_json& doc, OutputFormat f, std::ostream& out) {
  switch (f) {
    case OutputFormat::json:
      out << doc.dump(2) << "\n";
      break;
    case OutputFormat::csv:
      render_csv(doc, out);
      break;
    case OutputFormat::pretty:
      render_pretty(doc, 0, out);
      break;
  }
}

// ---- subcommands -----------------------------------------------------------

struct Options {
  RunConfig cfg;
  std::optional<unsigned> workers;
  std::string comb;
  std::string family;
  int m = 2;
  std::string x_list;
  std::string l_list;
  std::string method = "rec";
  bool rb = false;
  unsigned precision_bits = 128;
  std::string op;
  std::string case_name;
  int grid = 0;
  std::string mutate;
  int falsify = 0;
  bool check = false;
  bool lenient = false;
};

ordered_json config_echo(const Options& o) {
  ordered_json body = nullptr;
  if (!o.cfg.body.empty()) body = io::to_json(io::body_from_json(io::load_document(o.cfg.body)));
  return ordered_json{{"command", o.cfg.command}, {"seed", o.cfg.seed},  {"samples", o.cfg.samples},
                      {"workers", o.cfg.workers}, {"output", to_string(o.cfg.output)}, {"n", o.cfg.n},
                      {"body", body}};
}

ConvexBody require_body(const Options& o) {
  if (o.cfg.body.empty()) throw CLI::RequiredError("--body");
  return io::body_from_json(io::load_document(o.cfg.body));
}

ordered_json cmd_comb(const Options& o, ordered_json& options) {
  if (o.comb.empty()) throw CLI::RequiredError("--comb");
  const Comb c = io::comb_from_json(io::load_document(o.comb));
  options["comb"] = io::to_json(c);
  const Rational value = comb_probability(c);
  const Rational k = k_rec(c.x, c.l);
  return ordered_json{{"value", value.to_string()}, {"value_float", value.to_double()}, {"K", k.to_string()}};
}

ordered_json cmd_kpoly(const Options& o, ordered_json& options) {
  if (o.m < 0) throw PreconditionError("kpoly: m must be >= 0");
  std::vector<Rational> x;
  if (o.x_list.empty()) {
    for (int j = 1; j <= o.m; ++j) x.emplace_back(j, o.m + 1);
  } else {
    x = parse_list(o.x_list);
    if (static_cast<int>(x.size()) != o.m) throw io::FormatError("--x must list m abscissas");
  }
  options["m"] = o.m;
  options["x"] = ordered_json::array();
  for (const auto& v : x) options["x"].push_back(v.to_string());
  options["method"] = o.method;
  Comb{x, std::vector<Rational>(x.size(), Rational(0))}.validate();

  std::vector<Rational> full{Rational(0)};
  full.insert(full.end(), x.begin(), x.end());
  full.emplace_back(1);

  auto run = [&]<typename T>(const std::string& method, const std::vector<T>& l) -> T {
    std::vector<T> gamma{T(Rational(0))};
    gamma.insert(gamma.end(), l.begin(), l.end());
    gamma.push_back(T(Rational(0)));
    if (method == "rec") return k_rec<T>(std::span<const Rational>(x), std::span<const T>(l));
    if (method == "star") return k_star<T>(std::span<const Rational>(full), std::span<const T>(gamma));
    if (method == "perm") return k_perm<T>(std::span<const Rational>(full), std::span<const T>(gamma));
    throw io::FormatError("--method must be rec, star, perm or all");
  };
  const std::vector<std::string> methods =
      o.method == "all" ? std::vector<std::string>{"rec", "star", "perm"} : std::vector<std::string>{o.method};

  ordered_json result;
  if (o.l_list.empty()) {
    std::vector<MultiPoly> l;
    for (int j = 1; j <= o.m; ++j) l.push_back(MultiPoly::variable("l" + std::to_string(j)));
    std::vector<MultiPoly> values;
    for (const auto& m : methods) values.push_back(run(m, l));
    result["K"] = io::to_json(values.front());
    if (values.size() > 1) {
      result["agree"] = std::all_of(values.begin(), values.end(), [&](const MultiPoly& p) { return p == values[0]; });
    }
  } else {
    const auto l = parse_list(o.l_list);
    if (static_cast<int>(l.size()) != o.m) throw io::FormatError("--l must list m lengths");
    options["l"] = ordered_json::array();
    for (const auto& v : l) options["l"].push_back(v.to_string());
    std::vector<Rational> values;
    for (const auto& m : methods) values.push_back(run(m, l));
    result["K"] = values.front().to_string();
    result["K_float"] = values.front().to_double();
    if (values.size() > 1) {
      result["agree"] = std::all_of(values.begin(), values.end(), [&](const Rational& p) { return p == values[0]; });
    }
  }
  return result;
}

ordered_json cmd_cond(const Options& o, ordered_json& options) {
  if (o.family.empty()) throw CLI::RequiredError("--family");
  const NormalizedFamily f = io::family_from_json(io::load_document(o.family));
  options["lenient"] = o.lenient;
  const Rational value = o.lenient ? family_probability_lenient(f, kLenientTolerance) : family_probability(f);
  return ordered_json{{"family", io::to_json(f)},
                      {"in_compa", in_compa(f.lambda, f.beta, f.xbar)},
                      {"value", value.to_string()},
                      {"value_float", value.to_double()}};
}

ordered_json cmd_estimate(const Options& o, ordered_json& options) {
  const ConvexBody body = require_body(o);
  options["rb"] = o.rb;
  if (o.rb) options["precision_bits"] = o.precision_bits;
  const EstimateResult r = o.rb ? estimate_Q_rb(body, o.cfg.n, o.cfg.samples, o.cfg.seed, o.cfg.workers, o.precision_bits)
                                : estimate_Q(body, o.cfg.n, o.cfg.samples, o.cfg.seed, o.cfg.workers);
  return io::to_json(r);
}

ordered_json area_json(const Area& a) {
  return ordered_json{{"coefficient", a.coefficient.to_string()}, {"pi_power", a.pi_power}, {"float", a.to_double()}};
}

ordered_json cmd_transform(const Options& o, ordered_json& options) {
  const ConvexBody body = require_body(o);
  options["op"] = o.op;
  ConvexBody out;
  if (o.op == "sym") {
    out = steiner_symmetrize(body);
  } else if (o.op == "sha") {
    out = shake(body);
  } else {
    throw io::FormatError("--op must be sym or sha");
  }
  ordered_json r{{"body", io::to_json(out)}, {"area_in", area_json(area(body))}, {"area_out", area_json(area(out))}};
  if (!std::holds_alternative<Polygon>(body) && std::holds_alternative<Polygon>(out)) {
    r["approximation_sides"] = kCurvedApproximationSides;
  }
  return r;
}

ordered_json cmd_closed_forms(const Options&, ordered_json&) {
  ordered_json rows = ordered_json::array();
  for (Shape s : {Shape::square, Shape::triangle}) {
    for (int n = 3; n <= 10; ++n) {
      const Rational v = closed_form(s, n);
      rows.push_back(ordered_json{{"body", to_string(s)},
                                  {"n", n},
                                  {"exact", v.to_string()},
                                  {"float", v.to_double()},
                                  {"reading", ""},
                                  {"adopted", true}});
    }
  }
  for (int n : {4, 5}) {
    for (DiskReading r : {DiskReading::pi_squared_linear, DiskReading::squared_denominator}) {
      const PiConstant c = disk_constant(n, r);
      rows.push_back(ordered_json{{"body", "disk"},
                                  {"n", n},
                                  {"exact", c.to_string()},
                                  {"float", c.value()},
                                  {"reading", to_string(r)},
                                  {"adopted", r == DiskReading::pi_squared_linear}});
    }
  }
  return ordered_json{{"rows", rows}};
}

std::optional<Mutation> parse_mutation(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw io::FormatError("--mutate expects target:delta");
  try {
    return Mutation{text.substr(0, colon), Rational::parse(text.substr(colon + 1))};
  } catch (const PreconditionError& e) {
    throw io::FormatError(e.what());
  }
}

ordered_json falsification_json(DifferenceKind kind, int trials, std::uint64_t seed) {
  const FalsificationResult f = search_outside_compa(kind, trials, seed);
  ordered_json j{{"kind", kind == DifferenceKind::minoration ? "minoration" : "majoration"},
                 {"trials", f.trials},
                 {"found_negative", f.found_negative}};
  if (f.found_negative) {
    auto list = [](const std::vector<Rational>& v) {
      ordered_json a = ordered_json::array();
      for (const auto& r : v) a.push_back(r.to_string());
      return a;
    };
    j["x"] = list(f.x);
    j["lambda"] = list(f.lambda);
    j["beta"] = list(f.beta);
    j["value"] = f.value.to_string();
  }
  return j;
}

ordered_json cmd_verify(const Options& o, ordered_json& options) {
  const auto mutation = parse_mutation(o.mutate);
  options["case"] = o.case_name;
  if (mutation) options["mutate"] = o.mutate;
  ordered_json reports = ordered_json::array();
  bool pass = true;
  if (o.case_name == "n4") {
    const int grid = o.grid > 0 ? o.grid : 6;
    options["grid"] = grid;
    const CertificateReport r = verify_n4(grid, mutation);
    pass = r.pass();
    reports.push_back(io::to_json(r));
  } else if (o.case_name == "n5") {
    const int grid = o.grid > 0 ? o.grid : 4;
    options["grid"] = grid;
    const auto points = nested_simplex_grid(grid, 3);
    const CertificateReport cone = verify_n5_cone(points, mutation);
    const CertificateReport quad = verify_n5_quadratic(points, mutation);
    pass = cone.pass() && quad.pass();
    reports.push_back(io::to_json(cone));
    reports.push_back(io::to_json(quad));
  } else {
    throw io::FormatError("--case must be n4 or n5");
  }
  ordered_json result{{"reports", reports}, {"summary", pass ? "pass" : "fail"}};
  if (o.falsify > 0) {
    options["falsify"] = o.falsify;
    result["outside_compa"] = ordered_json::array({falsification_json(DifferenceKind::minoration, o.falsify, o.cfg.seed),
                                                   falsification_json(DifferenceKind::majoration, o.falsify, o.cfg.seed)});
  }
  if (!pass) throw CheckFailed(result);
  return result;
}

ordered_json cmd_theorem1(const Options& o, ordered_json& options) {
  options["check"] = o.check;
  options["n"] = 5;
  struct Row {
    std::string body;
    ConvexBody shape;
    std::string exact;
    double reference;
  };
  const PiConstant disk = disk_constant(5);
  const PiConstant disk_alt = disk_constant(5, DiskReading::squared_denominator);
  const std::vector<Row> rows{
      {"triangle", make_triangle({0, 0}, {1, 0}, {0, 1}), closed_form(Shape::triangle, 5).to_string(),
       closed_form(Shape::triangle, 5).to_double()},
      {"square", unit_square(), closed_form(Shape::square, 5).to_string(), closed_form(Shape::square, 5).to_double()},
      {"disk", Disk{{0, 0}, 1}, disk.to_string(), disk.value()},
  };
  ordered_json table = ordered_json::array();
  bool pass = true;
  std::vector<double> estimates;
  for (const auto& row : rows) {
    const EstimateResult r = estimate_Q(row.shape, 5, o.cfg.samples, o.cfg.seed, o.cfg.workers);
    const double z = (r.estimate - row.reference) / r.std_error;
    const bool ok = std::abs(z) <= 3.0;
    pass = pass && ok;
    estimates.push_back(r.estimate);
    table.push_back(ordered_json{{"body", row.body},
                                 {"exact", row.exact},
                                 {"reference", row.reference},
                                 {"estimate", r.estimate},
                                 {"std_error", r.std_error},
                                 {"z", z},
                                 {"within_3_sigma", ok}});
  }
  const double disk_se = std::sqrt(estimates[2] * (1 - estimates[2]) / static_cast<double>(o.cfg.samples));
  const double alt_z = (estimates[2] - disk_alt.value()) / disk_se;
  const bool alt_rejected = std::abs(alt_z) > 10.0;
  const bool ordered = estimates[0] < estimates[1] && estimates[1] < estimates[2];
  pass = pass && alt_rejected && ordered;
  ordered_json result{{"rows", table},
                      {"alternative_disk_reading",
                       ordered_json{{"exact", disk_alt.to_string()}, {"reference", disk_alt.value()}, {"z", alt_z},
                                    {"rejected_beyond_10_sigma", alt_rejected}}},
                      {"ordering_triangle_square_disk", ordered},
                      {"summary", pass ? "pass" : "fail"}};
  if (o.check && !pass) throw CheckFailed(result);
  return result;
}

}  // namespace

int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  Options o;
  std::string output = "json";
  CLI::App app{"Exact and Monte Carlo tools for convex-position probabilities", "sylvester"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", o.cfg.seed, "PRNG seed");
  app.add_option("--samples", o.cfg.samples, "Monte Carlo sample count")->check(CLI::PositiveNumber);
  app.add_option("--workers", o.workers, "Worker threads (default: SYLVESTER_WORKERS or 1)");
  app.add_option("--n", o.cfg.n, "Number of points")->check(CLI::Range(3, 64));
  app.add_option("--body", o.cfg.body, "Body as inline JSON or a file path");
  app.add_option("--output", output, "json, csv or pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));

  using Handler = std::function<ordered_json(const Options&, ordered_json&)>;
  std::vector<std::pair<CLI::App*, Handler>> commands;

  auto* comb = app.add_subcommand("comb", "Exact comb probability");
  comb->add_option("--comb", o.comb, "Comb JSON {\"x\": [...], \"l\": [...]}");
  commands.emplace_back(comb, cmd_comb);

  auto* kpoly = app.add_subcommand("kpoly", "K as a polynomial in the tooth lengths, or at given lengths");
  kpoly->add_option("--m", o.m, "Number of teeth");
  kpoly->add_option("--x", o.x_list, "Comma-separated abscissas (default j/(m+1))");
  kpoly->add_option("--l", o.l_list, "Comma-separated lengths (default symbolic l1..lm)");
  kpoly->add_option("--method", o.method, "rec, star, perm or all");
  commands.emplace_back(kpoly, cmd_kpoly);

  auto* cond = app.add_subcommand("cond", "Exact convex-position probability of a segment family");
  cond->add_option("--family", o.family, "Segments or normalized family JSON");
  cond->add_flag("--lenient", o.lenient, "Clamp tiny containment violations");
  commands.emplace_back(cond, cmd_cond);

  auto* estimate = app.add_subcommand("estimate", "Monte Carlo estimate of Q^n for a body");
  estimate->add_flag("--rb", o.rb, "Use the conditional (Rao-Blackwell) estimator");
  estimate->add_option("--precision-bits", o.precision_bits, "Square-root precision for curved slices");
  commands.emplace_back(estimate, cmd_estimate);

  auto* transform = app.add_subcommand("transform", "Steiner symmetrization or shaking");
  transform->add_option("--op", o.op, "sym or sha")->required();
  commands.emplace_back(transform, cmd_transform);

  auto* closed = app.add_subcommand("closed-forms", "Table of known constants");
  commands.emplace_back(closed, cmd_closed_forms);

  auto* verify = app.add_subcommand("verify", "Certificate verification");
  verify->add_option("--case", o.case_name, "n4 or n5")->required();
  verify->add_option("--grid", o.grid, "Points per nesting level");
  verify->add_option("--mutate", o.mutate, "Perturb a named object, target:delta");
  verify->add_option("--falsify", o.falsify, "Random trials searching outside Compa");
  commands.emplace_back(verify, cmd_verify);

  auto* theorem1 = app.add_subcommand("theorem1", "Monte Carlo reproduction of the n = 5 constants");
  theorem1->add_flag("--check", o.check, "Exit 3 unless every row matches");
  commands.emplace_back(theorem1, cmd_theorem1);

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  if (!args.empty()) args.pop_back();
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  o.cfg.output = output == "csv" ? OutputFormat::csv : (output == "pretty" ? OutputFormat::pretty : OutputFormat::json);

  const Handler* handler = nullptr;
  for (const auto& [sub, h] : commands) {
    if (sub->parsed()) {
      o.cfg.command = sub->get_name();
      handler = &h;
    }
  }

  ordered_json doc;
  ordered_json options = ordered_json::object();
  try {
    o.cfg.workers = resolve_workers(o.workers);
  } catch (const PreconditionError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    doc["config"] = config_echo(o);
    ordered_json result = (*handler)(o, options);
    doc["config"]["options"] = options;
    doc["result"] = std::move(result);
    render(doc, o.cfg.output, out);
    return kExitOk;
  } catch (const CheckFailed& f) {
    doc["config"]["options"] = options;
    doc["result"] = f.document();
    render(doc, o.cfg.output, out);
    err << o.cfg.command << ": check failed\n";
    return kExitCertificate;
  } catch (const CLI::RequiredError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const io::FormatError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << "\n";
    return kExitPrecondition;
  }
}

}  // namespace sylvester::cli
