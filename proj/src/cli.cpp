#include "hessrank/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

#include "hessrank/apex.hpp"
#include "hessrank/classify.hpp"
#include "hessrank/diffcalc.hpp"
#include "hessrank/expression.hpp"
#include "hessrank/linalg.hpp"

namespace hessrank::cli {

using Json = nlohmann::ordered_json;

namespace {

/// Failure reported with exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* command_name(Command c) {
  switch (c) {
    case Command::Analyze: return "analyze";
    case Command::Apex: return "apex";
    case Command::Decompose: return "decompose";
    case Command::Reduce: return "reduce";
    case Command::Smith: return "smith";
  }
  return "?";
}

std::vector<std::size_t> range(std::size_t from, std::size_t to) {
  std::vector<std::size_t> out;
  for (std::size_t k = from; k < to; ++k) out.push_back(k);
  return out;
}

// Serialization: every field element is a canonical expression string.

Json str(const Polynomial& p, const VarNames& names) { return to_string(p, names); }
Json str(const RationalFunction& f, const VarNames& names) { return to_string(f, names); }

Json poly_vector(const PolyVector& v, const VarNames& names) {
  Json out = Json::array();
  for (const auto& e : v) out.push_back(str(e, names));
  return out;
}

Json rational_vector(const RationalVector& v) {
  Json out = Json::array();
  for (const auto& e : v) out.push_back(to_string(e));
  return out;
}

Json rational_matrix(const RationalMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(rational_vector(m.row(i)));
  return out;
}

Json sym_matrix(const SymMatrix& m, const VarNames& names) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(poly_vector(m.row(i), names));
  return out;
}

Json rank_json(const RankProfile& p) {
  return Json{{"r", p.r_hessian}, {"trdeg_K", p.trdeg_over_K}, {"trdeg_L", p.trdeg_over_L}};
}

Json apex_json(const ApexReport& a) {
  Json basis = Json::array();
  for (const auto& v : a.projective_basis) basis.push_back(rational_vector(v));
  Json image = nullptr;
  if (a.image_apex_set) {
    Json dirs = Json::array();
    for (const auto& v : a.image_apex_set->directions) dirs.push_back(rational_vector(v));
    image = Json{{"point", rational_vector(a.image_apex_set->point)}, {"directions", dirs}};
  }
  return Json{{"s", a.s()}, {"projective_basis", basis}, {"image_apex", image}};
}

Json decomposition_json(const Decomposition& d) {
  const VarNames names{d.arity};
  Json ring = Json::array();
  for (std::size_t v : d.coefficient_ring) ring.push_back(names.name(v));
  Json out;
  out["form"] = form_name(d.form);
  out["g"] = str(d.g, names);
  out["p"] = d.p ? poly_vector(*d.p, names) : Json(nullptr);
  out["q"] = d.q ? poly_vector(*d.q, names) : Json(nullptr);
  out["a"] = poly_vector(d.a_or_b, names);
  out["lambda"] = d.lambda ? str(*d.lambda, names) : Json(nullptr);
  out["gamma"] = d.gamma ? str(*d.gamma, names) : Json(nullptr);
  out["main_count"] = d.main_count;
  out["coefficient_ring"] = ring;
  out["over_L_fallback"] = d.over_L_fallback;
  out["verified"] = d.verified;
  return out;
}

Json request_json(const AnalysisRequest& req, const std::string& input, std::size_t line,
                  std::size_t vars, std::size_t main) {
  Json out;
  out["command"] = command_name(req.command);
  out["input"] = input;
  out["line"] = line;
  out["vars"] = vars;
  out["main_vars"] = main;
  out["format"] = req.format == Format::Json ? "json" : "text";
  out["seed"] = req.seed;
  out["relation_degree"] = req.relation_degree;
  if (req.command == Command::Reduce) out["target"] = req.target ? Json(*req.target) : Json(nullptr);
  return out;
}

Json empty_report(Json request, const std::optional<std::string>& polynomial = std::nullopt) {
  Json out;
  out["request"] = std::move(request);
  if (polynomial) out["polynomial"] = *polynomial;
  out["rank"] = nullptr;
  out["apex"] = nullptr;
  if (polynomial) out["coordinates"] = nullptr;
  out["decomposition"] = nullptr;
  out["normal_form"] = nullptr;
  out["out_of_reach"] = nullptr;
  out["verification"] = Json::object();
  out["timing_ms"] = nullptr;
  return out;
}

/// Decomposition of h with the requested split; m == n runs the full
/// coordinate-changing pipeline.
void add_decomposition(Json& report, const Polynomial& h, std::size_t m, unsigned degree) {
  const std::size_t n = h.arity();
  std::optional<Decomposition> d;
  Polynomial target = h;
  if (m == n) {
    const HessianClassification c = classify_hessian(h);
    const VarNames names{n};
    report["coordinates"] = Json{{"transform", rational_matrix(c.transform)},
                                 {"transformed", str(c.transformed, names)},
                                 {"main_count", c.main_count}};
    if (!c.out_of_reach.empty()) report["out_of_reach"] = c.out_of_reach;
    d = c.decomposition;
    target = c.transformed;
  } else {
    try {
      d = classify_gradrel(h, m);
    } catch (const std::invalid_argument& gradrel_error) {
      try {
        d = classify_small_rank(h, m, degree);
      } catch (const std::invalid_argument&) {
        report["out_of_reach"] = gradrel_error.what();
      }
    }
  }
  if (!d) return;
  report["decomposition"] = decomposition_json(*d);
  Json& v = report["verification"];
  v["reconstruction"] = d->verified && expand(*d) == RationalFunction(target);
  v["degree_bounds"] = degree_bounds_hold(*d);
  const bool has_relations = d->p && (d->form == Form::SingleForm || d->form == Form::SingleFormShifted ||
                                      d->form == Form::DoubleForm);
  if (has_relations) v["relations"] = same_image_relations(*d, target, degree);
}

Json analyze_polynomial(const AnalysisRequest& req, const std::string& input, const PolynomialInput& in) {
  const Polynomial& h = in.h;
  const std::size_t n = h.arity();
  const std::size_t m = in.main_count;
  const VarNames names{n};
  Json report = empty_report(request_json(req, input, in.line, n, m), to_string(h, names));

  if (req.command == Command::Reduce) {
    const SymMatrix hess = hessian(h, n);
    const std::size_t r = rank(hess);
    std::size_t target = req.target.value_or(0);
    if (!req.target) {
      target = 1;
      while (target < n && rank(hess.select(range(0, target), range(0, n))) != r) ++target;
    }
    report["rank"] = rank_json(rank_profile(h, n));
    DbReduction red;
    try {
      red = db_reduce(h, target, req.seed);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const VarNames reduced{target};
    report["normal_form"] = Json{{"target", target},
                                 {"h", str(red.h, reduced)},
                                 {"C", rational_matrix(red.C)},
                                 {"tries", red.tries},
                                 {"rounds", red.rounds}};
    std::vector<Polynomial> assignment;
    for (std::size_t i = 0; i < n; ++i) {
      Polynomial xi(target);
      for (std::size_t j = 0; j < target; ++j) {
        if (red.C(i, j) != 0) xi += red.C(i, j) * Polynomial::variable(target, j);
      }
      assignment.push_back(std::move(xi));
    }
    Json& v = report["verification"];
    v["composition"] = n == 0 || compose(h, assignment) == red.h;
    v["rank_preserved"] = hessian_rank(red.h, target) == r;
    return report;
  }

  report["rank"] = rank_json(rank_profile(h, m));
  report["apex"] = apex_json(apex_report(gradient(h, m)));
  if (req.command == Command::Analyze || req.command == Command::Decompose) {
    add_decomposition(report, h, m, req.relation_degree);
  }
  return report;
}

Json smith_report(const AnalysisRequest& req, const std::string& input) {
  const MatrixInput mi = parse_matrix_file(read_file(input));
  if (mi.domain_name != req.domain) {
    throw UsageError("matrix domain " + mi.domain_name + " differs from --domain " + req.domain);
  }
  const SymMatrix& p = mi.matrix;
  Json request;
  request["command"] = "smith";
  request["input"] = input;
  request["domain"] = req.domain;
  request["rank"] = req.rank ? Json(*req.rank) : Json(nullptr);
  request["variant"] = req.variant;
  request["format"] = req.format == Format::Json ? "json" : "text";
  Json report = empty_report(request);

  const VarNames names{0};
  const std::size_t r = req.rank.value_or(rank(p));
  auto in_domain = [&](const SymMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!mi.domain.contains(m(i, j))) return false;
    return true;
  };
  Json nf;
  nf["variant"] = req.variant;
  nf["domain"] = mi.domain_name;
  nf["rows"] = p.rows();
  nf["cols"] = p.cols();
  Json& v = report["verification"];
  try {
    if (req.variant == "debondt") {
      const DeBondtForm f = de_bondt(p, mi.domain);
      nf["r"] = f.r;
      nf["Q"] = sym_matrix(f.Q, names);
      nf["D"] = sym_matrix(f.D, names);
      nf["E"] = sym_matrix(f.E, names);
      nf["left_inverse"] = sym_matrix(f.left_inverse, names);
      nf["right_inverse"] = sym_matrix(f.right_inverse, names);
      v["factorization"] = f.Q * f.D * f.E == p;
      v["left_inverse"] = f.left_inverse * f.Q == SymMatrix::identity(f.Q.cols(), p.arity());
      v["right_inverse"] = f.E * f.right_inverse == SymMatrix::identity(f.E.rows(), p.arity());
      v["square_full_rank"] = f.D.rows() == f.D.cols() && rank(f.D) == f.D.rows();
      v["domain"] = in_domain(f.Q) && in_domain(f.D) && in_domain(f.E) &&
                    in_domain(f.left_inverse) && in_domain(f.right_inverse);
    } else {
      WeakSmith ws;
      if (req.variant == "plain") {
        ws = weak_smith(p, r, mi.domain);
      } else if (req.variant == "upper") {
        ws = weak_smith_upper(p, r, mi.domain);
      } else if (req.variant == "leading") {
        ws = weak_smith_leading(p, r, mi.domain);
      } else {
        throw UsageError("unknown variant " + req.variant);
      }
      nf["r"] = ws.r;
      nf["Q"] = sym_matrix(ws.Q, names);
      nf["A"] = sym_matrix(ws.A, names);
      nf["C"] = sym_matrix(ws.C, names);
      v["factorization"] = ws.Q * ws.A == p;
      v["left_inverse"] = ws.C * ws.Q == SymMatrix::identity(ws.r, p.arity());
      v["domain"] = in_domain(ws.Q) && in_domain(ws.A) && in_domain(ws.C);
      if (req.variant == "upper") {
        bool upper = true;
        for (std::size_t i = 0; i < ws.A.rows(); ++i)
          for (std::size_t j = 0; j < std::min(i, ws.A.cols()); ++j) upper = upper && ws.A(i, j).is_zero();
        v["upper_triangular"] = upper;
      }
      if (req.variant == "leading") v["leading_rank"] = rank(leading_coefficient_matrix(ws.Q, mi.domain)) == ws.r;
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  }
  report["normal_form"] = nf;
  return report;
}

bool all_verified(const Json& report) {
  for (const auto& [key, value] : report["verification"].items()) {
    if (!value.get<bool>()) return false;
  }
  return true;
}

void render_text(const Json& value, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar = [](const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
      std::string s = "(";
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) s += ", ";
        s += v[k].is_string() ? v[k].get<std::string>() : v[k].dump();
      }
      return s + ")";
    }
    return v.dump();
  };
  for (const auto& [key, v] : value.items()) {
    if (v.is_object()) {
      out << pad << key << ":\n";
      render_text(v, out, indent + 2);
    } else if (v.is_array() && !v.empty() && v[0].is_array()) {
      out << pad << key << ":\n";
      for (const auto& row : v) out << pad << "  " << scalar(row) << "\n";
    } else {
      out << pad << key << ": " << scalar(v) << "\n";
    }
  }
}

std::vector<Json> process_input(const AnalysisRequest& req, const std::string& input) {
  std::vector<Json> reports;
  if (req.command == Command::Smith) {
    const auto start = std::chrono::steady_clock::now();
    reports.push_back(smith_report(req, input));
    if (req.timing) {
      reports.back()["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                        std::chrono::steady_clock::now() - start)
                                        .count();
    }
    return reports;
  }
  const auto polys = parse_polynomial_file(read_file(input), req.vars, req.main_vars);
  if (polys.empty()) throw UsageError(input + ": no polynomial found");
  for (const auto& p : polys) {
    const auto start = std::chrono::steady_clock::now();
    reports.push_back(analyze_polynomial(req, input, p));
    if (req.timing) {
      reports.back()["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                        std::chrono::steady_clock::now() - start)
                                        .count();
    }
  }
  return reports;
}

}  // namespace

std::vector<PolynomialInput> parse_polynomial_file(const std::string& text,
                                                   std::optional<std::size_t> vars,
                                                   std::optional<std::size_t> main_vars) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  bool first = true;
  std::optional<std::size_t> dir_vars, dir_main;
  std::vector<std::pair<std::size_t, std::string>> lines;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (first && line.rfind("vars", 0) == 0) {
      std::istringstream d(line);
      std::string kv, km;
      std::size_t n = 0, m = 0;
      if (!(d >> kv >> n >> km >> m) || km != "main" || !(d >> std::ws).eof()) {
        throw ParseError("malformed directive, expected \"vars N main M\"", line_no, 1);
      }
      dir_vars = n;
      dir_main = m;
      first = false;
      continue;
    }
    first = false;
    lines.emplace_back(line_no, line);
  }

  std::optional<std::size_t> n = vars ? vars : dir_vars;
  if (!n) {
    std::size_t highest = 0;
    for (const auto& [no, l] : lines) {
      ParseOptions opt;
      opt.line = no;
      highest = std::max(highest, parse_polynomial(l, opt).arity());
    }
    n = highest;
  }
  const std::size_t m = main_vars ? *main_vars : dir_main.value_or(*n);
  if (m > *n) throw UsageError("main variable count exceeds the number of variables");

  std::vector<PolynomialInput> out;
  for (const auto& [no, l] : lines) {
    ParseOptions opt;
    opt.x_count = *n;
    opt.arity = *n;
    opt.line = no;
    out.push_back({parse_polynomial(l, opt), m, no});
  }
  return out;
}

MatrixInput parse_matrix_file(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  std::vector<std::pair<std::size_t, std::string>> lines;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    lines.emplace_back(line_no, line);
  }
  if (lines.empty()) throw ParseError("missing header \"m n domain\"", 1, 1);
  std::istringstream header(lines[0].second);
  std::size_t rows = 0, cols = 0;
  std::string domain;
  if (!(header >> rows >> cols >> domain) || !(header >> std::ws).eof()) {
    throw ParseError("malformed header, expected \"m n domain\"", lines[0].first, 1);
  }
  MatrixInput out;
  out.domain_name = domain;
  if (domain == "int") {
    out.domain = BezoutDomain::integers();
  } else if (domain == "polyt") {
    out.domain = BezoutDomain::polynomials_in(0);
  } else {
    throw ParseError("unknown domain " + domain, lines[0].first, 1);
  }
  if (lines.size() != rows + 1) {
    throw ParseError("expected " + std::to_string(rows) + " matrix rows", lines.back().first, 1);
  }
  out.matrix = SymMatrix(rows, cols, 1);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& [no, l] = lines[i + 1];
    std::istringstream row(l);
    std::string entry;
    std::size_t j = 0;
    while (row >> entry) {
      if (j == cols) throw ParseError("too many entries", no, 1);
      ParseOptions opt;
      opt.x_count = 0;
      opt.arity = 1;
      opt.line = no;
      out.matrix(i, j++) = parse_polynomial(entry, opt);
    }
    if (j != cols) throw ParseError("expected " + std::to_string(cols) + " entries", no, 1);
    for (std::size_t k = 0; k < cols; ++k) {
      if (!out.domain.contains(out.matrix(i, k))) throw ParseError("entry outside the domain", no, 1);
    }
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hessian rank classification of polynomials"};
  app.require_subcommand(1);
  AnalysisRequest req;
  std::string format = "json";

  auto common = [&](CLI::App* sub) {
    sub->add_option("files", req.inputs, "Input files")->required();
    sub->add_option("--vars", req.vars, "Number of variables");
    sub->add_option("--main-vars", req.main_vars, "Number of main variables x1..xM");
    sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--seed", req.seed, "Seed for randomized steps");
    sub->add_option("--relation-degree", req.relation_degree, "Degree bound for relation checks");
    sub->add_flag("--timing", req.timing, "Report elapsed milliseconds");
  };
  struct Entry {
    Command command;
    CLI::App* app;
  };
  std::vector<Entry> subs;
  for (Command c : {Command::Analyze, Command::Apex, Command::Decompose, Command::Reduce}) {
    CLI::App* sub = app.add_subcommand(command_name(c), "");
    common(sub);
    if (c == Command::Reduce) sub->add_option("--target", req.target, "Number of variables to keep");
    subs.push_back({c, sub});
  }
  CLI::App* smith = app.add_subcommand("smith", "Weak Smith and de Bondt forms of a matrix");
  smith->add_option("files", req.inputs, "Matrix files")->required();
  smith->add_option("--domain", req.domain, "int or polyt")->required()->check(CLI::IsMember({"int", "polyt"}));
  smith->add_option("--rank", req.rank, "Target rank");
  smith->add_option("--variant", req.variant, "plain, upper, leading or debondt")
      ->check(CLI::IsMember({"plain", "upper", "leading", "debondt"}));
  smith->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  smith->add_flag("--timing", req.timing, "Report elapsed milliseconds");
  subs.push_back({Command::Smith, smith});

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  for (const auto& s : subs) {
    if (s.app->parsed()) req.command = s.command;
  }
  req.format = format == "text" ? Format::Text : Format::Json;

  std::vector<Json> reports;
  try {
    std::vector<std::future<std::vector<Json>>> jobs;
    for (const auto& input : req.inputs) {
      jobs.push_back(std::async(req.inputs.size() > 1 ? std::launch::async : std::launch::deferred,
                                process_input, std::cref(req), input));
    }
    for (auto& job : jobs) {
      for (auto& r : job.get()) reports.push_back(std::move(r));
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    err << "verification failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return 2;
  }

  bool ok = true;
  for (const auto& r : reports) ok = ok && all_verified(r);
  if (req.format == Format::Json) {
    const Json doc = reports.size() == 1 ? reports.front() : Json(reports);
    out << doc.dump(2) << "\n";
  } else {
    for (std::size_t k = 0; k < reports.size(); ++k) {
      if (k) out << "\n";
      render_text(reports[k], out, 0);
    }
  }
  return ok ? 0 : 2;
}

}  // namespace hessrank::cli
