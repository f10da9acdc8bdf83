// Command-line front end: scheme verification, hypergroup analysis, Gamma(a,b)
// reports, constructions, and random walks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperscheme/hyperscheme.hpp"
#include "hyperscheme/io.hpp"

namespace hs = hyperscheme;
using hs::Json;

namespace {

struct Report {
  std::string command;
  bool pass = true;
  Json results = Json::object();
  Json tolerances = Json::object();
  std::optional<std::uint64_t> seed;
  Json metadata = Json::object();

  Json to_json() const {
    Json j;
    j["command"] = command;
    j["status"] = pass ? "pass" : "fail";
    j["results"] = results;
    j["tolerances"] = tolerances;
    j["seed"] = seed ? Json(*seed) : Json(nullptr);
    if (!metadata.empty()) j["metadata"] = metadata;
    return j;
  }
};

void flatten(const Json& j, const std::string& path, std::ostream& os) {
  const bool leaf_array = j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& v) { return v.is_primitive(); });
  if (j.is_object() && !j.empty()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), os);
  } else if (j.is_array() && !leaf_array) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", os);
  } else {
    os << path << " = " << j.dump() << '\n';
  }
}

void emit(const Report& r, bool json) {
  if (json) {
    std::cout << r.to_json().dump(2) << '\n';
    return;
  }
  std::cout << "command: " << r.command << '\n' << "status: " << (r.pass ? "pass" : "fail") << '\n';
  flatten(r.results, "results", std::cout);
  flatten(r.tolerances, "tolerances", std::cout);
  if (!r.metadata.empty()) flatten(r.metadata, "metadata", std::cout);
  if (r.seed) std::cout << "seed = " << *r.seed << '\n';
}

Json violation_json(const hs::AxiomViolation& v) {
  Json j;
  j["axiom"] = std::string(hs::axiom_name(v.axiom));
  j["axiom_number"] = hs::axiom_number(v.axiom);
  j["detail"] = v.detail;
  j["witness"] = v.witness;
  return j;
}

Json complex_json(const hs::Complex& z) { return Json::array({z.real(), z.imag()}); }

template <typename T>
Json vector_json(const std::vector<T>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(hs::scalar_to_json(x));
  return out;
}

template <typename T>
Json tensor_json(const hs::Tensor3<T>& t) {
  Json out = Json::array();
  for (std::size_t i = 0; i < t.size(); ++i) {
    Json a = Json::array();
    for (std::size_t j = 0; j < t.size(); ++j) {
      Json b = Json::array();
      for (std::size_t k = 0; k < t.size(); ++k) {
        if constexpr (std::is_same_v<T, std::int64_t>) {
          b.push_back(t(i, j, k));
        } else {
          b.push_back(hs::scalar_to_json(t(i, j, k)));
        }
      }
      a.push_back(std::move(b));
    }
    out.push_back(std::move(a));
  }
  return out;
}

Json scheme_json(const hs::AssociationScheme& s) {
  Json j;
  j["n_points"] = s.n_points();
  j["n_relations"] = s.n_relations();
  j["relabel"] = s.relabel;
  j["involution"] = s.involution;
  j["valency"] = s.valency;
  j["intersection_numbers"] = tensor_json(s.p);
  j["commutative"] = s.commutative();
  j["symmetric"] = s.symmetric();
  j["unimodular"] = s.unimodular();
  return j;
}

void add_standard_tolerances(Report& r) {
  r.tolerances["equality"] = hs::kEqualityTol;
  r.tolerances["eigen_floor"] = hs::kEigenFloor;
}

/// Hypergroup from either a hypergroup file or a scheme file.
hs::HypergroupFile load_hypergroup(const std::string& path) {
  const Json j = hs::read_json_file(path);
  if (j.contains("conv")) return hs::parse_hypergroup(j);
  const auto file = hs::parse_scheme(j);
  hs::HypergroupFile out;
  if (file.generalized) {
    const auto v = hs::verify_generalized(*file.generalized).value();
    out.numeric = hs::from_generalized(v);
  } else {
    const auto s = hs::verify_scheme(file.partition).value();
    out.exact = hs::from_scheme(s);
    out.numeric = hs::convert<double>(*out.exact);
  }
  return out;
}

// ---------------------------------------------------------------------------

int cmd_verify(Report& r, const std::string& path) {
  const auto file = hs::parse_scheme(hs::read_json_file(path));
  add_standard_tolerances(r);
  const auto outcome = hs::verify_scheme(file.partition);
  if (!outcome) {
    r.pass = false;
    r.results["violation"] = violation_json(outcome.violation());
    return 1;
  }
  const auto& s = outcome.value();
  r.results["scheme"] = scheme_json(s);
  if (s.unimodular()) {
    const auto tp = hs::translation_property_check(s);
    r.results["translation"] = {{"t1", tp.t1}, {"t2", tp.t2}};
  }
  if (file.generalized) {
    const auto gv = hs::verify_generalized(*file.generalized);
    if (!gv) {
      r.pass = false;
      r.results["generalized"]["violation"] = violation_json(gv.violation());
      return 1;
    }
    r.results["generalized"]["coefficients"] = tensor_json(gv.value().coefficients);
    r.results["generalized"]["rigid"] = hs::finite_rigidity_check(*file.generalized);
  }
  return 0;
}

int cmd_cosets(Report& r, const std::string& group_path, const std::string& subgroup, const std::string& out_path) {
  const auto table = hs::parse_group(hs::read_json_file(group_path));
  const auto cs = hs::from_double_cosets(table, hs::parse_index_list(subgroup));
  r.results["coset_of"] = cs.coset_of;
  r.results["double_coset_of"] = cs.double_coset_of;
  r.results["coset_representatives"] = cs.coset_rep;
  r.results["scheme"] = scheme_json(cs.scheme);
  r.results["hypergroup"] = hs::hypergroup_to_json(hs::from_scheme(cs.scheme));
  if (!out_path.empty()) hs::write_json_file(out_path, hs::partition_to_json(cs.scheme.partition));
  return 0;
}

int cmd_characters(Report& r, const std::string& path, std::uint64_t seed) {
  const auto file = load_hypergroup(path);
  add_standard_tolerances(r);
  r.seed = seed;
  r.metadata["haar_normalization"] = "omega(e)=1";
  const auto report = hs::verify_hypergroup(file.numeric);
  if (!report) {
    r.pass = false;
    r.results["violation"] = violation_json(report.violation());
    return 1;
  }
  const auto table = hs::characters(file.numeric, seed);
  Json chars = Json::array();
  for (const auto& a : table.chars) {
    Json row = Json::array();
    for (const auto& z : a) row.push_back(complex_json(z));
    chars.push_back(std::move(row));
  }
  r.results["characters"] = std::move(chars);
  r.results["haar"] = table.haar;
  r.results["plancherel"] = table.plancherel;
  r.results["multiplicativity_residual"] = table.multiplicativity_residual;
  r.results["parseval_residual"] = table.parseval_residual;
  r.results["attempts"] = table.attempts;
  r.results["semicharacters"] = hs::semicharacters(table);
  if (file.exact) {
    if (const auto ex = hs::exact_characters(*file.exact, table)) {
      Json rows = Json::array();
      for (const auto& a : ex->chars) rows.push_back(vector_json(a));
      r.results["exact"] = {{"characters", rows}, {"haar", vector_json(ex->haar)}, {"plancherel", vector_json(ex->plancherel)}};
    }
  }
  r.pass = table.multiplicativity_residual <= hs::kEqualityTol && table.parseval_residual <= hs::kEqualityTol;
  return r.pass ? 0 : 1;
}

int cmd_dual(Report& r, const std::string& path, std::size_t a, std::size_t b, std::uint64_t seed) {
  const auto file = load_hypergroup(path);
  add_standard_tolerances(r);
  r.seed = seed;
  r.metadata["haar_normalization"] = "omega(e)=1";
  const auto table = hs::characters(file.numeric, seed);
  const auto dual = hs::dual_convolution(table, a, b);
  Json coeffs = Json::array();
  for (const auto& z : dual.coeffs) coeffs.push_back(complex_json(z));
  r.results["coefficients"] = std::move(coeffs);
  r.results["mass_residual"] = dual.mass_residual;
  r.results["min_real"] = dual.min_real;
  r.results["scheme_derived"] = file.numeric.scheme_derived;
  if (file.exact)
    if (const auto ex = hs::exact_characters(*file.exact, table))
      r.results["exact_coefficients"] = vector_json(hs::dual_convolution(*ex, a, b));
  r.pass = dual.mass_residual <= hs::kEqualityTol && dual.max_imag <= hs::kEqualityTol &&
           (!file.numeric.scheme_derived || dual.min_real >= -hs::kEqualityTol);
  return r.pass ? 0 : 1;
}

int cmd_deform(Report& r, const std::string& path, const std::string& alpha_text, const std::string& out_path) {
  const auto file = load_hypergroup(path);
  add_standard_tolerances(r);
  std::vector<std::string> parts;
  {
    std::stringstream ss(alpha_text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
  }
  auto finish = [&](const auto& deformed) {
    const auto h = hs::haar(deformed);
    r.results["hypergroup"] = hs::hypergroup_to_json(deformed);
    r.results["haar"] = vector_json(h.left);
    const auto check = hs::verify_hypergroup(deformed);
    if (!check) {
      r.pass = false;
      r.results["violation"] = violation_json(check.violation());
    }
    if (!out_path.empty()) hs::write_json_file(out_path, hs::hypergroup_to_json(deformed));
  };
  bool exact_alpha = file.exact.has_value();
  for (const auto& p : parts) exact_alpha = exact_alpha && p.find_first_of("eE") == std::string::npos;
  if (exact_alpha) {
    std::vector<hs::Rational> alpha;
    for (const auto& p : parts) alpha.push_back(hs::parse_rational(p));
    finish(hs::semicharacter_deform(*file.exact, alpha));
  } else {
    std::vector<double> alpha;
    for (const auto& p : parts) alpha.push_back(std::stod(p));
    finish(hs::semicharacter_deform(file.numeric, alpha));
  }
  return r.pass ? 0 : 1;
}

struct DtOptions {
  int a = 3;
  int b = 2;
  std::size_t radius = 4;
  std::optional<double> x;
  std::string grid;
  double c = 0.0;
  std::string report = "psd";
  std::size_t max_degree = 12;
};

std::vector<double> parse_grid(const std::string& grid, double s0, double s1) {
  double lo = s0, hi = s1;
  std::size_t n = 9;
  if (!grid.empty()) {
    std::stringstream ss(grid);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c))
      throw hs::Error(hs::ErrorKind::kInvalidInput, "grid must be lo:hi:n");
    try {
      lo = std::stod(a);
      hi = std::stod(b);
      n = std::stoul(c);
    } catch (const std::exception&) {
      throw hs::Error(hs::ErrorKind::kInvalidInput, "grid must be lo:hi:n");
    }
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  return out;
}

int cmd_dtgraph(Report& r, const DtOptions& o) {
  const hs::DTParams p{o.a, o.b};
  p.validate();
  const auto [s0, s1] = hs::special_points(p);
  r.results["params"] = {{"a", p.a}, {"b", p.b}};
  r.results["s0"] = s0;
  r.results["s1"] = s1;
  if (o.report == "psd") {
    r.tolerances["eigen_floor"] = hs::kEigenFloor;
    const auto ball = hs::build_ball(p, o.radius);
    r.results["radius"] = o.radius;
    r.results["ball_size"] = ball.size();
    const std::vector<double> xs = o.x ? std::vector<double>{*o.x} : parse_grid(o.grid, s0, s1);
    Json rows = Json::array();
    for (double x : xs) {
      const double m = hs::gram_min_eig(x, ball);
      const bool ok = m >= hs::kEigenFloor;
      r.pass = r.pass && ok;
      rows.push_back({{"x", x}, {"min_eig", m}, {"psd", ok}});
    }
    r.results["gram"] = std::move(rows);
  } else if (o.report == "ortho") {
    r.tolerances["orthogonality"] = 1e-6;
    double worst = 0.0;
    const double mass = hs::ortho_measure_integrate([](double) { return 1.0; }, p);
    for (std::size_t m = 0; m <= o.max_degree; ++m)
      for (std::size_t n = 0; n <= m; ++n) {
        const double v = hs::ortho_measure_integrate(
            [&](double x) {
              const auto vals = hs::poly_eval_all(m, x, p);
              return vals[m] * vals[n];
            },
            p);
        const double want = m == n ? 1.0 / hs::dt_haar_double(n, p) : 0.0;
        worst = std::max(worst, std::abs(v - want));
      }
    r.results["total_mass"] = mass;
    r.results["max_degree"] = o.max_degree;
    r.results["max_orthogonality_error"] = worst;
    r.results["atom_mass"] = p.b > p.a ? (p.b - p.a) / static_cast<double>(p.b) : 0.0;
    r.pass = worst <= 1e-6 && std::abs(mass - 1.0) <= 1e-7;
  } else if (o.report == "deform") {
    r.tolerances["row_sum"] = 1e-12;
    r.tolerances["composition"] = 1e-10;
    const auto ball = hs::build_ball(p, o.radius);
    const hs::BoundaryRay ray(ball);
    const auto k = hs::deform_ball_kernels(ball, ray, o.c);
    r.results["radius"] = o.radius;
    r.results["c"] = o.c;
    r.results["x_c"] = k.x_c;
    r.results["interior_rows"] = k.interior_rows;
    r.results["omitted_rows"] = k.omitted_rows;
    r.results["max_row_sum_residual"] = k.max_row_sum_residual;
    r.results["composition_checks"] = k.composition_checks;
    r.results["composition_residual"] = k.composition_residual;
    r.pass = k.max_row_sum_residual <= 1e-12 && k.composition_residual <= 1e-10;
  } else if (o.report == "pushforward") {
    r.tolerances["agreement"] = 1e-10;
    const auto pf = hs::pushforward_vs_haar(p, o.c);
    r.results["c"] = o.c;
    r.results["pf1"] = pf.pf1_formula;
    r.results["haar1"] = pf.haar1_formula;
    r.results["pf1_ball"] = pf.pf1_ball;
    r.results["haar1_deformed"] = pf.haar1_deformed;
    r.results["differ"] = pf.differ;
    r.pass = std::abs(pf.pf1_formula - pf.pf1_ball) <= 1e-10 && std::abs(pf.haar1_formula - pf.haar1_deformed) <= 1e-10;
  } else {
    throw hs::Error(hs::ErrorKind::kInvalidInput, "unknown report '" + o.report + "'");
  }
  return r.pass ? 0 : 1;
}

/// Scheme data for products and joins: exact canonical kernels when the file
/// has none, else the given floating-point kernels.
struct LoadedScheme {
  std::optional<hs::GeneralizedScheme<hs::Rational>> exact;
  std::optional<hs::GeneralizedScheme<double>> numeric;
};

LoadedScheme load_scheme(const Json& j) {
  auto file = hs::parse_scheme(j);
  LoadedScheme out;
  if (file.generalized) {
    out.numeric = std::move(file.generalized);
  } else {
    out.exact = hs::canonical_generalized<hs::Rational>(hs::verify_scheme(file.partition).value());
  }
  return out;
}

template <typename T>
void report_generalized(Report& r, const hs::GeneralizedScheme<T>& gs, const std::string& out_path) {
  const auto v = hs::verify_generalized(gs);
  if (!v) {
    r.pass = false;
    r.results["violation"] = violation_json(v.violation());
    return;
  }
  const auto h = hs::from_generalized(v.value());
  const auto w = hs::haar(h);
  const auto t2 = hs::t2_reformulation(gs, w.left);
  r.results["scheme"] = scheme_json(v.value().scheme);
  r.results["hypergroup"] = hs::hypergroup_to_json(h);
  r.results["haar"] = vector_json(w.left);
  r.results["t2_reformulation"] = {{"holds", t2.holds}, {"scale", hs::scalar_to_json(t2.scale)}, {"residual", t2.residual}};
  r.results["rigid"] = hs::finite_rigidity_check(gs);
  r.pass = t2.holds && hs::verify_hypergroup(h).ok();
  if (!out_path.empty()) hs::write_json_file(out_path, hs::scheme_to_json(gs));
}

template <typename T>
void report_hypergroup(Report& r, const hs::FiniteHypergroup<T>& h, const std::string& out_path) {
  const auto check = hs::verify_hypergroup(h);
  r.results["hypergroup"] = hs::hypergroup_to_json(h);
  r.results["haar"] = vector_json(hs::haar(h).left);
  if (!check) {
    r.pass = false;
    r.results["violation"] = violation_json(check.violation());
  } else {
    r.results["commutative"] = check.value().commutative;
    r.results["symmetric"] = check.value().symmetric;
  }
  if (!out_path.empty()) hs::write_json_file(out_path, hs::hypergroup_to_json(h));
}

int cmd_construct(Report& r, bool is_join, const std::string& f1, const std::string& f2, const std::string& out_path) {
  add_standard_tolerances(r);
  const Json j1 = hs::read_json_file(f1), j2 = hs::read_json_file(f2);
  if (j1.contains("conv") != j2.contains("conv"))
    throw hs::Error(hs::ErrorKind::kInvalidInput, "both inputs must be hypergroups or both schemes");
  if (j1.contains("conv")) {
    const auto h1 = hs::parse_hypergroup(j1), h2 = hs::parse_hypergroup(j2);
    if (h1.exact && h2.exact)
      report_hypergroup(r, is_join ? hs::join(*h1.exact, *h2.exact) : hs::direct_product(*h1.exact, *h2.exact), out_path);
    else
      report_hypergroup(r, is_join ? hs::join(h1.numeric, h2.numeric) : hs::direct_product(h1.numeric, h2.numeric), out_path);
    return r.pass ? 0 : 1;
  }
  const auto s1 = load_scheme(j1), s2 = load_scheme(j2);
  if (s1.exact && s2.exact) {
    report_generalized(r, is_join ? hs::join_scheme(*s1.exact, *s2.exact) : hs::direct_product_scheme(*s1.exact, *s2.exact), out_path);
  } else {
    auto numeric = [](const LoadedScheme& s) {
      if (s.numeric) return *s.numeric;
      hs::GeneralizedScheme<double> g{s.exact->partition, {}, hs::convert<double>(s.exact->omega_x)};
      for (const auto& k : s.exact->kernels) g.kernels.push_back(hs::convert<double>(k));
      return g;
    };
    const auto a = numeric(s1), b = numeric(s2);
    report_generalized(r, is_join ? hs::join_scheme(a, b) : hs::direct_product_scheme(a, b), out_path);
  }
  return r.pass ? 0 : 1;
}

hs::StepDistribution parse_mu(const std::string& text) {
  std::vector<std::pair<std::size_t, double>> atoms;
  std::stringstream ss(text);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) {
      const auto colon = item.find(':');
      const std::size_t h = std::stoul(item.substr(0, colon));
      const double w = colon == std::string::npos ? 1.0 : std::stod(item.substr(colon + 1));
      atoms.emplace_back(h, w);
    }
  } catch (const std::exception&) {
    throw hs::Error(hs::ErrorKind::kInvalidInput, "malformed --mu '" + text + "'");
  }
  return hs::StepDistribution(atoms);
}

struct WalkOptions {
  std::string scheme_file;
  std::string dtgraph;
  std::string mu = "1";
  std::size_t steps = 1;
  std::size_t trials = 100000;
  std::size_t start = 0;
  unsigned threads = 1;
  bool exact = false;
  double tv_tol = 0.02;
};

Json distribution_json(const std::vector<double>& v) { return Json(v); }

int cmd_walk(Report& r, const WalkOptions& o, std::uint64_t seed) {
  const auto mu = parse_mu(o.mu);
  r.seed = seed;
  r.tolerances["tv"] = o.tv_tol;
  r.tolerances["exact_projection"] = 1e-10;
  r.results["params"] = {{"steps", o.steps}, {"trials", o.trials}, {"mu", o.mu}};
  hs::ProjectionCheck check;
  if (!o.dtgraph.empty()) {
    std::vector<double> nums;
    std::stringstream ss(o.dtgraph);
    std::string item;
    try {
      while (std::getline(ss, item, ',')) nums.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw hs::Error(hs::ErrorKind::kInvalidInput, "--dtgraph expects a,b,R[,c]");
    }
    if (nums.size() < 3 || nums.size() > 4) throw hs::Error(hs::ErrorKind::kInvalidInput, "--dtgraph expects a,b,R[,c]");
    const hs::DTParams p{static_cast<int>(nums[0]), static_cast<int>(nums[1])};
    const auto radius = static_cast<std::size_t>(nums[2]);
    const double c = nums.size() == 4 ? nums[3] : 0.0;
    const auto ball = hs::build_ball(p, radius);
    const hs::BoundaryRay ray(ball);
    const auto kernels = hs::deform_ball_kernels(ball, ray, c, false);
    const auto walk = hs::simulate_ball_walk(ball, kernels, mu, o.steps, o.trials, seed, o.threads);
    const auto law = c == 0.0 ? hs::poly_convolution_law(p, mu, o.steps, radius + 1)
                              : hs::ball_convolution_law(p, c, mu, o.steps, radius + 1);
    check = hs::projection_check(walk, kernels.family, mu, o.steps, law);
    r.results["params"]["dtgraph"] = {{"a", p.a}, {"b", p.b}, {"radius", radius}, {"c", c}};
  } else {
    auto file = hs::parse_scheme(hs::read_json_file(o.scheme_file));
    hs::GeneralizedScheme<double> gs;
    if (file.generalized) {
      gs = *file.generalized;
    } else {
      const auto canon = hs::canonical_generalized<hs::Rational>(hs::verify_scheme(file.partition).value());
      gs = {canon.partition, {}, hs::convert<double>(canon.omega_x)};
      for (const auto& k : canon.kernels) gs.kernels.push_back(hs::convert<double>(k));
    }
    const auto v = hs::verify_generalized(gs).value();
    gs = hs::relabeled(gs, v.scheme.relabel);
    const auto family = hs::to_sparse(gs);
    const auto h = hs::from_generalized(v);
    const auto walk = hs::simulate_walk(family, mu, o.start, o.steps, o.trials, seed, o.threads);
    check = hs::projection_check(walk, family, h, mu, o.steps);
  }
  r.results["empirical"] = distribution_json(check.empirical_projection);
  r.results["exact_projection"] = distribution_json(check.exact_projection);
  r.results["convolution_power"] = distribution_json(check.convolution);
  r.results["tv"] = check.tv;
  r.results["exact_residual"] = check.exact_residual;
  r.pass = check.exact_residual <= 1e-10 && (o.exact || check.tv <= o.tv_tol);
  return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperscheme: association schemes, hypergroups, and random walks"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  std::uint64_t seed = 0;
  app.add_flag("--json", json, "Write the report as JSON");
  app.add_option("--seed", seed, "Random seed")->capture_default_str();

  std::string file1, file2, subgroup, out_path, alpha;
  std::size_t idx_a = 0, idx_b = 0;

  auto* verify = app.add_subcommand("verify", "Verify a scheme file");
  verify->add_option("file", file1)->required();

  auto* cosets = app.add_subcommand("cosets", "Double-coset scheme of a group and subgroup");
  cosets->add_option("group", file1, "Group file {\"table\": [[...]]}")->required();
  cosets->add_option("subgroup", subgroup, "Comma-separated element indices")->required();
  cosets->add_option("--out", out_path, "Write the scheme file");

  auto* chars = app.add_subcommand("characters", "Character table of a commutative hypergroup");
  chars->add_option("file", file1)->required();

  auto* dual = app.add_subcommand("dual", "Dual convolution of two characters");
  dual->add_option("file", file1)->required();
  dual->add_option("i", idx_a)->required();
  dual->add_option("j", idx_b)->required();

  auto* deform = app.add_subcommand("deform", "Deform a hypergroup by a positive semicharacter");
  deform->add_option("file", file1)->required();
  deform->add_option("--alpha", alpha, "Comma-separated semicharacter values")->required();
  deform->add_option("--out", out_path, "Write the deformed hypergroup");

  DtOptions dt;
  double x_value = 0.0;
  auto* dtgraph = app.add_subcommand("dtgraph", "Reports on the Gamma(a,b) family");
  dtgraph->add_option("--a", dt.a)->required();
  dtgraph->add_option("--b", dt.b)->required();
  dtgraph->add_option("--radius", dt.radius)->capture_default_str();
  auto* x_opt = dtgraph->add_option("--x", x_value);
  dtgraph->add_option("--grid", dt.grid, "lo:hi:n")->excludes(x_opt);
  dtgraph->add_option("--deform-c", dt.c)->capture_default_str();
  dtgraph->add_option("--max-degree", dt.max_degree)->capture_default_str();
  dtgraph->add_option("--report", dt.report)->check(CLI::IsMember({"psd", "ortho", "deform", "pushforward"}))->capture_default_str();

  auto* product = app.add_subcommand("product", "Direct product of two schemes or hypergroups");
  product->add_option("first", file1)->required();
  product->add_option("second", file2)->required();
  product->add_option("--out", out_path);

  auto* joined = app.add_subcommand("join", "Join of two schemes or hypergroups");
  joined->add_option("first", file1)->required();
  joined->add_option("second", file2)->required();
  joined->add_option("--out", out_path);

  WalkOptions wo;
  auto* walk = app.add_subcommand("walk", "Simulate a random walk and check its projection");
  auto* scheme_opt = walk->add_option("scheme", wo.scheme_file, "Scheme file");
  walk->add_option("--dtgraph", wo.dtgraph, "a,b,R[,c]")->excludes(scheme_opt);
  walk->add_option("--mu", wo.mu, "Step law, e.g. 1 or 1:0.5,2:0.5")->capture_default_str();
  walk->add_option("--steps", wo.steps)->capture_default_str();
  walk->add_option("--trials", wo.trials)->capture_default_str();
  walk->add_option("--start", wo.start)->capture_default_str();
  walk->add_option("--threads", wo.threads)->capture_default_str();
  walk->add_option("--tv-tol", wo.tv_tol)->capture_default_str();
  walk->add_flag("--exact", wo.exact, "Judge only the exact propagation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Report r;
  for (int i = 1; i < argc; ++i) r.command += (i > 1 ? " " : "") + std::string(argv[i]);
  int code = 2;
  try {
    if (*verify) code = cmd_verify(r, file1);
    else if (*cosets) code = cmd_cosets(r, file1, subgroup, out_path);
    else if (*chars) code = cmd_characters(r, file1, seed);
    else if (*dual) code = cmd_dual(r, file1, idx_a, idx_b, seed);
    else if (*deform) code = cmd_deform(r, file1, alpha, out_path);
    else if (*dtgraph) {
      if (x_opt->count() > 0) dt.x = x_value;
      code = cmd_dtgraph(r, dt);
    } else if (*product) code = cmd_construct(r, false, file1, file2, out_path);
    else if (*joined) code = cmd_construct(r, true, file1, file2, out_path);
    else if (*walk) {
      if (wo.scheme_file.empty() == wo.dtgraph.empty()) {
        std::cerr << "walk needs exactly one of <scheme> or --dtgraph\n";
        return 2;
      }
      code = cmd_walk(r, wo, seed);
    }
  } catch (const hs::AxiomError& e) {
    r.pass = false;
    r.results["violation"] = violation_json(e.violation());
    code = 1;
  } catch (const hs::Error& e) {
    if (e.kind() == hs::ErrorKind::kInvalidInput) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
    r.pass = false;
    r.results["error"] = {{"kind", std::string(hs::error_kind_name(e.kind()))}, {"message", e.what()}};
    code = 1;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  emit(r, json);
  return code;
}
