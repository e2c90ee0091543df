#include "dsonc/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "dsonc/cones.hpp"
#include "dsonc/document.hpp"
#include "dsonc/error.hpp"
#include "dsonc/geometry.hpp"
#include "dsonc/mms.hpp"
#include "dsonc/signomial.hpp"
#include "dsonc/structure.hpp"

namespace dsonc::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct Outcome {
  ojson body;
  int code = kExitSuccess;
};

ojson envelope(std::string_view verdict) {
  ojson j;
  j["verdict"] = std::string(verdict);
  j["witnesses"] = ojson::array();
  j["diagnostics"] = ojson::object();
  return j;
}

ojson num(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

ojson num_array(std::span<const double> v) {
  ojson a = ojson::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

ojson point_json(const Point& p) {
  ojson a = ojson::array();
  for (const auto& x : p.coords()) a.push_back(to_string(x));
  return a;
}

ojson points_json(std::span<const Point> pts) {
  ojson a = ojson::array();
  for (const auto& p : pts) a.push_back(point_json(p));
  return a;
}

ojson rationals_json(std::span<const Rational> v) {
  ojson a = ojson::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

ojson witness_json(const DsoncWitness& w) {
  ojson j;
  j["kind"] = "tau";
  j["inner"] = point_json(w.inner);
  j["tau"] = num_array(w.tau);
  if (w.ell) j["ell"] = num(*w.ell);
  return j;
}

ojson circuit_json(const Circuit& c) {
  ojson j;
  j["vertices"] = points_json(c.vertices);
  j["inner"] = point_json(c.inner);
  j["lambda"] = rationals_json(c.lambda);
  return j;
}

ojson split_json(std::span<const Point> inners, std::span<const Point> positives,
                 const std::vector<std::vector<double>>& m) {
  ojson j;
  j["inners"] = points_json(inners);
  j["positives"] = points_json(positives);
  ojson rows = ojson::array();
  for (const auto& row : m) rows.push_back(num_array(row));
  j["fractions"] = rows;
  return j;
}

int verdict_code(Verdict v) { return accepted(v) ? kExitSuccess : kExitNotMember; }

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct CommonOptions {
  std::vector<std::string> files;
  int jobs = 1;
};

struct CheckOptions {
  std::string cone;
  std::string split = "uniform";
  std::string split_file;
  bool refine = false;
  std::size_t cap = kDefaultEnumerationCap;
};

struct BoundOptions {
  std::string split = "uniform";
  std::string split_file;
  bool boost = false;
  bool refine = false;
};

SplitPolicy choose_split(const std::string& mode, const std::string& split_file, const SignomialDocument& doc) {
  if (mode == "uniform") return SplitPolicy::uniform();
  if (!split_file.empty()) return parse_split(read_text_file(split_file));
  if (doc.split) return *doc.split;
  throw Error(ErrorCode::InvalidArgument, "--split file needs --split-file PATH or a \"split\" key in the document");
}

// Polynomial documents are certified through their sign-normalized exponential sum.
Signomial certified_function(const SignomialDocument& doc, ojson& diagnostics) {
  const auto f = doc.to_signomial();
  diagnostics["mode"] = std::string(to_string(doc.mode));
  if (doc.mode == ExponentMode::Poly) {
    const auto g = polynomial_reduction(f);
    diagnostics["poly_reduction"] = !(g == f);
    return g;
  }
  return f;
}

Outcome vertex_sign_outcome(const VertexSignViolation& e, const Signomial& f, ojson body) {
  body["verdict"] = "NotMember";
  ojson off = ojson::array();
  for (std::size_t i : e.offending()) off.push_back(point_json(f.support()[i]));
  body["diagnostics"]["vertex_sign_violation"] = off;
  body["diagnostics"]["reason"] = e.what();
  return {std::move(body), kExitNotMember};
}

std::optional<CircuitFunction> as_circuit_function(const Signomial& f) {
  if (f.size() < 2) return std::nullopt;
  const auto cls = classify_point_set(f.support());
  if (cls.kind != PointSetKind::SimplicialCircuit) return std::nullopt;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i != cls.inner_index && !(f.coefficient(i) > 0.0)) return std::nullopt;
  }
  return CircuitFunction::from_signomial(f);
}

CircuitFunction require_circuit_function(const SignomialDocument& doc) {
  const auto f = doc.to_signomial();
  const auto cls = classify_point_set(f.support());
  if (cls.kind != PointSetKind::SimplicialCircuit) {
    throw Error(ErrorCode::NotACircuit, "support is not a simplicial circuit (" + to_string(cls.reason) + ")");
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i != cls.inner_index && !(f.coefficient(i) > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "circuit vertex coefficients must be positive");
    }
  }
  return CircuitFunction::from_signomial(f);
}

Outcome do_check(const std::string& file, const CheckOptions& opt) {
  const auto doc = load_document(file);
  ojson body = envelope("NotMember");
  auto& diag = body["diagnostics"];
  diag["cone"] = opt.cone;
  const auto f = certified_function(doc, diag);

  if (opt.cone == "dual-sonc") {
    std::vector<bool> negative(f.size());
    std::vector<double> v(f.coefficients().begin(), f.coefficients().end());
    for (std::size_t i = 0; i < f.size(); ++i) negative[i] = v[i] < 0.0;
    try {
      const SignedSupport support(f.support(), negative);
      const auto r = check_dual_sonc_membership(support, v, opt.cap);
      body["verdict"] = std::string(to_string(r.verdict));
      diag["circuits_checked"] = r.circuits_checked;
      ojson viol = ojson::array();
      for (const auto& c : r.violations) {
        ojson j = circuit_json(c.circuit.circuit);
        j["log_inner"] = num(c.log_inner);
        j["log_threshold"] = num(c.log_threshold);
        viol.push_back(j);
      }
      diag["violations"] = viol;
      return {std::move(body), verdict_code(r.verdict)};
    } catch (const VertexSignViolation& e) {
      return vertex_sign_outcome(e, f, std::move(body));
    }
  }

  const bool dsonc = opt.cone == "dsonc";
  if (const auto cf = as_circuit_function(f)) {
    const auto report = certify_circuit(*cf);
    const Verdict v = dsonc ? report.in_dsonc : report.in_sonc;
    body["verdict"] = std::string(to_string(v));
    diag["method"] = "closed-form";
    diag["theta"] = num(report.theta.value_or(std::nan("")));
    diag["theta_check"] = num(report.theta_check.value_or(std::nan("")));
    diag["circuit"] = circuit_json(cf->circuit());
    if (dsonc) {
      for (const auto& w : report.witnesses) body["witnesses"].push_back(witness_json(w));
    } else if (accepted(v)) {
      ojson w;
      w["kind"] = "lambda";
      w["inner"] = point_json(cf->circuit().inner);
      w["lambda"] = num_array(cf->circuit().lambda_double());
      body["witnesses"].push_back(w);
    }
    return {std::move(body), verdict_code(v)};
  }

  try {
    auto split = choose_split(opt.split, opt.split_file, doc);
    if (opt.refine) {
      split = refine_split(f, split, SplitTarget::Membership);
      diag["split_refined"] = true;
    }
    const auto r = dsonc ? is_dsonc_general(f, split) : is_sonc_general(f, split);
    body["verdict"] = std::string(to_string(r.verdict));
    diag["method"] = dsonc ? "split-lp" : "split-frank-wolfe";
    diag["relative_to_split"] = r.pieces.size() > 1;
    std::vector<Point> inners;
    for (const auto& p : r.pieces) inners.push_back(p.inner());
    const auto signed_support = sign_decomposition(f);
    std::vector<Point> positives;
    for (std::size_t i : signed_support.positive()) positives.push_back(f.support()[i]);
    diag["split"] = split_json(inners, positives, r.split);
    ojson pieces = ojson::array();
    for (std::size_t k = 0; k < r.pieces.size(); ++k) {
      ojson pj;
      pj["inner"] = point_json(r.pieces[k].inner());
      if (dsonc) {
        const auto& pr = r.piece_results[k];
        pj["verdict"] = std::string(to_string(pr.verdict));
        pj["slack"] = num(pr.slack);
        if (!pr.diagnostic.empty()) pj["note"] = pr.diagnostic;
        if (pr.witness) body["witnesses"].push_back(witness_json(*pr.witness));
      } else {
        const auto& pr = r.sonc_piece_results[k];
        pj["verdict"] = std::string(to_string(pr.verdict));
        pj["log_value"] = num(pr.log_value);
        pj["upper_bound"] = num(pr.upper_bound);
        pj["log_target"] = num(pr.log_target);
        pj["iterations"] = pr.iterations;
        pj["converged"] = pr.converged;
        if (!pr.diagnostic.empty()) pj["note"] = pr.diagnostic;
        if (accepted(pr.verdict)) {
          ojson w;
          w["kind"] = "lambda";
          w["inner"] = point_json(r.pieces[k].inner());
          w["lambda"] = num_array(pr.lambda);
          body["witnesses"].push_back(w);
        }
      }
      pieces.push_back(pj);
    }
    diag["pieces"] = pieces;
    return {std::move(body), verdict_code(r.verdict)};
  } catch (const VertexSignViolation& e) {
    return vertex_sign_outcome(e, f, std::move(body));
  }
}

Outcome do_bound(const std::string& file, const BoundOptions& opt) {
  const auto doc = load_document(file);
  ojson body = envelope("NoCertificate");
  auto& diag = body["diagnostics"];
  const auto f = certified_function(doc, diag);
  auto split = choose_split(opt.split, opt.split_file, doc);
  if (opt.refine) {
    split = refine_split(f, split, SplitTarget::Bound);
    diag["split_refined"] = true;
  }
  auto r = dsonc_lower_bound(f, split);
  body["verdict"] = std::string(to_string(r.status));
  if (!r.diagnostic.empty()) diag["note"] = r.diagnostic;
  if (r.status != BoundStatus::Certified) {
    ojson pieces = ojson::array();
    for (const auto& p : r.piece_results) pieces.push_back(ojson{{"verdict", std::string(to_string(p.verdict))}, {"slack", num(p.slack)}});
    diag["pieces"] = pieces;
    return {std::move(body), kExitNotMember};
  }
  auto& b = *r.bound;
  if (opt.boost) {
    const auto lambda = boost_lambda(b);
    sonc_bound_boost(b, lambda);
    diag["gamma_sonc_boosted"] = num(b.gamma_sonc_boosted);
    diag["lambda_used"] = num_array(b.lambda_used);
  }
  diag["gamma_dsonc"] = num(b.gamma_dsonc);
  diag["constant_coeff"] = num(b.constant_coeff);
  diag["ell"] = num(b.ell);
  diag["dual_lambda"] = num_array(b.dual_lambda);
  diag["split"] = split_json(b.piece_inners, b.positives, b.split);
  for (const auto& w : b.witnesses) body["witnesses"].push_back(witness_json(w));
  return {std::move(body), kExitSuccess};
}

Outcome do_circuits(const std::string& file, std::size_t cap) {
  const auto doc = load_document(file);
  const auto f = doc.to_signomial();
  ojson body = envelope("Success");
  const auto circuits = enumerate_minimal_circuits(f.support(), cap);
  for (const auto& sc : circuits) {
    ojson j = circuit_json(sc.circuit);
    j["vertex_indices"] = sc.vertex_indices;
    j["inner_index"] = sc.inner_index;
    body["witnesses"].push_back(j);
  }
  body["diagnostics"]["count"] = circuits.size();
  body["diagnostics"]["support_size"] = f.size();
  return {std::move(body), kExitSuccess};
}

Outcome do_equilibrium(const std::string& file) {
  const auto cf = require_circuit_function(load_document(file));
  const auto eq = equilibrium_point(cf);
  ojson body = envelope("Success");
  ojson w;
  w["kind"] = "equilibrium";
  w["point"] = num_array(eq.point);
  w["common_log_value"] = num(eq.common_log_value);
  w["level"] = num(std::exp(eq.common_log_value));
  body["witnesses"].push_back(w);
  if (cf.inner_coeff() < 0.0) {
    body["diagnostics"]["dsonc_boundary"] = is_dsonc_boundary_via_equilibrium(cf);
    body["diagnostics"]["tropical_genus_zero"] = tropical_genus_zero(cf);
  }
  return {std::move(body), kExitSuccess};
}

Outcome do_minimizer(const std::string& file) {
  const auto cf = require_circuit_function(load_document(file));
  const auto m = minimizer(cf);
  ojson body = envelope("Success");
  ojson w;
  w["kind"] = "minimizer";
  w["point"] = num_array(m.point);
  w["scale"] = num(m.scale);
  w["value"] = num(m.value);
  body["witnesses"].push_back(w);
  const auto rep = minimizer_equals_equilibrium(cf);
  auto& diag = body["diagnostics"];
  diag["equals_equilibrium"] = rep.equal;
  diag["distance_to_equilibrium"] = num(rep.distance);
  diag["barycentric_circuit"] = rep.barycentric;
  diag["unit_inner_weight"] = rep.unit_inner_weight;
  diag["value_normalization"] = "sum c_alpha exp(<x, alpha - beta>) + c_beta";
  return {std::move(body), kExitSuccess};
}

Outcome do_extreme_ray(const std::string& file) {
  const auto doc = load_document(file);
  const auto f = doc.to_signomial();
  const SupportSet ambient = doc.ambient ? SupportSet(doc.n, *doc.ambient) : f.support();
  const auto r = is_extreme_ray(f, ambient);
  ojson body = envelope(r.extreme ? "Extreme" : "NotExtreme");
  const char* kind = r.kind == ExtremeRayKind::Monomial ? "monomial"
                     : r.kind == ExtremeRayKind::MinimalCircuit ? "minimal-circuit" : "none";
  body["diagnostics"]["kind"] = kind;
  body["diagnostics"]["reason"] = r.reason;
  return {std::move(body), r.extreme ? kExitSuccess : kExitNotMember};
}

Outcome do_mms(const std::string& file) {
  const auto doc = load_document(file);
  std::vector<Point> delta;
  if (doc.delta) {
    delta = *doc.delta;
  } else {
    const auto f = doc.to_signomial();
    const auto cls = classify_point_set(f.support());
    if (cls.kind == PointSetKind::SimplicialCircuit) {
      delta = cls.circuit->vertices;
    } else {
      for (std::size_t i : hull_vertices(f.support())) delta.push_back(f.support()[i]);
    }
  }
  const auto r = maximal_mediated_set(LatticeSimplex(delta));
  ojson body = envelope("Success");
  ojson w;
  w["kind"] = "maximal-mediated-set";
  w["delta"] = points_json(LatticeSimplex(delta).delta());
  w["lattice_points"] = points_json(r.lattice_points);
  w["mediated"] = points_json(r.mediated);
  body["witnesses"].push_back(w);
  std::vector<Point> excluded;
  for (const auto& p : r.lattice_points) {
    if (!r.contains(p)) excluded.push_back(p);
  }
  body["diagnostics"]["iterations"] = r.iterations;
  body["diagnostics"]["excluded"] = points_json(excluded);
  return {std::move(body), kExitSuccess};
}

Outcome do_sos_check(const std::string& file) {
  const auto cf = require_circuit_function(load_document(file));
  const auto r = is_sos_dsonc_circuit_poly(cf);
  ojson body = envelope(r.sos ? "SOS" : "NotSOS");
  auto& diag = body["diagnostics"];
  diag["dsonc"] = std::string(to_string(r.dsonc));
  diag["inner_in_mediated_set"] = r.inner_in_mediated;
  diag["reason"] = r.reason;
  diag["mediated"] = points_json(r.mediated.mediated);
  return {std::move(body), r.sos ? kExitSuccess : kExitNotMember};
}

std::vector<double> parse_vector(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size() || !std::isfinite(v)) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "cannot parse \"" + item + "\" as a real number");
    }
  }
  return out;
}

Outcome do_generate(const std::string& circuit_file, const std::string& w_text, double t, const std::string& out) {
  const auto circuit = parse_circuit(read_text_file(circuit_file));
  const auto w = parse_vector(w_text);
  const auto f = generate_boundary_function(circuit, w, t);
  const auto doc = SignomialDocument::from_signomial(f.to_signomial());
  if (!out.empty()) save_document(out, doc);
  ojson body = envelope("Success");
  ojson wj;
  wj["kind"] = "document";
  wj["document"] = ojson::parse(dump_document(doc));
  body["witnesses"].push_back(wj);
  body["diagnostics"]["dsonc"] = std::string(to_string(is_dsonc_circuit(f)));
  if (circuit.full_dimensional()) body["diagnostics"]["equilibrium"] = num_array(equilibrium_point(f).point);
  if (!out.empty()) body["diagnostics"]["out"] = out;
  return {std::move(body), kExitSuccess};
}

struct Axis {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t steps = 0;
  double at(std::size_t i) const {
    return steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
};

Axis parse_axis(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw Error(ErrorCode::InvalidArgument, "grid axis must read X0:X1:STEPS, got \"" + text + "\"");
  Axis a;
  const auto lo = parse_vector(parts[0]);
  const auto hi = parse_vector(parts[1]);
  if (lo.size() != 1 || hi.size() != 1) throw Error(ErrorCode::InvalidArgument, "bad grid bounds in \"" + text + "\"");
  a.lo = lo[0];
  a.hi = hi[0];
  try {
    std::size_t used = 0;
    const long long s = std::stoll(parts[2], &used);
    if (used != parts[2].size() || s < 1) throw std::invalid_argument(parts[2]);
    a.steps = static_cast<std::size_t>(s);
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, "grid STEPS must be a positive integer, got \"" + parts[2] + "\"");
  }
  return a;
}

double evaluate_document(const SignomialDocument& doc, const Signomial& f, std::span<const double> x) {
  if (doc.mode == ExponentMode::Exp) return evaluate(f, x);
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double term = f.coefficient(i);
    for (std::size_t k = 0; k < x.size(); ++k) {
      term *= std::pow(x[k], static_cast<int>(to_double(f.support()[i][k])));
    }
    sum += term;
  }
  return sum;
}

Outcome do_plot(const std::string& file, const std::string& grid, const std::string& out) {
  const auto doc = load_document(file);
  const auto f = doc.to_signomial();
  std::vector<Axis> axes;
  std::stringstream ss(grid);
  std::string part;
  while (std::getline(ss, part, ',')) axes.push_back(parse_axis(part));
  if (axes.empty() || axes.size() > 2) throw Error(ErrorCode::InvalidArgument, "grid must have one or two axes");
  if (axes.size() != doc.n) {
    throw Error(ErrorCode::DimensionMismatch, "grid has " + std::to_string(axes.size()) + " axes but n = " +
                                                  std::to_string(doc.n));
  }
  std::string csv = axes.size() == 1 ? "x,f\n" : "x,y,f\n";
  std::size_t rows = 0;
  const std::size_t ny = axes.size() == 2 ? axes[1].steps : 1;
  for (std::size_t i = 0; i < axes[0].steps; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      std::vector<double> x{axes[0].at(i)};
      if (axes.size() == 2) x.push_back(axes[1].at(j));
      const double v = evaluate_document(doc, f, x);
      for (double c : x) csv += format_g17(c) + ",";
      csv += format_g17(v) + "\n";
      ++rows;
    }
  }
  write_text_file(out, csv);
  ojson body = envelope("Success");
  body["diagnostics"]["rows"] = rows;
  body["diagnostics"]["out"] = out;
  body["diagnostics"]["columns"] = axes.size() == 1 ? ojson::array({"x", "f"}) : ojson::array({"x", "y", "f"});
  return {std::move(body), kExitSuccess};
}

Outcome error_outcome(std::string_view code, const std::string& message) {
  ojson body = envelope("Error");
  body["diagnostics"]["code"] = std::string(code);
  body["diagnostics"]["message"] = message;
  return {std::move(body), kExitError};
}

Outcome guarded(const std::function<Outcome()>& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    auto o = error_outcome(to_string(e.code()), e.what());
    if (e.line() > 0) {
      o.body["diagnostics"]["line"] = e.line();
      o.body["diagnostics"]["column"] = e.column();
    }
    return o;
  } catch (const VertexSignViolation& e) {
    auto o = error_outcome(to_string(e.code()), e.what());
    o.body["diagnostics"]["offending"] = e.offending();
    return o;
  } catch (const Error& e) {
    return error_outcome(to_string(e.code()), e.what());
  } catch (const std::exception& e) {
    return error_outcome("InternalError", e.what());
  }
}

// Runs `fn` over every file with up to `jobs` worker threads.
Outcome run_batch(const CommonOptions& common, const std::function<Outcome(const std::string&)>& fn) {
  if (common.files.size() == 1) {
    auto o = guarded([&] { return fn(common.files.front()); });
    return o;
  }
  std::vector<Outcome> results(common.files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < results.size(); i = next++) {
      results[i] = guarded([&] { return fn(common.files[i]); });
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(common.jobs, 1)), 1, results.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Outcome agg;
  agg.code = kExitSuccess;
  std::size_t worst = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].code > agg.code) {
      agg.code = results[i].code;
      worst = i;
    }
  }
  agg.body = envelope(results[worst].body["verdict"].get<std::string>());
  agg.body["diagnostics"]["jobs"] = threads;
  agg.body["diagnostics"]["files"] = results.size();
  ojson list = ojson::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    ojson item;
    item["file"] = common.files[i];
    item["exit_code"] = results[i].code;
    for (auto& [k, v] : results[i].body.items()) item[k] = v;
    list.push_back(item);
  }
  agg.body["results"] = list;
  return agg;
}

void add_batch_options(CLI::App* sub, CommonOptions& common) {
  sub->add_option("FILE", common.files, "Input document(s)")->required()->check(CLI::ExistingFile);
  sub->add_option("--jobs", common.jobs, "Worker threads when several files are given")->check(CLI::PositiveNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certify signomials and sparse polynomials in the SONC and DSONC cones"};
  app.name("dsonc");
  app.require_subcommand(1);

  CommonOptions common;
  CheckOptions check;
  BoundOptions bound;
  std::size_t cap = kDefaultEnumerationCap;
  std::string circuit_file, w_text, grid, out_path;
  double t = 1.0;

  auto* c_check = app.add_subcommand("check", "Cone membership test");
  c_check->add_option("--cone", check.cone, "sonc | dsonc | dual-sonc")
      ->required()
      ->check(CLI::IsMember({"sonc", "dsonc", "dual-sonc"}));
  c_check->add_option("--split", check.split, "uniform | file")->check(CLI::IsMember({"uniform", "file"}));
  c_check->add_option("--split-file", check.split_file, "Split policy JSON")->check(CLI::ExistingFile);
  c_check->add_flag("--refine", check.refine, "Heuristic split refinement");
  c_check->add_option("--cap", check.cap, "Enumeration cap for dual-sonc");
  add_batch_options(c_check, common);

  auto* c_bound = app.add_subcommand("bound", "DSONC lower bound (optionally SONC-boosted)");
  c_bound->add_option("--split", bound.split, "uniform | file")->check(CLI::IsMember({"uniform", "file"}));
  c_bound->add_option("--split-file", bound.split_file, "Split policy JSON")->check(CLI::ExistingFile);
  c_bound->add_flag("--boost", bound.boost, "Apply the SONC boosting factor");
  c_bound->add_flag("--refine", bound.refine, "Heuristic split refinement");
  add_batch_options(c_bound, common);

  auto* c_circuits = app.add_subcommand("circuits", "List minimal circuits of the support");
  c_circuits->add_option("--cap", cap, "Maximum support size");
  add_batch_options(c_circuits, common);

  auto* c_eq = app.add_subcommand("equilibrium", "Equilibrium point of a circuit function");
  add_batch_options(c_eq, common);
  auto* c_min = app.add_subcommand("minimizer", "Minimizer of a circuit function");
  add_batch_options(c_min, common);
  auto* c_ext = app.add_subcommand("extreme-ray", "Extreme-ray test in the DSONC cone");
  add_batch_options(c_ext, common);
  auto* c_mms = app.add_subcommand("mms", "Maximal mediated set");
  add_batch_options(c_mms, common);
  auto* c_sos = app.add_subcommand("sos-check", "SOS test for DSONC circuit polynomials");
  add_batch_options(c_sos, common);

  auto* c_gen = app.add_subcommand("generate", "Boundary DSONC function with prescribed equilibrium");
  c_gen->add_option("--circuit", circuit_file, "Circuit JSON")->required()->check(CLI::ExistingFile);
  c_gen->add_option("--w", w_text, "Equilibrium point, comma separated")->required();
  c_gen->add_option("--t", t, "Positive scale")->required();
  c_gen->add_option("--out", out_path, "Write the generated document here");

  auto* c_plot = app.add_subcommand("plot", "Sample the function on a grid into CSV");
  std::string plot_file;
  c_plot->add_option("FILE", plot_file, "Input document")->required()->check(CLI::ExistingFile);
  c_plot->add_option("--grid", grid, "X0:X1:STEPS[,Y0:Y1:STEPS]")->required();
  c_plot->add_option("--out", out_path, "CSV output path")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitSuccess;
  } catch (const CLI::ParseError& e) {
    auto o = error_outcome("UsageError", e.what());
    out << o.body.dump(2) << "\n";
    err << "dsonc: " << e.what() << "\n";
    return kExitError;
  }

  Outcome result;
  if (c_check->parsed()) {
    result = run_batch(common, [&](const std::string& f) { return do_check(f, check); });
  } else if (c_bound->parsed()) {
    result = run_batch(common, [&](const std::string& f) { return do_bound(f, bound); });
  } else if (c_circuits->parsed()) {
    result = run_batch(common, [&](const std::string& f) { return do_circuits(f, cap); });
  } else if (c_eq->parsed()) {
    result = run_batch(common, do_equilibrium);
  } else if (c_min->parsed()) {
    result = run_batch(common, do_minimizer);
  } else if (c_ext->parsed()) {
    result = run_batch(common, do_extreme_ray);
  } else if (c_mms->parsed()) {
    result = run_batch(common, do_mms);
  } else if (c_sos->parsed()) {
    result = run_batch(common, do_sos_check);
  } else if (c_gen->parsed()) {
    result = guarded([&] { return do_generate(circuit_file, w_text, t, out_path); });
  } else {
    result = guarded([&] { return do_plot(plot_file, grid, out_path); });
  }
  out << result.body.dump(2) << "\n";
  if (result.code == kExitError) {
    const auto& d = result.body["diagnostics"];
    if (d.contains("message")) err << "dsonc: " << d["code"].get<std::string>() << ": " << d["message"].get<std::string>() << "\n";
  }
  return result.code;
}

}  // namespace dsonc::cli
