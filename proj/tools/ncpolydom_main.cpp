// Command-line front-end: every subcommand reads JSON inputs (inline or by
// path), runs one operation, and writes a single JSON report to stdout.
// Exit codes: 0 success, 1 validation error, 2 computed but uncertified.
// Reports are deterministic: identical argv + inputs + seed give identical
// bytes (the thread count never appears in a report).

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ncpolydom/berezin.hpp"
#include "ncpolydom/fock.hpp"
#include "ncpolydom/json_io.hpp"
#include "ncpolydom/metric.hpp"
#include "ncpolydom/optuple.hpp"
#include "ncpolydom/poly.hpp"
#include "ncpolydom/series.hpp"
#include "ncpolydom/version.hpp"

namespace npd = ncpolydom;
using npd::json;

namespace {

struct Input {
  std::string source;  // "inline" or "path"
  std::string path;
  std::string digest;
  json parsed;
};

Input load_input(const std::string& arg, const std::string& name) {
  Input in;
  std::string bytes;
  if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) {
    in.source = "inline";
    bytes = arg;
  } else {
    in.source = "path";
    in.path = arg;
    std::ifstream f(arg, std::ios::binary);
    if (!f) throw std::invalid_argument(name + ": cannot open file " + arg);
    std::ostringstream ss;
    ss << f.rdbuf();
    bytes = ss.str();
  }
  in.digest = npd::fnv1a64_hex(bytes);
  try {
    in.parsed = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(name + ": malformed JSON: " + e.what());
  }
  return in;
}

json input_echo(const Input& in) {
  json j{{"source", in.source}, {"fnv1a64", in.digest}};
  if (!in.path.empty()) j["path"] = in.path;
  return j;
}

std::vector<int> parse_int_list(const std::string& s, const std::string& name) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (...) {
      throw std::invalid_argument(name + ": expected a comma-separated integer list");
    }
  }
  if (out.empty()) throw std::invalid_argument(name + ": empty list");
  return out;
}

std::vector<double> parse_double_list(const std::string& s, const std::string& name) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (...) {
      throw std::invalid_argument(name + ": expected a comma-separated number list");
    }
  }
  if (out.empty()) throw std::invalid_argument(name + ": empty list");
  return out;
}

template <class T>
std::vector<T> broadcast(std::vector<T> v, int k, const std::string& name) {
  if (static_cast<int>(v.size()) == 1 && k > 1) return std::vector<T>(k, v[0]);
  if (static_cast<int>(v.size()) != k)
    throw std::invalid_argument(name + ": expected 1 or " + std::to_string(k) + " entries");
  return v;
}

json finite_or_string(double v) {
  if (std::isfinite(v)) return json(v);
  return json(v > 0 ? "infinity" : "-infinity");
}

json bracket_json(const npd::NormBracket& b) {
  return {{"lower", b.lower}, {"upper", b.upper}};
}

json margins_json(const npd::MembershipReport& rep) {
  json out = json::array();
  for (const auto& [p, m] : rep.margins) out.push_back({{"p", p}, {"margin", m}});
  return out;
}

const char* verdict_str(npd::MembershipVerdict v) {
  switch (v) {
    case npd::MembershipVerdict::inside_open: return "inside-open";
    case npd::MembershipVerdict::on_or_inside_closed: return "on-or-inside-closed";
    default: return "outside";
  }
}

json trace_json(const npd::SequenceTrace& tr) {
  return {{"r", tr.r}, {"residual_upper", tr.residual_upper}, {"cauchy", tr.cauchy}};
}

json traces_json(const std::vector<npd::SequenceTrace>& trs) {
  json out = json::array();
  for (const auto& t : trs) out.push_back(trace_json(t));
  return out;
}

json bounds_json(const npd::BoundednessReport& b) {
  return {{"locally_bounded", b.locally_bounded},
          {"ceiling", b.ceiling},
          {"radii", b.radii},
          {"values", b.values},
          {"flagged_radii", b.flagged_radii}};
}

json level_values_json(const std::vector<npd::LevelValue>& vals) {
  json out = json::array();
  for (const auto& v : vals) out.push_back({{"p", v.p}, {"value", v.value}});
  return out;
}

struct Report {
  json inputs = json::object();
  json config = json::object();
  json results = json::object();
  int exit_code = 0;

  int emit(const std::string& subcommand, const std::string& out_path) const {
    json doc{{"tool", "ncpolydom"},
             {"version", npd::kVersion},
             {"subcommand", subcommand},
             {"inputs", inputs},
             {"config", config},
             {"results", results}};
    std::string text = doc.dump(2);
    text.push_back('\n');
    if (!out_path.empty()) {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw std::invalid_argument("--out: cannot open file " + out_path);
      f << text;
    }
    std::cout << text;
    return exit_code;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical toolkit for regular polydomains: weighted-shift models, "
               "domain membership, kernels, series analysis, and the series metric"};
  app.require_subcommand(1);

  // Shared option storage; each subcommand binds the flags it uses.
  std::string arg_q, arg_x, arg_series, arg_f, arg_g, arg_seq, arg_word, arg_op, arg_mode = "open";
  std::string arg_caps, arg_r, arg_rgrid, arg_m, arg_p, arg_dims = "3", arg_out, arg_expr;
  int arg_max = 5, arg_pmax = 60, arg_window = -1, arg_mmax = 50, arg_terms = 20, arg_samples = 100;
  double arg_eps = -1.0, arg_tol = 1e-10, arg_tail_tol = 1e-6, arg_c = 1.0, arg_ceiling = 1e8;
  double arg_point = 0.5, arg_radius = 0.5, arg_seq_tol = 1e-6;
  unsigned long long arg_seed = 0;
  bool arg_verify = false;
  std::string arg_wbox;

  auto add_out = [&](CLI::App* sc) { sc->add_option("--out", arg_out, "also write the report here"); };

  CLI::App* sc_bcoeffs = app.add_subcommand("bcoeffs", "weight coefficients of one polynomial");
  sc_bcoeffs->add_option("--q", arg_q, "polynomial (inline JSON or path)")->required();
  sc_bcoeffs->add_option("--max", arg_max, "max word length");
  sc_bcoeffs->add_option("--word", arg_word, "single word (JSON array) instead of a table");
  add_out(sc_bcoeffs);

  CLI::App* sc_model = app.add_subcommand("model", "truncated tensor model operators");
  sc_model->add_option("--q", arg_q, "polynomial tuple")->required();
  sc_model->add_option("--caps", arg_caps, "per-factor degree caps (default: built-in)");
  sc_model->add_option("--op", arg_op, "W:i,j | defect | word");
  sc_model->add_option("--word", arg_word, "word tuple for --op word");
  add_out(sc_model);

  CLI::App* sc_membership = app.add_subcommand("membership", "domain membership with all defect margins");
  sc_membership->add_option("--q", arg_q)->required();
  sc_membership->add_option("--x", arg_x, "operator tuple")->required();
  sc_membership->add_option("--mode", arg_mode, "open | closed");
  sc_membership->add_option("--eps", arg_eps, "PSD tolerance (default scales with the defect)");
  add_out(sc_membership);

  CLI::App* sc_minkowski = app.add_subcommand("minkowski", "gauge of the open domain");
  sc_minkowski->add_option("--q", arg_q)->required();
  sc_minkowski->add_option("--x", arg_x)->required();
  sc_minkowski->add_option("--tol", arg_tol, "bisection tolerance");
  add_out(sc_minkowski);

  CLI::App* sc_pure = app.add_subcommand("pure", "vanishing of the completely positive iterates");
  sc_pure->add_option("--q", arg_q)->required();
  sc_pure->add_option("--x", arg_x)->required();
  sc_pure->add_option("--mmax", arg_mmax, "max iterates per factor");
  sc_pure->add_option("--tol", arg_tol, "vanishing tolerance")->default_val(1e-8);
  add_out(sc_pure);

  CLI::App* sc_berezin = app.add_subcommand("berezin", "kernel construction and verification");
  sc_berezin->add_option("--q", arg_q)->required();
  sc_berezin->add_option("--x", arg_x)->required();
  sc_berezin->add_option("--caps", arg_caps);
  sc_berezin->add_option("--eps", arg_eps);
  sc_berezin->add_flag("--verify", arg_verify, "report isometry and intertwining residuals");
  sc_berezin->add_option("--g", arg_expr, "span expression to transform");
  sc_berezin->add_option("--rgrid", arg_rgrid, "isometry residuals of the kernel at r-scaled tuples");
  add_out(sc_berezin);

  CLI::App* sc_homnorm = app.add_subcommand("homnorm", "homogeneous level norm");
  sc_homnorm->add_option("--series", arg_series)->required();
  sc_homnorm->add_option("--q", arg_q, "polynomial tuple (default: ball)");
  sc_homnorm->add_option("--p", arg_p, "level profile")->required();
  add_out(sc_homnorm);

  CLI::App* sc_modelnorm = app.add_subcommand("modelnorm", "model-norm bracket at given radii");
  sc_modelnorm->add_option("--series", arg_series)->required();
  sc_modelnorm->add_option("--q", arg_q);
  sc_modelnorm->add_option("--r", arg_r, "per-factor radii")->required();
  sc_modelnorm->add_option("--caps", arg_caps);
  add_out(sc_modelnorm);

  CLI::App* sc_eval = app.add_subcommand("eval", "evaluate a series on an operator tuple");
  sc_eval->add_option("--series", arg_series)->required();
  sc_eval->add_option("--q", arg_q);
  sc_eval->add_option("--x", arg_x)->required();
  sc_eval->add_option("--tail-tol", arg_tail_tol, "certification threshold for the tail estimate");
  add_out(sc_eval);

  CLI::App* sc_abel = app.add_subcommand("abel", "boundedness of scaled level sums");
  sc_abel->add_option("--series", arg_series)->required();
  sc_abel->add_option("--q", arg_q);
  sc_abel->add_option("--r", arg_r)->required();
  sc_abel->add_option("--pmax", arg_pmax);
  sc_abel->add_option("--window", arg_window);
  add_out(sc_abel);

  CLI::App* sc_radius = app.add_subcommand("radius", "radius from level-norm roots");
  sc_radius->add_option("--series", arg_series)->required();
  sc_radius->add_option("--q", arg_q);
  sc_radius->add_option("--pmax", arg_pmax);
  sc_radius->add_option("--window", arg_window);
  add_out(sc_radius);

  CLI::App* sc_cauchy = app.add_subcommand("cauchy", "per-level coefficient bounds");
  sc_cauchy->add_option("--series", arg_series)->required();
  sc_cauchy->add_option("--q", arg_q);
  sc_cauchy->add_option("--r", arg_r)->required();
  sc_cauchy->add_option("--caps", arg_caps);
  add_out(sc_cauchy);

  CLI::App* sc_liouville = app.add_subcommand("liouville", "degree bound check");
  sc_liouville->add_option("--series", arg_series)->required();
  sc_liouville->add_option("--q", arg_q);
  sc_liouville->add_option("--m", arg_m, "degree profile")->required();
  sc_liouville->add_option("--c", arg_c, "growth constant");
  sc_liouville->add_option("--rgrid", arg_rgrid)->required();
  add_out(sc_liouville);

  CLI::App* sc_omega = app.add_subcommand("omega", "boundedness-class membership at radii");
  sc_omega->add_option("--series", arg_series)->required();
  sc_omega->add_option("--q", arg_q);
  sc_omega->add_option("--r", arg_r)->required();
  sc_omega->add_option("--pmax", arg_pmax);
  add_out(sc_omega);

  CLI::App* sc_schwarz = app.add_subcommand("schwarz", "gauge comparison for normalized series");
  sc_schwarz->add_option("--series", arg_series)->required();
  sc_schwarz->add_option("--q", arg_q);
  sc_schwarz->add_option("--x", arg_x)->required();
  sc_schwarz->add_option("--caps", arg_caps);
  add_out(sc_schwarz);

  CLI::App* sc_dr = app.add_subcommand("dr", "distance bracket at one radius");
  sc_dr->add_option("--f", arg_f)->required();
  sc_dr->add_option("--g", arg_g)->required();
  sc_dr->add_option("--q", arg_q);
  sc_dr->add_option("--r", arg_radius, "radius")->required();
  sc_dr->add_option("--caps", arg_caps);
  add_out(sc_dr);

  CLI::App* sc_metric = app.add_subcommand("metric", "summed metric over the radius ladder");
  sc_metric->add_option("--f", arg_f)->required();
  sc_metric->add_option("--g", arg_g)->required();
  sc_metric->add_option("--q", arg_q);
  sc_metric->add_option("--terms", arg_terms, "ladder length");
  sc_metric->add_option("--caps", arg_caps);
  add_out(sc_metric);

  CLI::App* sc_weier = app.add_subcommand("weierstrass", "sequence limit extraction");
  sc_weier->add_option("--seq", arg_seq, "JSON array of series")->required();
  sc_weier->add_option("--q", arg_q);
  sc_weier->add_option("--rgrid", arg_rgrid)->required();
  sc_weier->add_option("--tol", arg_seq_tol);
  sc_weier->add_option("--window", arg_wbox, "coefficient box")->required();
  add_out(sc_weier);

  CLI::App* sc_montel = app.add_subcommand("montel", "diagonal subsequence extraction");
  sc_montel->add_option("--seq", arg_seq)->required();
  sc_montel->add_option("--q", arg_q);
  sc_montel->add_option("--window", arg_wbox)->required();
  sc_montel->add_option("--rgrid", arg_rgrid)->required();
  sc_montel->add_option("--tol", arg_seq_tol);
  sc_montel->add_option("--ceiling", arg_ceiling);
  add_out(sc_montel);

  CLI::App* sc_vitali = app.add_subcommand("vitali", "convergence propagation from one radius");
  sc_vitali->add_option("--seq", arg_seq)->required();
  sc_vitali->add_option("--q", arg_q);
  sc_vitali->add_option("--point", arg_point, "interior radius");
  sc_vitali->add_option("--rgrid", arg_rgrid)->required();
  sc_vitali->add_option("--tol", arg_seq_tol);
  sc_vitali->add_option("--ceiling", arg_ceiling);
  add_out(sc_vitali);

  CLI::App* sc_maxprobe = app.add_subcommand("maxprobe", "sampled maximum over a closed ball");
  sc_maxprobe->add_option("--series", arg_series)->required();
  sc_maxprobe->add_option("--q", arg_q);
  sc_maxprobe->add_option("--r", arg_radius, "ball radius");
  sc_maxprobe->add_option("--caps", arg_caps);
  sc_maxprobe->add_option("--samples", arg_samples);
  sc_maxprobe->add_option("--seed", arg_seed);
  sc_maxprobe->add_option("--dims", arg_dims, "per-factor sample dimensions");
  add_out(sc_maxprobe);

  CLI11_PARSE(app, argc, argv);
  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();

  try {
    Report rep;

    auto load_q_for = [&](const std::vector<int>& n) -> npd::PolyTuple {
      if (!arg_q.empty()) {
        Input in = load_input(arg_q, "--q");
        rep.inputs["q"] = input_echo(in);
        npd::PolyTuple q = npd::poly_tuple_from_json(in.parsed, "q");
        if (!n.empty() && q.alphabet_sizes() != n)
          throw std::invalid_argument("--q: alphabet sizes do not match the series");
        return q;
      }
      if (n.empty()) throw std::invalid_argument("--q: required");
      rep.inputs["q"] = {{"source", "default-ball"}};
      return npd::PolyTuple::ball(n);
    };
    auto load_series_arg = [&](const std::string& arg, const char* label) -> npd::FormalSeries {
      Input in = load_input(arg, std::string("--") + label);
      rep.inputs[label] = input_echo(in);
      return npd::series_from_json(in.parsed, label);
    };
    auto load_x = [&]() -> npd::OperatorTuple {
      Input in = load_input(arg_x, "--x");
      rep.inputs["x"] = input_echo(in);
      return npd::operator_tuple_from_json(in.parsed, "x");
    };
    auto load_seq = [&]() -> std::vector<npd::FormalSeries> {
      Input in = load_input(arg_seq, "--seq");
      rep.inputs["seq"] = input_echo(in);
      if (!in.parsed.is_array() || in.parsed.empty())
        throw std::invalid_argument("--seq: expected a nonempty array of series");
      std::vector<npd::FormalSeries> seq;
      for (std::size_t i = 0; i < in.parsed.size(); ++i)
        seq.push_back(npd::series_from_json(in.parsed[i], "seq[" + std::to_string(i) + "]"));
      for (const auto& s : seq)
        if (s.n != seq.front().n || s.coeff_dim != seq.front().coeff_dim)
          throw std::invalid_argument("--seq: series contexts differ");
      return seq;
    };
    auto caps_for = [&](const npd::PolyTuple& q) -> std::vector<int> {
      if (arg_caps.empty()) return npd::default_caps(q);
      return broadcast(parse_int_list(arg_caps, "--caps"), q.k(), "--caps");
    };
    auto radii_for = [&](const npd::PolyTuple& q) -> std::vector<double> {
      return broadcast(parse_double_list(arg_r, "--r"), q.k(), "--r");
    };

    if (name == "bcoeffs") {
      Input in = load_input(arg_q, "--q");
      rep.inputs["q"] = input_echo(in);
      npd::NcPolynomial q = npd::poly_from_json(in.parsed, "q");
      rep.config = {{"max", arg_max}};
      npd::BCoefficients bc(q);
      if (!arg_word.empty()) {
        npd::Word w = npd::word_from_json(json::parse(arg_word), "--word");
        if (!w.valid_for(q.n)) throw std::invalid_argument("--word: letter out of range");
        rep.config["word"] = npd::word_to_json(w);
        rep.results = {{"b", bc.b(w)}};
      } else if (q.n == 1) {
        std::vector<double> b;
        for (int p = 0; p <= arg_max; ++p) b.push_back(bc.b(npd::Word(std::vector<int>(p, 1))));
        rep.results = {{"b", b}};
      } else {
        json table = json::array();
        for (const npd::Word& w : npd::enumerate_words_up_to(q.n, arg_max))
          table.push_back({{"word", npd::word_to_json(w)}, {"b", bc.b(w)}});
        rep.results = {{"table", table}};
      }
      return rep.emit(name, arg_out);
    }

    if (name == "model") {
      npd::PolyTuple q = load_q_for({});
      auto caps = caps_for(q);
      npd::TensorModel model(q, caps);
      rep.config = {{"caps", caps}};
      json factor_dims = json::array();
      for (int i = 0; i < model.k(); ++i) factor_dims.push_back(model.factor_dim(i));
      rep.results = {{"dim", model.dim()}, {"factor_dims", factor_dims}};
      if (!arg_op.empty()) {
        rep.config["op"] = arg_op;
        if (arg_op == "defect") {
          npd::RVec d = model.universal_defect_diag();
          rep.results["op"] = npd::sparse_triplets_json(npd::diagonal_sparse(d));
          rep.results["norm"] = d.cwiseAbs().maxCoeff();
        } else if (arg_op == "word") {
          if (arg_word.empty()) throw std::invalid_argument("--word: required for --op word");
          npd::WordTuple t = npd::word_tuple_from_json(json::parse(arg_word), "--word");
          rep.config["word"] = npd::word_tuple_to_json(t);
          npd::SpMat m = model.word_op(t);
          rep.results["op"] = npd::sparse_triplets_json(m);
          rep.results["norm"] = npd::operator_norm(m);
        } else if (arg_op.rfind("W:", 0) == 0) {
          auto ij = parse_int_list(arg_op.substr(2), "--op");
          if (ij.size() != 2) throw std::invalid_argument("--op: expected W:i,j");
          npd::SpMat m = model.ambient(ij[0] - 1, ij[1]);
          rep.results["op"] = npd::sparse_triplets_json(m);
          rep.results["norm"] = npd::operator_norm(m);
        } else {
          throw std::invalid_argument("--op: expected W:i,j, defect, or word");
        }
      }
      return rep.emit(name, arg_out);
    }

    if (name == "membership") {
      npd::PolyTuple q = load_q_for({});
      npd::OperatorTuple x = load_x();
      npd::MembershipMode mode;
      if (arg_mode == "open")
        mode = npd::MembershipMode::open;
      else if (arg_mode == "closed")
        mode = npd::MembershipMode::closed;
      else
        throw std::invalid_argument("--mode: expected open or closed");
      rep.config = {{"mode", arg_mode}, {"eps", arg_eps}};
      npd::MembershipReport m = npd::membership(q, x, mode, arg_eps);
      rep.results = {{"verdict", verdict_str(m.verdict)}, {"accepted", m.accepted},
                     {"open_ok", m.open_ok},             {"closed_ok", m.closed_ok},
                     {"margins", margins_json(m)},       {"eps_used", m.eps_used},
                     {"defect_norm", m.defect_norm},     {"cross_residual", m.cross_residual}};
      return rep.emit(name, arg_out);
    }

    if (name == "minkowski") {
      npd::PolyTuple q = load_q_for({});
      npd::OperatorTuple x = load_x();
      rep.config = {{"tol", arg_tol}};
      rep.results = {{"gauge", npd::minkowski_functional(q, x, arg_tol)}, {"tol", arg_tol}};
      return rep.emit(name, arg_out);
    }

    if (name == "pure") {
      npd::PolyTuple q = load_q_for({});
      npd::OperatorTuple x = load_x();
      rep.config = {{"mmax", arg_mmax}, {"tol", arg_tol}};
      npd::PurityReport p = npd::is_pure(q, x, arg_mmax, arg_tol);
      rep.results = {{"pure", p.pure}, {"tol", p.tol}, {"traces", p.traces}};
      return rep.emit(name, arg_out);
    }

    if (name == "berezin") {
      npd::PolyTuple q = load_q_for({});
      npd::OperatorTuple x = load_x();
      auto caps = caps_for(q);
      rep.config = {{"caps", caps}, {"eps", arg_eps}, {"verify", arg_verify}};
      npd::BerezinKernel kern = npd::build_kernel(q, x, caps, arg_eps);
      rep.results = {{"model_dim", kern.model->dim()},
                     {"operator_dim", x.dim},
                     {"defect_rank", kern.defect_rank},
                     {"defect_min_eig", kern.defect_min_eig},
                     {"eps_psd", kern.eps_psd},
                     {"cross_residual", kern.cross_residual},
                     {"tail_bound", finite_or_string(kern.tail_bound)},
                     {"tail_exact_zero", kern.tail_exact_zero}};
      if (arg_verify) {
        rep.results["isometry_residual"] = npd::isometry_residual(kern);
        rep.results["intertwining_residual"] = npd::intertwining_residual(kern);
      }
      if (!arg_expr.empty()) {
        Input gin = load_input(arg_expr, "--g");
        rep.inputs["g"] = input_echo(gin);
        npd::WordPairExpr expr = npd::word_pair_expr_from_json(gin.parsed, q.k(), "g");
        npd::Mat direct = npd::transform_direct(q, x, expr);
        npd::Mat via = npd::transform_via_kernel(kern, expr);
        rep.results["transform"] = {{"direct", npd::matrix_dense_json(direct)},
                                    {"via_kernel", npd::matrix_dense_json(via)},
                                    {"difference_norm", npd::operator_norm(npd::Mat(direct - via))}};
      }
      if (!arg_rgrid.empty()) {
        json grid = json::array();
        for (double r : parse_double_list(arg_rgrid, "--rgrid")) {
          npd::BerezinKernel kr = npd::build_kernel(q, npd::scaled(x, npd::cd(r, 0.0)), caps, arg_eps);
          grid.push_back({{"r", r},
                          {"isometry_residual", npd::isometry_residual(kr)},
                          {"tail_bound", finite_or_string(kr.tail_bound)}});
        }
        rep.results["rgrid"] = grid;
      }
      if (!std::isfinite(kern.tail_bound)) rep.exit_code = 2;
      return rep.emit(name, arg_out);
    }

    if (name == "homnorm") {
      npd::FormalSeries f = load_series_arg(arg_series, "series");
      npd::PolyTuple q = load_q_for(f.n);
      auto p = broadcast(parse_int_list(arg_p, "--p"), f.k(), "--p");
      rep.config = {{"p", p}};
      rep.results = {{"homnorm", npd::homogeneous_norm(f, q, p)}};
      return rep.emit(name, arg_out);
    }

    if (name == "modelnorm") {
      npd::FormalSeries f = load_series_arg(arg_series, "series");
      npd::PolyTuple q = load_q_for(f.n);
      auto caps = caps_for(q);
      auto r = radii_for(q);
      rep.config = {{"r", r}, {"caps", caps}};
      rep.results = {{"bracket", bracket_json(npd::model_norm(f, q, r, caps))}};
      return rep.emit(name, arg_out);
    }

    if (name == "eval") {
      npd::FormalSeries f = load_series_arg(arg_series, "series");
      npd::PolyTuple q = load_q_for(f.n);
      npd::OperatorTuple x = load_x();
      rep.config = {{"tail_tol", arg_tail_tol}};
      npd::EvalResult ev = npd::evaluate(f, q, x, arg_tail_tol);
      rep.results = {{"value", npd::matrix_dense_json(ev.value)},
                     {"norm", npd::operator_norm(ev.value)},
                     {"tail_estimate", finite_or_string(ev.tail_estimate)},
                     {"certified", ev.certified},
                     {"gauge", ev.gauge},
                     {"level_bounds", ev.level_bounds}};
      if (!ev.certified) rep.exit_code = 2;
      return rep.emit(name, arg_out);
    }

    auto abel_json = [](const npd::AbelReport& a) -> json {
      return {{"bounded", a.bounded},           {"sup_value", a.sup_value},
              {"level_max", a.level_max},       {"values", level_values_json(a.values)},
              {"growth_trend", a.growth_trend}, {"window", a.window}};
    };

    if (name == "abel") {
      npd::FormalSeries f = load_series_arg(arg_series, "series");
      npd::PolyTuple q = load_q_for(f.n);
      auto r = radii_for(q);
      rep.config = {{"r", r}, {"pmax", arg_pmax}, {"window", arg_window}};
      rep.results = abel_json(npd::abel_bounded_test(f, q, r, arg_pmax, arg_window));
      return rep.emit(name, arg_out);
    }

    if (name == "omega") {
      npd::FormalSeries f = load_series_arg(arg_series, "series");
      npd::PolyTuple q = load_q_for(f.n);
      auto r = radii_for(q);
      rep.config = {{"r", r}, {"pmax", arg_pmax}};
      npd::OmegaReport o = npd::domain_membership_omega(f, q, r, arg_pmax);
      rep.results = {{"in_class", o.in_class}, {"abel", abel_json(o.abel)}};
      return rep.emit(name, arg_out);
    }

    if (name == "radius") {
      npd::FormalSeries f = load_series_arg(arg_series, "series");
      npd::PolyTuple q = load_q_for(f.n);
      rep.config = {{"pmax", arg_pmax}, {"window", arg_window}};
      npd::RadiusReport r = npd::polydomain_radius(f, q, arg_pmax, arg_window);
      rep.results = {{"gamma", finite_or_string(r.gamma)},
                     {"inv_gamma", r.inv_gamma},
                     {"entire", r.entire},
                     {"level_roots", r.level_roots},
                     {"pmax", r.p_max},
                     {"window", r.window}};
      return rep.emit(name, arg_out);
    }

    if (name == "cauchy") {
      npd::FormalSeries f = load_series_arg(arg_series, "series");
      npd::PolyTuple q = load_q_for(f.n);
      auto caps = caps_for(q);
      auto r = radii_for(q);
      rep.config = {{"r", r}, {"caps", caps}};
      npd::CauchyReport c = npd::cauchy_check(f, q, r, caps);
      rep.results = {{"ok", c.ok},
                     {"min_slack", c.min_slack},
                     {"slacks", level_values_json(c.slacks)},
                     {"bound", bracket_json(c.bound)},
                     {"slack_tol", c.slack_tol}};
      return rep.emit(name, arg_out);
    }

    if (name == "liouville") {
      npd::FormalSeries f = load_series_arg(arg_series, "series");
      npd::PolyTuple q = load_q_for(f.n);
      auto m = broadcast(parse_int_list(arg_m, "--m"), f.k(), "--m");
      auto grid = parse_double_list(arg_rgrid, "--rgrid");
      rep.config = {{"m", m}, {"c", arg_c}, {"rgrid", grid}};
      npd::LiouvilleReport l = npd::liouville_degree_bound(f, q, m, arg_c, grid);
      rep.results = {{"consistent", l.consistent},
                     {"r_max", l.r_max},
                     {"excess_norms", level_values_json(l.excess_norms)},
                     {"forced_bounds", level_values_json(l.forced_bounds)},
                     {"violations", l.violations}};
      return rep.emit(name, arg_out);
    }

    if (name == "schwarz") {
      npd::FormalSeries f = load_series_arg(arg_series, "series");
      npd::PolyTuple q = load_q_for(f.n);
      npd::OperatorTuple x = load_x();
      auto caps = caps_for(q);
      rep.config = {{"caps", caps}};
      npd::SchwarzReport s = npd::schwarz_check(f, q, x, caps);
      const char* status = s.status == npd::SchwarzStatus::ok ? "ok"
                           : s.status == npd::SchwarzStatus::nonzero_constant_term
                               ? "nonzero-constant-term"
                               : "norm-surrogate-exceeds-one";
      rep.results = {{"status", status},       {"lhs", s.lhs},
                     {"gauge", s.gauge},       {"slack", s.slack},
                     {"surrogate", s.surrogate}, {"surrogate_grid", s.surrogate_grid}};
      if (s.status != npd::SchwarzStatus::ok) rep.exit_code = 1;
      return rep.emit(name, arg_out);
    }

    if (name == "dr") {
      npd::FormalSeries f = load_series_arg(arg_f, "f");
      npd::FormalSeries g = load_series_arg(arg_g, "g");
      npd::PolyTuple q = load_q_for(f.n);
      auto caps = caps_for(q);
      rep.config = {{"r", arg_radius}, {"caps", caps}};
      rep.results = {{"bracket", bracket_json(npd::dr_distance(f, g, q, arg_radius, caps))}};
      return rep.emit(name, arg_out);
    }

    if (name == "metric") {
      npd::FormalSeries f = load_series_arg(arg_f, "f");
      npd::FormalSeries g = load_series_arg(arg_g, "g");
      npd::PolyTuple q = load_q_for(f.n);
      auto caps = caps_for(q);
      rep.config = {{"terms", arg_terms}, {"caps", caps}, {"radius_rule", "r_m = 1 - 2^-m"}};
      npd::RhoResult rho = npd::rho_metric(f, g, q, caps, arg_terms);
      json drs = json::array();
      for (std::size_t i = 0; i < rho.dr.size(); ++i)
        drs.push_back({{"r", rho.radii[i]}, {"lower", rho.dr[i].lower}, {"upper", rho.dr[i].upper}});
      rep.results = {{"value", rho.value},   {"uncertainty", rho.uncertainty},
                     {"lo", rho.lo},         {"hi", rho.hi},
                     {"m_terms", rho.m_terms}, {"radius_rule", "r_m = 1 - 2^-m"},
                     {"radii", rho.radii},   {"dr", drs}};
      return rep.emit(name, arg_out);
    }

    if (name == "weierstrass") {
      auto seq = load_seq();
      npd::PolyTuple q = load_q_for(seq.front().n);
      auto grid = parse_double_list(arg_rgrid, "--rgrid");
      auto window = broadcast(parse_int_list(arg_wbox, "--window"), seq.front().k(), "--window");
      rep.config = {{"rgrid", grid}, {"tol", arg_seq_tol}, {"window", window}};
      npd::WeierstrassReport w = npd::weierstrass_limit(seq, q, grid, arg_seq_tol, window);
      rep.results = {{"cauchy", w.cauchy},
                     {"tol", w.tol},
                     {"traces", traces_json(w.traces)},
                     {"window", w.window},
                     {"limit", npd::series_to_json(w.limit)},
                     {"fit", traces_json(w.fit)}};
      return rep.emit(name, arg_out);
    }

    if (name == "montel") {
      auto seq = load_seq();
      npd::PolyTuple q = load_q_for(seq.front().n);
      auto grid = parse_double_list(arg_rgrid, "--rgrid");
      auto window = broadcast(parse_int_list(arg_wbox, "--window"), seq.front().k(), "--window");
      rep.config = {{"rgrid", grid}, {"tol", arg_seq_tol}, {"window", window}, {"ceiling", arg_ceiling}};
      npd::MontelReport m = npd::montel_extract(seq, q, window, grid, arg_seq_tol, arg_ceiling);
      const char* status = m.status == npd::MontelStatus::ok ? "ok"
                           : m.status == npd::MontelStatus::not_locally_bounded
                               ? "not-locally-bounded"
                               : "too-few-members";
      rep.results = {{"status", status}, {"bounds", bounds_json(m.bounds)}};
      if (m.status == npd::MontelStatus::ok) {
        rep.results["subsequence"] = m.subsequence;
        rep.results["limit"] = npd::series_to_json(m.limit);
        rep.results["fit"] = traces_json(m.fit);
      }
      return rep.emit(name, arg_out);
    }

    if (name == "vitali") {
      auto seq = load_seq();
      npd::PolyTuple q = load_q_for(seq.front().n);
      auto grid = parse_double_list(arg_rgrid, "--rgrid");
      rep.config = {{"point", arg_point}, {"rgrid", grid}, {"tol", arg_seq_tol}, {"ceiling", arg_ceiling}};
      npd::VitaliReport v = npd::vitali_check(seq, q, arg_point, grid, arg_seq_tol, arg_ceiling);
      const char* status = v.status == npd::VitaliStatus::converges ? "converges"
                           : v.status == npd::VitaliStatus::not_locally_bounded ? "not-locally-bounded"
                           : v.status == npd::VitaliStatus::not_cauchy_at_interior_point
                               ? "not-cauchy-at-interior-point"
                               : "diverges-at-radius";
      rep.results = {{"status", status},
                     {"failed_radius", v.failed_radius},
                     {"bounds", bounds_json(v.bounds)},
                     {"at_point", trace_json(v.at_point)},
                     {"traces", traces_json(v.traces)}};
      return rep.emit(name, arg_out);
    }

    if (name == "maxprobe") {
      npd::FormalSeries f = load_series_arg(arg_series, "series");
      npd::PolyTuple q = load_q_for(f.n);
      auto caps = caps_for(q);
      auto dims = broadcast(parse_int_list(arg_dims, "--dims"), f.k(), "--dims");
      rep.config = {{"r", arg_radius}, {"caps", caps},         {"samples", arg_samples},
                    {"seed", arg_seed}, {"dims", dims}};
      npd::MaxProbeReport m =
          npd::max_principle_probe(f, q, arg_radius, caps, arg_samples, arg_seed, dims);
      rep.results = {{"bracket", bracket_json(m.bracket)},
                     {"witness", m.witness},
                     {"sampled_max", m.sampled_max},
                     {"argmax", m.argmax},
                     {"samples", m.samples},
                     {"seed", m.seed}};
      return rep.emit(name, arg_out);
    }

    throw std::invalid_argument("unknown subcommand");
  } catch (const std::invalid_argument& e) {
    json err{{"tool", "ncpolydom"}, {"version", npd::kVersion}, {"error", e.what()}};
    std::cout << err.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    json err{{"tool", "ncpolydom"}, {"version", npd::kVersion}, {"error", e.what()}};
    std::cout << err.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
