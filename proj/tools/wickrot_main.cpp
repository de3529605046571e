// wickrot: decides Wick-rotatability of pointwise curvature data, classifies
// purely electric/magnetic tensors and exposes the orbit machinery
// (flows, closures, limits, polynomial invariants) behind the verdicts.

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "wickrot/io.hpp"

namespace {

using wick::Json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitIndeterminate = 2;

struct CommonOpts {
  std::uint64_t seed = 42;
  int max_iter = 20000;
};

wick::FlowConfig make_config(const CommonOpts& opts) {
  wick::FlowConfig config;
  config.seed = opts.seed;
  config.max_iter = opts.max_iter;
  return config;
}

void print_report(Json report) {
  std::cout << report.dump(2) << std::endl;
}

wick::Signature parse_signature(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw wick::ParseError("--signature expects 'p,q'");
  }
  return wick::Signature{std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
}

int run_classify(const std::string& input, const std::string& subject_name, double tol,
                 const CommonOpts& opts) {
  const wick::CurvatureBundle bundle = wick::parse_input(input);
  const wick::TensorSubject subject =
      subject_name == "weyl" ? wick::TensorSubject::Weyl : wick::TensorSubject::Riemann;
  const wick::FlowConfig config = make_config(opts);
  const wick::PurityReport report = wick::classify_purity(bundle, subject, config, tol);

  Json j;
  j["command"] = "classify";
  j["input"] = input;
  j["label"] = bundle.label;
  j["signature"] = wick::signature_json(bundle.metric.signature);
  j["seed"] = opts.seed;
  j["result"] = wick::purity_json(report);
  print_report(j);
  return report.indeterminate ? kExitIndeterminate : kExitOk;
}

int run_wick_check(const std::string& path_a, const std::string& path_b, double tol,
                   const CommonOpts& opts) {
  const wick::CurvatureBundle a = wick::parse_input(path_a);
  const wick::CurvatureBundle b = wick::parse_input(path_b);
  const wick::FlowConfig config = make_config(opts);
  const wick::WickVerdict verdict = wick::wick_check(a, b, config, tol);

  Json j;
  j["command"] = "wick-check";
  j["a"] = path_a;
  j["b"] = path_b;
  j["seed"] = opts.seed;
  j["result"] = wick::wick_json(verdict);
  print_report(j);
  return verdict.relation == wick::WickRelation::Indeterminate ? kExitIndeterminate : kExitOk;
}

int run_invariants(const std::string& input, int max_degree, const std::string& format) {
  const wick::CurvatureBundle bundle = wick::parse_input(input);
  const auto words = wick::generate_contractions(max_degree, bundle);
  const wick::InvariantVector inv = wick::evaluate_invariants(bundle, words);

  if (format == "csv") {
    std::cout << "label,degree,derivative_order,value\n";
    for (std::size_t i = 0; i < inv.values.size(); ++i) {
      std::cout << '"' << inv.words[i].label << "\"," << inv.words[i].degree << ','
                << inv.words[i].derivative_order << ',';
      std::cout.precision(17);
      std::cout << inv.values[i] << "\n";
    }
    return kExitOk;
  }
  Json j;
  j["command"] = "invariants";
  j["input"] = input;
  j["label"] = bundle.label;
  j["signature"] = wick::signature_json(bundle.metric.signature);
  j["max_degree"] = max_degree;
  j["invariants"] = wick::invariants_json(inv);
  print_report(j);
  return kExitOk;
}

int run_flow(const std::string& input, const std::string& group_name, const CommonOpts& opts) {
  const wick::CurvatureBundle bundle = wick::parse_input(input);
  const wick::FlowConfig config = make_config(opts);
  const int n = bundle.metric.signature.dim();
  const wick::GroupSpec group = group_name == "complex"
                                    ? wick::GroupSpec::complex_group(n)
                                    : wick::GroupSpec::real(bundle.metric.signature);
  const wick::FlowResult result = wick::norm_flow(wick::flow_vector(bundle), group, config);

  Json j;
  j["command"] = "flow";
  j["input"] = input;
  j["label"] = bundle.label;
  j["seed"] = opts.seed;
  j["result"] = wick::flow_json(result);
  print_report(j);
  return result.verdict == wick::FlowVerdict::MaxIter ? kExitIndeterminate : kExitOk;
}

int run_vsi(const std::string& input, int max_degree, double tol) {
  const wick::CurvatureBundle bundle = wick::parse_input(input);
  const bool vsi = wick::is_vsi(bundle, max_degree, tol);
  const auto words = wick::generate_contractions(max_degree, bundle);
  const wick::InvariantVector inv = wick::evaluate_invariants(bundle, words);
  double worst = 0.0;
  for (double v : inv.values) worst = std::max(worst, std::abs(v));

  Json j;
  j["command"] = "vsi";
  j["input"] = input;
  j["label"] = bundle.label;
  j["max_degree"] = max_degree;
  j["tol"] = tol;
  j["vsi"] = vsi;
  j["max_abs_invariant"] = worst;
  j["word_count"] = inv.values.size();
  print_report(j);
  return kExitOk;
}

int run_catalog(const std::string& name, const std::string& emit_path, int dim,
                const std::string& signature_text) {
  std::optional<wick::Signature> sig;
  if (!signature_text.empty()) sig = parse_signature(signature_text);
  const wick::CurvatureBundle bundle = wick::catalog_metric(name, dim, sig);
  if (!emit_path.empty()) wick::write_document(bundle, emit_path);

  const wick::DerivedCurvature derived = wick::derived_curvature(bundle);
  Json j;
  j["command"] = "catalog";
  j["name"] = name;
  j["signature"] = wick::signature_json(bundle.metric.signature);
  j["scalar_curvature"] = derived.scalar;
  if (!emit_path.empty()) j["emitted"] = emit_path;
  print_report(j);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wick-rotatability and purity classification of pointwise curvature data"};
  app.require_subcommand(1);

  CommonOpts opts;

  auto* classify = app.add_subcommand("classify", "RPE/RPM (PE/PM) purity classification");
  std::string classify_input, classify_tensor = "riemann";
  double classify_tol = 1e-8;
  classify->add_option("--input", classify_input, "curvature document")->required();
  classify->add_option("--tensor", classify_tensor, "riemann|weyl")
      ->check(CLI::IsMember({"riemann", "weyl"}));
  classify->add_option("--tol", classify_tol, "split residual tolerance (default 1e-8)");
  classify->add_option("--max-iter", opts.max_iter, "flow iteration budget");
  classify->add_option("--seed", opts.seed, "random seed (default 42)");

  auto* wickcheck = app.add_subcommand("wick-check", "are two bundles Wick-rotated?");
  std::string wick_a, wick_b;
  double wick_tol = 1e-8;
  wickcheck->add_option("--a", wick_a, "first curvature document")->required();
  wickcheck->add_option("--b", wick_b, "second curvature document")->required();
  wickcheck->add_option("--tol", wick_tol, "invariant tolerance (default 1e-8)");
  wickcheck->add_option("--seed", opts.seed, "random seed (default 42)");
  wickcheck->add_option("--max-iter", opts.max_iter, "flow iteration budget");

  auto* invariants = app.add_subcommand("invariants", "evaluate the contraction words");
  std::string inv_input, inv_format = "json";
  int inv_degree = 3;
  invariants->add_option("--input", inv_input, "curvature document")->required();
  invariants->add_option("--max-degree", inv_degree, "word degree bound, 1..4 (default 3)");
  invariants->add_option("--format", inv_format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* flow = app.add_subcommand("flow", "norm-minimization flow over a group orbit");
  std::string flow_input, flow_group = "real";
  flow->add_option("--input", flow_input, "curvature document")->required();
  flow->add_option("--group", flow_group, "real|complex")
      ->check(CLI::IsMember({"real", "complex"}));
  flow->add_option("--seed", opts.seed, "random seed (default 42)");
  flow->add_option("--max-iter", opts.max_iter, "flow iteration budget");

  auto* vsi = app.add_subcommand("vsi", "do all generated invariants vanish?");
  std::string vsi_input;
  int vsi_degree = 3;
  double vsi_tol = 1e-10;
  vsi->add_option("--input", vsi_input, "curvature document")->required();
  vsi->add_option("--max-degree", vsi_degree, "word degree bound, 1..4 (default 3)");
  vsi->add_option("--tol", vsi_tol, "absolute tolerance (default 1e-10)");

  auto* catalog = app.add_subcommand("catalog", "emit a named example space");
  std::string cat_name, cat_emit, cat_sig;
  int cat_dim = 4;
  catalog->add_option("--name", cat_name, "s2xs2|lorentz_L|neutral_N|ppwave_vsi|flat")
      ->required();
  catalog->add_option("--emit", cat_emit, "write the document to this path");
  catalog->add_option("--dim", cat_dim, "dimension for 'flat' (default 4)");
  catalog->add_option("--signature", cat_sig, "signature p,q for 'flat' (default n,0)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) return run_classify(classify_input, classify_tensor, classify_tol, opts);
    if (wickcheck->parsed()) return run_wick_check(wick_a, wick_b, wick_tol, opts);
    if (invariants->parsed()) return run_invariants(inv_input, inv_degree, inv_format);
    if (flow->parsed()) return run_flow(flow_input, flow_group, opts);
    if (vsi->parsed()) return run_vsi(vsi_input, vsi_degree, vsi_tol);
    if (catalog->parsed()) return run_catalog(cat_name, cat_emit, cat_dim, cat_sig);
  } catch (const wick::IndeterminateError& e) {
    std::cerr << "indeterminate: " << e.what() << "\n";
    return kExitIndeterminate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
