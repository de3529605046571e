#include "wickrot/io.hpp"

#include <fstream>

namespace wick {

namespace {

std::vector<int> json_idx(const Json& entry, std::size_t expected) {
  if (!entry.contains("idx") || !entry["idx"].is_array() || entry["idx"].size() != expected) {
    throw ParseError("component entry needs an 'idx' array of length " +
                     std::to_string(expected));
  }
  std::vector<int> idx;
  for (const Json& v : entry["idx"]) idx.push_back(v.get<int>());
  return idx;
}

double json_real_value(const Json& entry) {
  if (!entry.contains("re")) throw ParseError("component entry needs 're'");
  const double re = entry["re"].get<double>();
  const double im = entry.value("im", 0.0);
  if (im != 0.0) {
    throw ParseError("component 'im' must be 0 for real-slice curvature data");
  }
  return re;
}

// Trailing-four symmetry completion for a derivative tensor of order l.
Tensor derivative_from_components(int n, int order, const Json& entries) {
  const int rank = 4 + order;
  Tensor t = Tensor::zero(TensorShape::single(n, 0, rank));
  std::vector<bool> set(t.comps.size(), false);
  for (const Json& entry : entries) {
    std::vector<int> idx = json_idx(entry, static_cast<std::size_t>(rank));
    for (int v : idx) {
      if (v < 0 || v >= n) throw ParseError("derivative index out of range");
    }
    const double value = json_real_value(entry);
    std::array<int, 4> tail{idx[rank - 4], idx[rank - 3], idx[rank - 2], idx[rank - 1]};
    // Same orbit as the Riemann block, acting on the last four indices.
    const std::array<std::pair<std::array<int, 4>, int>, 8> orbit = {{
        {{tail[0], tail[1], tail[2], tail[3]}, 1},
        {{tail[1], tail[0], tail[2], tail[3]}, -1},
        {{tail[0], tail[1], tail[3], tail[2]}, -1},
        {{tail[1], tail[0], tail[3], tail[2]}, 1},
        {{tail[2], tail[3], tail[0], tail[1]}, 1},
        {{tail[3], tail[2], tail[0], tail[1]}, -1},
        {{tail[2], tail[3], tail[1], tail[0]}, -1},
        {{tail[3], tail[2], tail[1], tail[0]}, 1},
    }};
    std::vector<int> full = idx;
    for (const auto& [perm, sign] : orbit) {
      for (int s = 0; s < 4; ++s) full[rank - 4 + s] = perm[s];
      const std::size_t flat = t.flat_index(0, full.data(), rank);
      const double val = sign * value;
      if (set[flat] && std::abs(t.comps[flat].real() - val) > 1e-12) {
        throw ParseError("conflicting derivative representatives");
      }
      t.comps[flat] = Complex(val, 0.0);
      set[flat] = true;
    }
  }
  return t;
}

}  // namespace

CurvatureBundle parse_document(const Json& doc) {
  if (!doc.contains("dimension")) throw ParseError("document missing 'dimension'");
  const int n = doc["dimension"].get<int>();
  if (n < 1) throw ParseError("'dimension' must be >= 1");
  if (!doc.contains("signature") || !doc["signature"].is_array() ||
      doc["signature"].size() != 2) {
    throw ParseError("document needs 'signature': [p, q]");
  }
  const Signature sig{doc["signature"][0].get<int>(), doc["signature"][1].get<int>()};
  sig.validate();
  if (sig.dim() != n) throw ParseError("signature does not sum to dimension");

  CurvatureBundle out;
  out.metric = MetricPoint::from_signature(sig);
  out.label = doc.value("label", std::string());

  std::vector<RiemannEntry> entries;
  if (doc.contains("riemann")) {
    for (const Json& entry : doc["riemann"]) {
      const std::vector<int> idx = json_idx(entry, 4);
      entries.push_back(RiemannEntry{{idx[0], idx[1], idx[2], idx[3]}, json_real_value(entry)});
    }
  }
  out.riemann = riemann_from_components(n, entries);

  if (doc.contains("derivatives")) {
    if (!doc["derivatives"].is_array()) throw ParseError("'derivatives' must be an array");
    int order = 0;
    for (const Json& tensor_entries : doc["derivatives"]) {
      ++order;
      out.derivatives.push_back(derivative_from_components(n, order, tensor_entries));
    }
  }

  validate_bundle(out);
  return out;
}

CurvatureBundle parse_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file: " + path);
  Json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed JSON in " + path + ": " + e.what());
  }
  return parse_document(doc);
}

Json emit_document(const CurvatureBundle& bundle) {
  const int n = bundle.metric.signature.dim();
  Json doc;
  doc["dimension"] = n;
  doc["signature"] = {bundle.metric.signature.p, bundle.metric.signature.q};
  if (!bundle.label.empty()) doc["label"] = bundle.label;
  Json riemann = Json::array();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
          const double v = bundle.riemann.at(0, {a, b, c, d}).real();
          if (v != 0.0) {
            riemann.push_back(Json{{"idx", {a, b, c, d}}, {"re", v}, {"im", 0.0}});
          }
        }
      }
    }
  }
  doc["riemann"] = std::move(riemann);
  if (!bundle.derivatives.empty()) {
    Json derivs = Json::array();
    for (const Tensor& t : bundle.derivatives) {
      const int rank = t.shape.blocks[0].rank();
      Json entries = Json::array();
      const std::size_t size = t.shape.block_size(0);
      for (std::size_t flat = 0; flat < size; ++flat) {
        const double v = t.comps[flat].real();
        if (v == 0.0) continue;
        std::vector<int> idx(static_cast<std::size_t>(rank), 0);
        std::size_t rem = flat;
        for (int s = rank - 1; s >= 0; --s) {
          idx[s] = static_cast<int>(rem % n);
          rem /= n;
        }
        entries.push_back(Json{{"idx", idx}, {"re", v}, {"im", 0.0}});
      }
      derivs.push_back(std::move(entries));
    }
    doc["derivatives"] = std::move(derivs);
  }
  return doc;
}

void write_document(const CurvatureBundle& bundle, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open output file: " + path);
  out << emit_document(bundle).dump(2) << "\n";
}

Json signature_json(const Signature& sig) { return Json{sig.p, sig.q}; }

Json config_json(const FlowConfig& config) {
  return Json{{"step_init", config.step_init},     {"max_iter", config.max_iter},
              {"grad_tol", config.grad_tol},       {"blowup_bound", config.blowup_bound},
              {"seed", config.seed},               {"dist_tol", config.dist_tol},
              {"restarts", config.restarts}};
}

Json flow_json(const FlowResult& result) {
  Json j;
  j["verdict"] = to_string(result.verdict);
  j["iterations"] = result.iterations;
  j["group_norm"] = result.group_norm;
  j["final_grad_norm"] = result.final_grad_norm;
  j["initial_norm2"] = result.norm_history.empty() ? 0.0 : result.norm_history.front();
  j["final_norm2"] = result.norm_history.empty() ? 0.0 : result.norm_history.back();
  j["monotone"] = result.monotone;
  j["group"] = result.group.tag == GroupTag::Complex
                   ? Json("complex")
                   : Json{{"real", signature_json(result.group.sig)}};
  if (!result.caveats.empty()) j["caveats"] = result.caveats;
  j["config"] = config_json(result.config);
  return j;
}

Json closed_json(const ClosedVerdict& verdict) {
  Json j;
  j["closed"] = verdict.closed;
  if (!verdict.caveat.empty()) j["caveat"] = verdict.caveat;
  j["certificate"] = flow_json(verdict.certificate);
  return j;
}

Json purity_json(const PurityReport& report) {
  Json j;
  j["subject"] = to_string(report.subject);
  if (report.indeterminate) {
    j["verdict"] = "indeterminate";
  } else {
    Json verdicts = Json::array();
    const bool weyl = report.subject == TensorSubject::Weyl;
    if (report.verdict.count(Purity::Electric)) verdicts.push_back(weyl ? "PE" : "RPE");
    if (report.verdict.count(Purity::Magnetic)) verdicts.push_back(weyl ? "PM" : "RPM");
    j["verdict"] = std::move(verdicts);
  }
  j["plus_residual"] = report.plus_residual;
  j["minus_residual"] = report.minus_residual;
  j["residual_tol"] = report.residual_tol;
  if (report.witness) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < report.witness->rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < report.witness->cols(); ++c) row.push_back((*report.witness)(r, c));
      rows.push_back(std::move(row));
    }
    j["witness_involution"] = std::move(rows);
  }
  j["flow"] = flow_json(report.flow);
  return j;
}

Json wick_json(const WickVerdict& verdict) {
  Json j;
  j["relation"] = to_string(verdict.relation);
  j["invariant_distance"] = verdict.invariant_distance;
  j["relative_distance"] = verdict.relative_distance;
  j["invariant_tol"] = verdict.invariant_tol;
  j["max_degree"] = verdict.max_degree;
  if (verdict.closure_a) j["closure_a"] = closed_json(*verdict.closure_a);
  if (verdict.closure_b) j["closure_b"] = closed_json(*verdict.closure_b);
  if (verdict.alignment_distance) j["alignment_distance"] = *verdict.alignment_distance;
  if (verdict.alignment) {
    Json rows = Json::array();
    const Eigen::MatrixXcd& m = verdict.alignment->mat;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        row.push_back(Json{{"re", m(r, c).real()}, {"im", m(r, c).imag()}});
      }
      rows.push_back(std::move(row));
    }
    j["alignment"] = std::move(rows);
  }
  if (verdict.limits) {
    j["boundary_limits"] = Json{{"wick_rotated", verdict.limits->wick_rotated},
                                {"distance", verdict.limits->distance},
                                {"invariant_rel_distance", verdict.limits->invariant_rel_distance}};
  }
  if (!verdict.caveats.empty()) j["caveats"] = verdict.caveats;
  return j;
}

Json invariants_json(const InvariantVector& inv) {
  Json words = Json::array();
  for (std::size_t i = 0; i < inv.values.size(); ++i) {
    words.push_back(Json{{"label", inv.words[i].label},
                         {"degree", inv.words[i].degree},
                         {"derivative_order", inv.words[i].derivative_order},
                         {"value", inv.values[i]}});
  }
  return words;
}

}  // namespace wick
