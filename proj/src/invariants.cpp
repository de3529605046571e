#include "wickrot/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>

namespace wick {

namespace {

// One symmetry operation on the slots of a degree-d word: a slot permutation
// with a sign. Acting on a matching M gives M'[perm[s]] = perm[M[s]].
struct SlotOp {
  std::vector<int> perm;
  int sign = 1;
};

// The 8 slot symmetries of one Riemann factor (local slots 0..3):
// antisymmetric pair swaps (sign -1 each) and the pair exchange (sign +1).
const std::vector<SlotOp>& factor_ops() {
  static const std::vector<SlotOp> ops = [] {
    std::vector<SlotOp> out;
    const int swaps[2][4] = {{1, 0, 2, 3}, {0, 1, 3, 2}};
    const int exchange[4] = {2, 3, 0, 1};
    for (int use_ex = 0; use_ex < 2; ++use_ex) {
      for (int s1 = 0; s1 < 2; ++s1) {
        for (int s2 = 0; s2 < 2; ++s2) {
          SlotOp op;
          op.perm = {0, 1, 2, 3};
          op.sign = 1;
          if (s1) {
            std::vector<int> next(4);
            for (int i = 0; i < 4; ++i) next[i] = op.perm[swaps[0][i]];
            op.perm = next;
            op.sign = -op.sign;
          }
          if (s2) {
            std::vector<int> next(4);
            for (int i = 0; i < 4; ++i) next[i] = op.perm[swaps[1][i]];
            op.perm = next;
            op.sign = -op.sign;
          }
          if (use_ex) {
            std::vector<int> next(4);
            for (int i = 0; i < 4; ++i) next[i] = op.perm[exchange[i]];
            op.perm = next;
          }
          out.push_back(op);
        }
      }
    }
    return out;
  }();
  return ops;
}

// Full symmetry group for degree d: per-factor ops combined with factor
// permutations. Cached per degree.
const std::vector<SlotOp>& word_group(int degree) {
  static std::map<int, std::vector<SlotOp>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(degree);
  if (it != cache.end()) return it->second;

  std::vector<SlotOp> group;
  std::vector<int> factor_perm(degree);
  for (int i = 0; i < degree; ++i) factor_perm[i] = i;
  std::vector<int> op_choice(degree, 0);
  const auto& local = factor_ops();
  do {
    // Iterate over all per-factor op choices for this factor permutation.
    std::fill(op_choice.begin(), op_choice.end(), 0);
    while (true) {
      SlotOp op;
      op.perm.resize(4 * degree);
      op.sign = 1;
      for (int f = 0; f < degree; ++f) {
        const SlotOp& lo = local[op_choice[f]];
        for (int s = 0; s < 4; ++s) op.perm[4 * f + s] = 4 * factor_perm[f] + lo.perm[s];
        op.sign *= lo.sign;
      }
      group.push_back(std::move(op));
      int carry = 0;
      while (carry < degree) {
        if (++op_choice[carry] < static_cast<int>(local.size())) break;
        op_choice[carry] = 0;
        ++carry;
      }
      if (carry == degree) break;
    }
  } while (std::next_permutation(factor_perm.begin(), factor_perm.end()));
  return cache.emplace(degree, std::move(group)).first->second;
}

void apply_op(const SlotOp& op, const std::vector<int>& matching, std::vector<int>& out) {
  out.resize(matching.size());
  for (std::size_t s = 0; s < matching.size(); ++s) out[op.perm[s]] = op.perm[matching[s]];
}

// Canonical representative: lexicographic minimum over the group; empty if a
// sign-reversing op stabilizes the matching (the contraction vanishes).
std::vector<int> canonical_of(int degree, const std::vector<int>& matching) {
  const auto& group = word_group(degree);
  std::vector<int> best = matching;
  std::vector<int> mapped;
  for (const SlotOp& op : group) {
    apply_op(op, matching, mapped);
    if (op.sign < 0 && mapped == matching) return {};
    if (mapped < best) best = mapped;
  }
  return best;
}

// True iff no group op maps `matching` strictly below itself and no
// sign-reversing op fixes it. Early exits make this cheap for non-canonical
// matchings, which dominate the enumeration.
bool is_canonical_nonzero(int degree, const std::vector<int>& matching,
                          std::vector<int>& scratch) {
  const auto& group = word_group(degree);
  for (const SlotOp& op : group) {
    apply_op(op, matching, scratch);
    if (scratch < matching) return false;
    if (op.sign < 0 && scratch == matching) return false;
  }
  return true;
}

void enumerate_matchings(std::vector<int>& partner, int slots,
                         const std::function<void(const std::vector<int>&)>& emit) {
  int first = -1;
  for (int s = 0; s < slots; ++s) {
    if (partner[s] < 0) {
      first = s;
      break;
    }
  }
  if (first < 0) {
    emit(partner);
    return;
  }
  for (int t = first + 1; t < slots; ++t) {
    if (partner[t] >= 0) continue;
    partner[first] = t;
    partner[t] = first;
    enumerate_matchings(partner, slots, emit);
    partner[first] = -1;
    partner[t] = -1;
  }
}

std::string pairing_text(const std::vector<int>& pairing) {
  std::string out;
  for (int s = 0; s < static_cast<int>(pairing.size()); ++s) {
    if (pairing[s] > s) {
      out += "(" + std::to_string(s) + "-" + std::to_string(pairing[s]) + ")";
    }
  }
  return out;
}

const std::vector<std::vector<int>>& pure_words_for_degree(int degree) {
  static std::map<int, std::vector<std::vector<int>>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(degree);
  if (it != cache.end()) return it->second;

  std::vector<std::vector<int>> words;
  std::vector<int> partner(static_cast<std::size_t>(4 * degree), -1);
  std::vector<int> scratch;
  enumerate_matchings(partner, 4 * degree, [&words, &scratch, degree](const std::vector<int>& m) {
    if (is_canonical_nonzero(degree, m, scratch)) words.push_back(m);
  });
  std::sort(words.begin(), words.end());
  return cache.emplace(degree, std::move(words)).first->second;
}

double evaluate_pure_word(const ContractionWord& word, const Tensor& riemann,
                          const Eigen::VectorXi& metric, double* imag_residual) {
  const int n = riemann.shape.dimension;
  const int slots = word.slot_count();
  std::vector<std::pair<int, int>> pairs;
  for (int s = 0; s < slots; ++s) {
    if (word.pairing[s] > s) pairs.emplace_back(s, word.pairing[s]);
  }
  const int np = static_cast<int>(pairs.size());
  std::vector<int> slot_val(static_cast<std::size_t>(slots), 0);
  std::vector<int> assign(static_cast<std::size_t>(np), 0);
  Complex acc(0.0, 0.0);
  while (true) {
    int sign = 1;
    for (int p = 0; p < np; ++p) {
      slot_val[pairs[p].first] = assign[p];
      slot_val[pairs[p].second] = assign[p];
      sign *= metric[assign[p]];
    }
    Complex term(static_cast<double>(sign), 0.0);
    for (int f = 0; f < word.degree; ++f) {
      term *= riemann.comps[riemann.flat_index(0, slot_val.data() + 4 * f, 4)];
      if (term == Complex(0.0, 0.0)) break;
    }
    acc += term;
    int carry = 0;
    while (carry < np) {
      if (++assign[carry] < n) break;
      assign[carry] = 0;
      ++carry;
    }
    if (carry == np) break;
  }
  *imag_residual = std::max(*imag_residual, std::abs(acc.imag()));
  return acc.real();
}

double evaluate_derivative_word(const ContractionWord& word, const Tensor& deriv,
                                const Eigen::VectorXi& metric, double* imag_residual) {
  const int slots = word.slot_count();
  const int n = deriv.shape.dimension;
  std::vector<std::pair<int, int>> pairs;
  for (int s = 0; s < slots; ++s) {
    if (word.pairing[s] > s) pairs.emplace_back(s, word.pairing[s]);
  }
  const int np = static_cast<int>(pairs.size());
  std::vector<int> slot_val(static_cast<std::size_t>(slots), 0);
  std::vector<int> assign(static_cast<std::size_t>(np), 0);
  Complex acc(0.0, 0.0);
  while (true) {
    int sign = 1;
    for (int p = 0; p < np; ++p) {
      slot_val[pairs[p].first] = assign[p];
      slot_val[pairs[p].second] = assign[p];
      sign *= metric[assign[p]];
    }
    acc += static_cast<double>(sign) * deriv.comps[deriv.flat_index(0, slot_val.data(), slots)];
    int carry = 0;
    while (carry < np) {
      if (++assign[carry] < n) break;
      assign[carry] = 0;
      ++carry;
    }
    if (carry == np) break;
  }
  *imag_residual = std::max(*imag_residual, std::abs(acc.imag()));
  return acc.real();
}

}  // namespace

std::vector<int> canonical_pairing(int degree, const std::vector<int>& pairing) {
  return canonical_of(degree, pairing);
}

std::vector<ContractionWord> generate_contractions(int max_degree,
                                                   const std::vector<int>& derivative_orders) {
  if (max_degree < 1) throw ContractError("generate_contractions: max_degree must be >= 1");
  if (max_degree > 4) {
    throw ContractError("generate_contractions: max_degree > 4 refused (combinatorial blowup)");
  }
  std::vector<ContractionWord> out;
  static const char* kNames[] = {"", "R", "R.R", "R.R.R", "R.R.R.R"};
  for (int d = 1; d <= max_degree; ++d) {
    const auto& pure = pure_words_for_degree(d);
    int k = 0;
    for (const auto& pairing : pure) {
      ContractionWord w;
      w.degree = d;
      w.derivative_order = 0;
      w.pairing = pairing;
      w.label = std::string(kNames[d]) + " #" + std::to_string(++k) + " " + pairing_text(pairing);
      out.push_back(std::move(w));
    }
  }
  for (int l : derivative_orders) {
    if (l < 1 || (4 + l) % 2 != 0) continue;  // odd total valence has no full contraction
    // Derivative indices traced pairwise in order, Riemann tail traced (a,c)(b,d).
    ContractionWord w;
    w.degree = 1;
    w.derivative_order = l;
    w.pairing.assign(static_cast<std::size_t>(4 + l), -1);
    for (int s = 0; s + 1 < l; s += 2) {
      w.pairing[s] = s + 1;
      w.pairing[s + 1] = s;
    }
    w.pairing[l + 0] = l + 2;
    w.pairing[l + 2] = l + 0;
    w.pairing[l + 1] = l + 3;
    w.pairing[l + 3] = l + 1;
    w.label = "grad^" + std::to_string(l) + " R trace " + pairing_text(w.pairing);
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<ContractionWord> generate_contractions(int max_degree, const CurvatureBundle& bundle) {
  std::vector<int> orders;
  for (std::size_t i = 0; i < bundle.derivatives.size(); ++i) {
    orders.push_back(static_cast<int>(i) + 1);
  }
  return generate_contractions(max_degree, orders);
}

InvariantVector evaluate_invariants(const CurvatureBundle& bundle,
                                    const std::vector<ContractionWord>& words) {
  return evaluate_invariants_on(bundle.riemann, bundle.derivatives, bundle.metric.metric_diag,
                                words);
}

InvariantVector evaluate_invariants_on(const Tensor& riemann_like,
                                       const std::vector<Tensor>& derivatives,
                                       const Eigen::VectorXi& metric_diag,
                                       const std::vector<ContractionWord>& words) {
  InvariantVector out;
  out.words = words;
  out.values.reserve(words.size());
  double imag_residual = 0.0;
  double scale = std::max(1.0, riemann_like.max_abs());
  for (const ContractionWord& w : words) {
    if (w.derivative_order == 0) {
      out.values.push_back(evaluate_pure_word(w, riemann_like, metric_diag, &imag_residual));
    } else {
      const std::size_t di = static_cast<std::size_t>(w.derivative_order - 1);
      if (di >= derivatives.size()) {
        throw DimensionError("invariant word for derivative order " +
                             std::to_string(w.derivative_order) + " but no such tensor");
      }
      if (derivatives[di].shape.blocks.at(0).rank() != w.slot_count()) {
        throw DimensionError("derivative tensor valence does not match word");
      }
      out.values.push_back(
          evaluate_derivative_word(w, derivatives[di], metric_diag, &imag_residual));
      scale = std::max(scale, derivatives[di].max_abs());
    }
  }
  if (imag_residual > 1e-12 * std::max(1.0, scale)) {
    throw NumericError("invariant evaluation produced a complex residue " +
                       std::to_string(imag_residual));
  }
  return out;
}

bool is_vsi(const CurvatureBundle& bundle, int max_degree, double tol) {
  const InvariantVector inv =
      evaluate_invariants(bundle, generate_contractions(max_degree, bundle));
  for (double v : inv.values) {
    if (std::abs(v) >= tol) return false;
  }
  return true;
}

}  // namespace wick
