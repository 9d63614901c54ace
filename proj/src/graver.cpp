#include "nfold/graver.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <set>

#include "nfold/parallel.hpp"

namespace nfold {

GraverBasis GraverBasis::from_elements(int ambient_dim, std::vector<IntVec> elements) {
  for (const auto& e : elements) {
    if (static_cast<int>(e.size()) != ambient_dim)
      throw dimension_error("GraverBasis: element length != ambient_dim");
    if (is_zero(e)) throw argument_error("GraverBasis: zero element");
  }
  std::sort(elements.begin(), elements.end(), lex_less);
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  GraverBasis b(ambient_dim);
  b.elements_ = std::move(elements);
  return b;
}

std::string GraverBasis::to_json() const {
  std::string s = "{\"ambient_dim\": " + std::to_string(ambient_dim_) + ", \"elements\": [";
  for (std::size_t k = 0; k < elements_.size(); ++k) {
    if (k) s += ", ";
    s += "[";
    for (std::size_t i = 0; i < elements_[k].size(); ++i) {
      if (i) s += ", ";
      s += elements_[k][i].get_str();
    }
    s += "]";
  }
  s += "]}";
  return s;
}

namespace {

// Sign-support masks over the first 64 coordinates. Subset containment of the
// masks is necessary for h to be conformal to v, which filters most candidate
// reducers before any big-integer comparison.
struct SignMask {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
};

SignMask mask_of(const IntVec& v) {
  SignMask m;
  const std::size_t n = std::min<std::size_t>(v.size(), 64);
  for (std::size_t i = 0; i < n; ++i) {
    const int s = sgn(v[i]);
    if (s > 0) m.pos |= std::uint64_t(1) << i;
    if (s < 0) m.neg |= std::uint64_t(1) << i;
  }
  return m;
}

bool mask_subset(const SignMask& h, const SignMask& v) {
  return (h.pos & ~v.pos) == 0 && (h.neg & ~v.neg) == 0;
}

struct MaskedVec {
  IntVec v;
  SignMask mask;

  explicit MaskedVec(IntVec vec) : v(std::move(vec)), mask(mask_of(v)) {}
};

// Subtracts conformal set elements from v until none applies. Subtracting the
// maximal multiple of h at once is equivalent to repeated single subtraction:
// every intermediate point still dominates h conformally.
void conformal_reduce(IntVec& v, const std::vector<MaskedVec>& set) {
  SignMask vm = mask_of(v);
  bool changed = true;
  while (changed) {
    if (is_zero(v)) return;
    changed = false;
    for (const auto& entry : set) {
      if (!mask_subset(entry.mask, vm)) continue;
      const IntVec& h = entry.v;
      if (!conformal_leq(h, v)) continue;
      Int lambda = 0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (sgn(h[i]) == 0) continue;
        Int ratio = abs_int(v[i]) / abs_int(h[i]);
        if (lambda == 0 || ratio < lambda) lambda = ratio;
      }
      if (lambda == 0) lambda = 1;  // h == 0 excluded by construction
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= lambda * h[i];
      vm = mask_of(v);
      changed = true;
      break;
    }
  }
}

bool sign_compatible(const IntVec& f, const IntVec& g) {
  for (std::size_t i = 0; i < f.size(); ++i)
    if (sgn(f[i]) * sgn(g[i]) < 0) return false;
  return true;
}

}  // namespace

GraverBasis graver_basis(const IntMatrix& a, const ComputeOptions& opts) {
  const int n = a.cols();
  std::vector<IntVec> kernel = lattice_kernel_basis(a);
  if (kernel.empty()) return GraverBasis(n);

  std::vector<IntVec> gens;
  gens.reserve(2 * kernel.size());
  for (const auto& b : kernel) {
    gens.push_back(b);
    gens.push_back(negate(b));
  }
  std::sort(gens.begin(), gens.end(), lex_less);
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  std::vector<MaskedVec> g;
  std::deque<std::pair<std::size_t, std::size_t>> worklist;
  auto insert = [&](IntVec v) {
    const std::size_t idx = g.size();
    for (std::size_t k = 0; k < idx; ++k)
      if (!sign_compatible(g[k].v, v)) worklist.emplace_back(k, idx);
    g.emplace_back(std::move(v));
  };

  for (auto& v : gens) {
    conformal_reduce(v, g);
    if (!is_zero(v)) insert(std::move(v));
  }

  const std::size_t batch =
      opts.threads > 1 ? static_cast<std::size_t>(opts.threads) * 64 : 1;
  std::vector<IntVec> candidates;
  while (!worklist.empty()) {
    const std::size_t take = std::min(batch, worklist.size());
    candidates.assign(take, IntVec{});
    std::vector<std::pair<std::size_t, std::size_t>> pairs(worklist.begin(),
                                                           worklist.begin() + take);
    worklist.erase(worklist.begin(), worklist.begin() + take);
    parallel_for(opts.threads, take, [&](std::size_t i) {
      IntVec v = add(g[pairs[i].first].v, g[pairs[i].second].v);
      conformal_reduce(v, g);
      candidates[i] = std::move(v);
    });
    for (auto& v : candidates) {
      if (is_zero(v)) continue;
      conformal_reduce(v, g);  // set may have grown within the batch
      if (is_zero(v)) continue;
      IntVec neg = negate(v);
      insert(std::move(v));
      insert(std::move(neg));
    }
  }

  // Minimization pass: drop anything conformally dominated by another element.
  // Output is independent of the processing order above.
  std::vector<char> keep(g.size(), 1);
  parallel_for(opts.threads, g.size(), [&](std::size_t i) {
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (k == i || g[k].v == g[i].v) continue;
      if (!mask_subset(g[k].mask, g[i].mask)) continue;
      if (conformal_leq(g[k].v, g[i].v)) {
        keep[i] = 0;
        return;
      }
    }
  });
  std::vector<IntVec> minimal;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (keep[i]) minimal.push_back(std::move(g[i].v));
  return GraverBasis::from_elements(n, std::move(minimal));
}

IntMatrix nfold_matrix(const Bimatrix& a, int n) {
  if (n < 1) throw argument_error("nfold_matrix: n must be >= 1");
  const int r = a.r(), s = a.s(), t = a.t();
  IntMatrix m(r + n * s, n * t);
  for (int k = 0; k < n; ++k) {
    if (r > 0) m.set_block(0, k * t, a.a1);
    if (s > 0) m.set_block(r + k * s, k * t, a.a2);
  }
  return m;
}

std::vector<IntVec> n_liftings(const IntVec& y, int m, int n, int t) {
  if (n < m) throw argument_error("n_liftings: n < brick count");
  if (y.size() != static_cast<std::size_t>(m) * t)
    throw dimension_error("n_liftings: vector is not m bricks of width t");
  std::vector<IntVec> out;
  std::vector<int> slots(m);
  for (int i = 0; i < m; ++i) slots[i] = i;
  while (true) {
    IntVec z(static_cast<std::size_t>(n) * t, Int(0));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < t; ++j) z[static_cast<std::size_t>(slots[i]) * t + j] = y[static_cast<std::size_t>(i) * t + j];
    out.push_back(std::move(z));
    // next m-combination of {0..n-1}
    int i = m - 1;
    while (i >= 0 && slots[i] == n - m + i) --i;
    if (i < 0) break;
    ++slots[i];
    for (int k = i + 1; k < m; ++k) slots[k] = slots[k - 1] + 1;
  }
  return out;
}

int brick_type(const IntVec& x, int t) {
  if (t < 1 || x.size() % t != 0) throw dimension_error("brick_type: width does not divide length");
  int count = 0;
  for (std::size_t k = 0; k < x.size() / t; ++k) {
    for (int j = 0; j < t; ++j)
      if (sgn(x[k * t + j]) != 0) {
        ++count;
        break;
      }
  }
  return count;
}

std::vector<IntVec> minimal_nonneg_kernel(const IntMatrix& m, const ComputeOptions& opts) {
  const int p = m.cols();
  if (p == 0) return {};
  std::vector<IntVec> cols(p);
  for (int j = 0; j < p; ++j) cols[j] = m.col(j);

  using Multiplicity = std::vector<unsigned>;
  struct State {
    Multiplicity v;
    IntVec residual;
  };
  auto dominates = [](const Multiplicity& x, const Multiplicity& b) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] < b[i]) return false;
    return true;
  };

  std::vector<Multiplicity> solutions;
  std::vector<IntVec> solution_vecs;
  std::vector<State> frontier;
  for (int j = 0; j < p; ++j) {
    State st{Multiplicity(p, 0), cols[j]};
    st.v[j] = 1;
    frontier.push_back(std::move(st));
  }

  while (!frontier.empty()) {
    // Solutions first, smallest coordinate-sum levels are reached earlier, so
    // a newly found solution can never strictly dominate a later one.
    std::vector<State> expand;
    for (auto& st : frontier) {
      if (is_zero(st.residual)) {
        bool fresh = true;
        for (const auto& b : solutions)
          if (dominates(st.v, b)) {
            fresh = false;
            break;
          }
        if (fresh) {
          solutions.push_back(st.v);
          IntVec x(p);
          for (int j = 0; j < p; ++j) x[j] = static_cast<long>(st.v[j]);
          solution_vecs.push_back(std::move(x));
        }
      } else {
        expand.push_back(std::move(st));
      }
    }

    std::vector<std::vector<State>> children(expand.size());
    parallel_for(opts.threads, expand.size(), [&](std::size_t i) {
      const State& st = expand[i];
      for (int j = 0; j < p; ++j) {
        // Contejean-Devie: only step toward the current residual.
        if (dot(st.residual, cols[j]) >= 0) continue;
        State child{st.v, add(st.residual, cols[j])};
        child.v[j] += 1;
        bool pruned = false;
        for (const auto& b : solutions)
          if (dominates(child.v, b)) {
            pruned = true;
            break;
          }
        if (!pruned) children[i].push_back(std::move(child));
      }
    });

    std::set<Multiplicity> seen;
    frontier.clear();
    for (auto& bucket : children)
      for (auto& child : bucket)
        if (seen.insert(child.v).second) frontier.push_back(std::move(child));
  }

  std::sort(solution_vecs.begin(), solution_vecs.end(), lex_less);
  return solution_vecs;
}

Int graver_complexity_bound(const Bimatrix& a, const ComputeOptions& opts) {
  GraverBasis g2 = graver_basis(a.a2.rows() > 0 ? a.a2 : IntMatrix(0, a.t()), opts);
  if (g2.empty()) return 0;
  IntMatrix g2_matrix = IntMatrix::from_cols(g2.elements());
  IntMatrix m = a.r() > 0 ? a.a1.mul(g2_matrix)
                          : IntMatrix(0, static_cast<int>(g2.size()));
  Int best = 0;
  for (const auto& v : minimal_nonneg_kernel(m, opts)) {
    Int s = 0;
    for (const auto& vi : v) s += vi;
    if (s > best) best = s;
  }
  return best;
}

Int graver_complexity_exact(const Bimatrix& a, int n_limit, const ComputeOptions& opts) {
  Int best = 0;
  for (int n = 1; n <= n_limit; ++n) {
    GraverBasis g = graver_basis(nfold_matrix(a, n), opts);
    for (const auto& e : g.elements()) {
      Int ty = brick_type(e, a.t());
      if (ty > best) best = ty;
    }
  }
  return best;
}

namespace {

struct NfoldCacheEntry {
  bool has_bound = false;
  Int bound;
  std::map<int, std::shared_ptr<const GraverBasis>> bases;  // directly computed G(A^(n))
};

std::mutex cache_mutex;
std::map<std::string, NfoldCacheEntry>& nfold_cache() {
  static std::map<std::string, NfoldCacheEntry> cache;
  return cache;
}

}  // namespace

void clear_nfold_cache() {
  std::lock_guard<std::mutex> lock(cache_mutex);
  nfold_cache().clear();
}

GraverBasis nfold_graver(const Bimatrix& a, int n, const ComputeOptions& opts) {
  if (n < 1) throw argument_error("nfold_graver: n must be >= 1");
  const int t = a.t();
  const std::string key = a.str();

  Int bound;
  bool have_bound = false;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = nfold_cache().find(key);
    if (it != nfold_cache().end() && it->second.has_bound) {
      bound = it->second.bound;
      have_bound = true;
    }
  }
  if (!have_bound) {
    Int computed = graver_complexity_bound(a, opts);  // idempotent, done unlocked
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto& entry = nfold_cache()[key];
    if (!entry.has_bound) {
      entry.bound = computed;
      entry.has_bound = true;
    }
    bound = entry.bound;
  }

  if (bound == 0) return GraverBasis(n * t);

  auto cached_direct = [&](int m) {
    std::shared_ptr<const GraverBasis> basis;
    {
      std::lock_guard<std::mutex> lock(cache_mutex);
      auto it = nfold_cache()[key].bases.find(m);
      if (it != nfold_cache()[key].bases.end()) basis = it->second;
    }
    if (!basis) {
      auto computed =
          std::make_shared<const GraverBasis>(graver_basis(nfold_matrix(a, m), opts));
      std::lock_guard<std::mutex> lock(cache_mutex);
      auto& slot = nfold_cache()[key].bases[m];
      if (!slot) slot = computed;
      basis = slot;
    }
    return basis;
  };

  if (Int(n) <= bound) return *cached_direct(n);

  const int g = static_cast<int>(bound.get_si());
  std::shared_ptr<const GraverBasis> base = cached_direct(g);
  std::vector<IntVec> lifted;
  for (const auto& y : base->elements())
    for (auto& z : n_liftings(y, g, n, t)) lifted.push_back(std::move(z));
  return GraverBasis::from_elements(n * t, std::move(lifted));
}

GraverBasis extended_graver(const Bimatrix& a, const Bimatrix& w, int n,
                            const ComputeOptions& opts) {
  if (a.t() != w.t()) throw dimension_error("extended_graver: A and W disagree on t");
  const int t = a.t(), r = a.r(), s = a.s(), p = w.r(), q = w.s();

  IntMatrix d1(r + p, t + p + q);
  if (r > 0) d1.set_block(0, 0, a.a1);
  if (p > 0) {
    d1.set_block(r, 0, w.a1);
    d1.set_block(r, t, IntMatrix::identity(p));
  }
  IntMatrix d2(s + q, t + p + q);
  if (s > 0) d2.set_block(0, 0, a.a2);
  if (q > 0) {
    d2.set_block(s, 0, w.a2);
    d2.set_block(s, t + p, IntMatrix::identity(q));
  }
  Bimatrix d(std::move(d1), std::move(d2));
  GraverBasis gd = nfold_graver(d, n, opts);

  const int bw = t + p + q;
  std::vector<IntVec> out;
  for (const auto& v : gd.elements()) {
    bool slack_free = true;
    for (int k = 1; k < n && slack_free; ++k)
      for (int i = 0; i < p; ++i)
        if (sgn(v[static_cast<std::size_t>(k) * bw + t + i]) != 0) {
          slack_free = false;
          break;
        }
    if (!slack_free) continue;
    IntVec e;
    e.reserve(static_cast<std::size_t>(n) * t + p + static_cast<std::size_t>(n) * q);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < t; ++i) e.push_back(v[static_cast<std::size_t>(k) * bw + i]);
    for (int i = 0; i < p; ++i) e.push_back(v[t + i]);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < q; ++i) e.push_back(v[static_cast<std::size_t>(k) * bw + t + p + i]);
    out.push_back(std::move(e));
  }
  return GraverBasis::from_elements(n * t + p + n * q, std::move(out));
}

IntMatrix incidence_matrix(const Graph& g) {
  IntMatrix d(g.vertices, static_cast<int>(g.edges.size()));
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    auto [from, to] = g.edges[e];
    if (from < 0 || from >= g.vertices || to < 0 || to >= g.vertices)
      throw argument_error("incidence_matrix: edge endpoint out of range");
    if (g.directed) {
      d(from, e) += 1;  // leaving
      d(to, e) -= 1;    // entering
    } else {
      d(from, e) = 1;
      d(to, e) = 1;
    }
  }
  return d;
}

Int graph_graver_complexity(const Graph& g, const ComputeOptions& opts) {
  if (g.edges.empty()) return 0;
  return graver_complexity_bound(boxminus(incidence_matrix(g)), opts);
}

}  // namespace nfold
