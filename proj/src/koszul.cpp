#include "simpson/koszul.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace simpson {

std::vector<Eigen::Index> FlatModule::stable_indices() const {
  std::vector<Eigen::Index> out;
  for (Eigen::Index i = 0; i < rank(); ++i)
    if (labels[i].stable) out.push_back(i);
  return out;
}

FlatModule FlatModule::plain(Eigen::Index rank, const std::string &prefix) {
  FlatModule m;
  for (Eigen::Index i = 0; i < rank; ++i) m.labels.push_back({prefix + std::to_string(i), true});
  return m;
}

SparseMat SparseMat::from_dense(const CycMat &m) {
  SparseMat out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) out.columns[j].emplace_back(i, m(i, j));
  return out;
}

CycMat SparseMat::to_dense(const ContextPtr &ctx) const {
  CycMat out = zero_matrix<CycElt>(ctx, rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (const auto &[i, v] : columns[j]) out(i, j) = v.bind(ctx);
  return out;
}

void SparseMat::add(Eigen::Index i, Eigen::Index j, const CycElt &v) {
  if (!v.is_zero()) columns[j].emplace_back(i, v);
}

void SparseMat::finalize() {
  for (auto &col : columns) {
    std::stable_sort(col.begin(), col.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    Column merged;
    for (auto &entry : col) {
      if (!merged.empty() && merged.back().first == entry.first)
        merged.back().second += entry.second;
      else
        merged.push_back(entry);
    }
    col.clear();
    for (auto &entry : merged)
      if (!entry.second.is_zero()) col.push_back(std::move(entry));
  }
}

std::size_t SparseMat::nonzeros() const {
  std::size_t n = 0;
  for (const auto &c : columns) n += c.size();
  return n;
}

SparseMat sparse_multiply(const SparseMat &a, const SparseMat &b) {
  if (a.cols != b.rows) throw std::invalid_argument("sparse_multiply: shape mismatch");
  SparseMat out(a.rows, b.cols);
  for (Eigen::Index j = 0; j < b.cols; ++j) {
    for (const auto &[k, bv] : b.columns[j])
      for (const auto &[i, av] : a.columns[k]) out.columns[j].emplace_back(i, av * bv);
  }
  out.finalize();
  return out;
}

bool sparse_equal(const SparseMat &a, const SparseMat &b) {
  if (a.rows != b.rows || a.cols != b.cols) return false;
  for (Eigen::Index j = 0; j < a.cols; ++j) {
    if (a.columns[j].size() != b.columns[j].size()) return false;
    for (std::size_t k = 0; k < a.columns[j].size(); ++k)
      if (a.columns[j][k].first != b.columns[j][k].first || a.columns[j][k].second != b.columns[j][k].second)
        return false;
  }
  return true;
}

std::vector<std::vector<int>> koszul_subsets(int d, int q) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << d); ++mask) {
    if (__builtin_popcount(mask) != q) continue;
    std::vector<int> s;
    for (int i = 0; i < d; ++i)
      if (mask & (1 << i)) s.push_back(i);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

KoszulComplex::KoszulComplex(ContextPtr ctx, FlatModule module, std::vector<SparseMat> operators,
                             bool project_stable)
    : ctx_(std::move(ctx)), module_(std::move(module)), ops_(std::move(operators)), project_stable_(project_stable) {
  if (project_stable_ && ops_.size() != 1)
    throw std::invalid_argument("stable projection is only defined for one operator");
  for (auto &op : ops_) {
    if (op.rows != module_.rank() || op.cols != module_.rank())
      throw std::invalid_argument("operator shape does not match the module");
    for (auto &col : op.columns)
      for (auto &entry : col) entry.second = entry.second.bind(ctx_);
    op.finalize();
  }
  for (std::size_t i = 0; i < ops_.size(); ++i)
    for (std::size_t j = i + 1; j < ops_.size(); ++j)
      if (!sparse_equal(sparse_multiply(ops_[i], ops_[j]), sparse_multiply(ops_[j], ops_[i])))
        throw Error("not a Koszul datum: operators " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                    " do not commute");
}

KoszulComplex::KoszulComplex(ContextPtr ctx, FlatModule module, const std::vector<CycMat> &operators,
                             bool project_stable)
    : KoszulComplex(std::move(ctx), std::move(module),
                    [&] {
                      std::vector<SparseMat> s;
                      for (const auto &m : operators) s.push_back(SparseMat::from_dense(m));
                      return s;
                    }(),
                    project_stable) {}

CycMat KoszulComplex::differential(int q) const {
  const int d = length();
  const Eigen::Index n = module_.rank();
  const auto src = koszul_subsets(d, q);
  const auto dst = koszul_subsets(d, q + 1);
  CycMat out = zero_matrix<CycElt>(ctx_, static_cast<Eigen::Index>(dst.size()) * n,
                                   static_cast<Eigen::Index>(src.size()) * n);
  for (std::size_t s = 0; s < src.size(); ++s)
    for (int i = 0; i < d; ++i) {
      if (std::find(src[s].begin(), src[s].end(), i) != src[s].end()) continue;
      std::vector<int> t = src[s];
      t.insert(std::upper_bound(t.begin(), t.end(), i), i);
      const auto row = std::find(dst.begin(), dst.end(), t) - dst.begin();
      const int before = static_cast<int>(std::count_if(src[s].begin(), src[s].end(), [&](int j) { return j < i; }));
      const CycElt sign(ctx_, before % 2 ? -1 : 1);
      for (Eigen::Index c = 0; c < n; ++c)
        for (const auto &[r, v] : ops_[i].columns[c]) out(row * n + r, s * n + c) = sign * v;
    }
  if (project_stable_ && q == 0) {
    const auto keep = module_.stable_indices();
    CycMat proj(static_cast<Eigen::Index>(keep.size()), out.cols());
    for (std::size_t r = 0; r < keep.size(); ++r) proj.row(r) = out.row(keep[r]);
    return proj;
  }
  return out;
}

KoszulComplex KoszulComplex::restrict(const std::vector<Eigen::Index> &coords) const {
  std::map<Eigen::Index, Eigen::Index> local;
  FlatModule sub;
  for (auto c : coords) {
    local.emplace(c, static_cast<Eigen::Index>(local.size()));
    sub.labels.push_back(module_.labels[c]);
  }
  std::vector<SparseMat> ops;
  for (const auto &op : ops_) {
    SparseMat s(sub.rank(), sub.rank());
    for (auto c : coords)
      for (const auto &[r, v] : op.columns[c]) {
        auto it = local.find(r);
        if (it == local.end()) throw std::invalid_argument("restriction to a non-invariant coordinate set");
        s.columns[local[c]].emplace_back(it->second, v);
      }
    ops.push_back(std::move(s));
  }
  return KoszulComplex(ctx_, std::move(sub), std::move(ops), project_stable_);
}

CohomologyReport koszul_cohomology_dense(const KoszulComplex &k) {
  const int d = k.length();
  const auto &ctx = k.context();
  std::vector<CycMat> diffs;
  for (int q = 0; q < d; ++q) diffs.push_back(k.differential(q));
  if (!k.project_stable())
    for (int q = 0; q + 1 < d; ++q) {
      const CycMat sq = multiply(diffs[q + 1], diffs[q]);
      for (Eigen::Index i = 0; i < sq.rows(); ++i)
        for (Eigen::Index j = 0; j < sq.cols(); ++j)
          if (!sq(i, j).is_zero()) throw Error("Koszul differential does not square to zero");
    }
  std::vector<SmithResult> smith;
  for (const auto &m : diffs) smith.push_back(smith_normal_form(m, ctx));

  CohomologyReport rep;
  rep.stable_only = k.project_stable();
  rep.blocks = 1;
  rep.distinct_blocks = 1;
  for (int q = 0; q <= d; ++q) {
    CohomologyDegree deg;
    deg.q = q;
    const Eigen::Index nq = q < d ? diffs[q].cols() : diffs[d - 1].rows();
    const int out_rank = q < d ? smith[q].rank : 0;
    const int in_rank = q > 0 ? smith[q - 1].rank : 0;
    deg.free_rank = static_cast<int>(nq) - out_rank - in_rank;
    if (q > 0) {
      for (const auto &v : smith[q - 1].divisors)
        if (v && *v > Rational(0)) deg.torsion.push_back(*v);
      deg.coercions = smith[q - 1].coercions;
    }
    if (q < d) deg.coercions += smith[q].coercions;
    std::sort(deg.torsion.begin(), deg.torsion.end());
    rep.degrees.push_back(std::move(deg));
  }
  return rep;
}

namespace {

struct UnionFind {
  std::vector<Eigen::Index> parent;
  explicit UnionFind(Eigen::Index n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  Eigen::Index find(Eigen::Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(Eigen::Index a, Eigen::Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::string block_key(const KoszulComplex &block) {
  std::ostringstream os;
  os << block.module().rank() << '|';
  for (const auto &l : block.module().labels) os << (l.stable ? 's' : 'b');
  for (const auto &op : block.operators()) {
    os << '#';
    for (Eigen::Index j = 0; j < op.cols; ++j) {
      os << ';';
      for (const auto &[i, v] : op.columns[j]) {
        os << i << ':';
        for (auto c : v.coefficients()) os << c << ',';
      }
    }
  }
  return os.str();
}

}  // namespace

CohomologyReport koszul_cohomology(const KoszulComplex &k) {
  const Eigen::Index n = k.module().rank();
  UnionFind uf(n);
  for (const auto &op : k.operators())
    for (Eigen::Index j = 0; j < op.cols; ++j)
      for (const auto &[i, v] : op.columns[j]) uf.unite(i, j);
  std::map<Eigen::Index, std::vector<Eigen::Index>> comps;
  for (Eigen::Index i = 0; i < n; ++i) comps[uf.find(i)].push_back(i);

  std::map<std::string, CohomologyReport> cache;
  CohomologyReport total;
  total.stable_only = k.project_stable();
  for (int q = 0; q <= k.length(); ++q) total.degrees.push_back(CohomologyDegree{q, 0, {}, 0});
  for (const auto &[root, coords] : comps) {
    const KoszulComplex block = k.restrict(coords);
    const std::string key = block_key(block);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, koszul_cohomology_dense(block)).first;
    for (int q = 0; q <= k.length(); ++q) {
      auto &dst = total.degrees[q];
      const auto &src = it->second.degrees[q];
      dst.free_rank += src.free_rank;
      dst.coercions += src.coercions;
      dst.torsion.insert(dst.torsion.end(), src.torsion.begin(), src.torsion.end());
    }
    ++total.blocks;
  }
  total.distinct_blocks = static_cast<int>(cache.size());
  for (auto &deg : total.degrees) std::sort(deg.torsion.begin(), deg.torsion.end());
  return total;
}

}  // namespace simpson
