#pragma once

#include "simpson/smith.hpp"

#include <string>
#include <vector>

namespace simpson {

/// Coordinates of a truncated module flattened to (O_{K_n}/p^N)^rank.
struct FlatModule {
  struct Label {
    std::string name;
    bool stable = true;  // false for coordinates next to the degree cutoff
  };
  std::vector<Label> labels;

  Eigen::Index rank() const { return static_cast<Eigen::Index>(labels.size()); }
  std::vector<Eigen::Index> stable_indices() const;
  static FlatModule plain(Eigen::Index rank, const std::string &prefix = "e");
};

/// Column-sparse matrix; used for operators on large flattened modules.
struct SparseMat {
  using Column = std::vector<std::pair<Eigen::Index, CycElt>>;  // sorted by row

  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::vector<Column> columns;

  SparseMat() = default;
  SparseMat(Eigen::Index r, Eigen::Index c) : rows(r), cols(c), columns(c) {}
  static SparseMat from_dense(const CycMat &m);
  CycMat to_dense(const ContextPtr &ctx) const;
  /// Adds v at (i, j); entries are merged and zeros dropped by finalize().
  void add(Eigen::Index i, Eigen::Index j, const CycElt &v);
  void finalize();
  std::size_t nonzeros() const;
};

SparseMat sparse_multiply(const SparseMat &a, const SparseMat &b);
bool sparse_equal(const SparseMat &a, const SparseMat &b);

/// K(M; f_1, ..., f_d) for pairwise commuting endomorphisms f_i (matrices
/// acting on column vectors). With project_stable (d = 1 only) the single
/// differential keeps only the stable output coordinates.
class KoszulComplex {
public:
  KoszulComplex(ContextPtr ctx, FlatModule module, std::vector<SparseMat> operators, bool project_stable = false);
  KoszulComplex(ContextPtr ctx, FlatModule module, const std::vector<CycMat> &operators, bool project_stable = false);

  const ContextPtr &context() const { return ctx_; }
  const FlatModule &module() const { return module_; }
  const std::vector<SparseMat> &operators() const { return ops_; }
  int length() const { return static_cast<int>(ops_.size()); }
  bool project_stable() const { return project_stable_; }
  /// Differential d_q : C^q -> C^{q+1}, C^q = M^{binom(d, q)}. Dense.
  CycMat differential(int q) const;
  /// The same complex restricted to a set of coordinates all operators preserve.
  KoszulComplex restrict(const std::vector<Eigen::Index> &coords) const;

private:
  ContextPtr ctx_;
  FlatModule module_;
  std::vector<SparseMat> ops_;
  bool project_stable_;
};

struct CohomologyDegree {
  int q = 0;
  int free_rank = 0;
  std::vector<Rational> torsion;  // valuations of non-unit elementary divisors, sorted
  int coercions = 0;
  int twist = 0;  // Tate twist label, bookkeeping only

  Rational max_torsion() const { return torsion.empty() ? Rational(0) : torsion.back(); }
};

struct CohomologyReport {
  std::vector<CohomologyDegree> degrees;
  bool stable_only = false;
  int blocks = 0;        // independent blocks after splitting
  int distinct_blocks = 0;

  const CohomologyDegree &at(int q) const { return degrees.at(q); }
};

/// Cohomology of a Koszul complex, reported through elementary divisors.
/// The module is split into blocks that all operators preserve; identical
/// blocks are computed once.
CohomologyReport koszul_cohomology(const KoszulComplex &k);

/// Elementary divisors of a Koszul complex on one block; no splitting.
CohomologyReport koszul_cohomology_dense(const KoszulComplex &k);

/// Exterior-index subsets of {0..d-1} of size q, in lexicographic order.
std::vector<std::vector<int>> koszul_subsets(int d, int q);

}  // namespace simpson
