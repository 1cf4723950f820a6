#pragma once

#include <cstdint>
#include <vector>

#include "oscmax/geometry.hpp"

namespace oscmax {

struct ContentParams {
    double beta = 1.0;  // 0 < beta <= dim; beta == dim is Lebesgue mode
};

void validate_content_params(const ContentParams& p, int dim);

/// Set of cells of a base domain, bit per cell.
struct CellSet {
    BaseDomain domain;
    std::vector<std::uint8_t> mask;

    CellSet() = default;
    explicit CellSet(const BaseDomain& d) : domain(d), mask(static_cast<std::size_t>(d.total_cells()), 0) {}

    static CellSet from_indices(const BaseDomain& d, const std::vector<std::int64_t>& cells);
    std::int64_t count() const;
    std::vector<std::int64_t> indices() const;
};

struct ContentResult {
    double value = 0.0;
    std::vector<DyadicCube> cover;  // minimizing antichain, coarsest on ties
};

/// Incremental bottom-up cover optimizer over the domain's dyadic tree.
/// Inserting cells in any order maintains, per node, the cheapest dyadic cover
/// of the inserted cells below it: min(side^beta, sum over children).
/// Re-inserting a cell is a no-op. clear() is O(touched nodes).
class ContentTree {
  public:
    ContentTree(const BaseDomain& domain, double beta);

    void insert(std::int64_t cell_index);
    double total() const { return value_[0][0]; }
    void clear();

    /// Walks the tree extracting the optimal antichain (ties toward the coarser cube).
    std::vector<DyadicCube> extract_cover() const;

    const BaseDomain& domain() const { return domain_; }

  private:
    friend struct ContentTreeTestAccess;
    BaseDomain domain_;
    double beta_;
    std::vector<std::vector<double>> value_;  // per depth 0..m, row-major node arrays
    std::vector<double> self_cost_;           // side^beta per depth
    std::vector<std::pair<int, std::int64_t>> touched_;
    std::vector<std::uint8_t> leaf_in_;

    void extract_rec(int depth, std::int64_t flat, std::vector<DyadicCube>& out) const;
};

/// Exact dyadic Hausdorff content of a cell set, with a minimizing cover.
ContentResult content(const CellSet& e, const ContentParams& params);

/// Test oracle: enumerates every dyadic antichain cover of E inside the root and
/// takes the cheapest. Exponential; requires 2^{dim*m} <= 64 cells and respects
/// an explicit cover budget.
double content_brute(const CellSet& e, const ContentParams& params, std::uint64_t cover_budget = 10000000ull);

/// Content of an arbitrary finite set of lattice cells at a given dyadic level
/// (cells may lie outside any particular root, including negative coordinates).
/// Runs the same bottom-up optimization on the forest of occupied nodes.
double lattice_content(int dim, int cell_level, const std::vector<Coord>& cells, double beta);

}  // namespace oscmax
