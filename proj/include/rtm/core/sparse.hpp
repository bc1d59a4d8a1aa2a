#pragma once

#include <cstddef>
#include <vector>

namespace rtm {

// Symmetric sparse matrix in CSR form; both triangles stored so spmv is a plain
// row sweep. Column indices within a row are sorted ascending.
struct CsrMatrix {
    int n = 0;
    std::vector<int> row_ptr;  // size n+1
    std::vector<int> col;      // size nnz
    std::vector<double> val;   // size nnz

    int nnz() const { return row_ptr.empty() ? 0 : row_ptr[static_cast<std::size_t>(n)]; }

    // Index into val for entry (i, j); -1 when (i, j) is not in the pattern.
    int find(int i, int j) const;

    double& at(int i, int j);  // aborts via assert when outside the pattern

    std::vector<double> diagonal() const;
};

// Builds the CSR pattern (values zeroed) from undirected adjacency cliques:
// each clique (e.g. the 4 nodes of a tetrahedron) contributes all pairwise
// couplings including the diagonal.
class CsrPatternBuilder {
public:
    explicit CsrPatternBuilder(int n) : adjacency_(static_cast<std::size_t>(n)) {}

    void add_clique(const int* nodes, int count);

    CsrMatrix build() const;

private:
    std::vector<std::vector<int>> adjacency_;
};

namespace kernels {

namespace serial {
void spmv(const CsrMatrix& a, const double* x, double* y);
}

// y = A x, parallel over rows.
void spmv(const CsrMatrix& a, const double* x, double* y);

inline void spmv(const CsrMatrix& a, const std::vector<double>& x, std::vector<double>& y) {
    y.resize(x.size());
    spmv(a, x.data(), y.data());
}

}  // namespace kernels

}  // namespace rtm
