#include "rtm/core/sparse.hpp"

#include <algorithm>
#include <cassert>

namespace rtm {

int CsrMatrix::find(int i, int j) const {
    const int b = row_ptr[static_cast<std::size_t>(i)];
    const int e = row_ptr[static_cast<std::size_t>(i) + 1];
    auto first = col.begin() + b;
    auto last = col.begin() + e;
    auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j) return -1;
    return static_cast<int>(it - col.begin());
}

double& CsrMatrix::at(int i, int j) {
    int k = find(i, j);
    assert(k >= 0 && "entry outside CSR pattern");
    return val[static_cast<std::size_t>(k)];
}

std::vector<double> CsrMatrix::diagonal() const {
    std::vector<double> d(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        int k = find(i, i);
        if (k >= 0) d[static_cast<std::size_t>(i)] = val[static_cast<std::size_t>(k)];
    }
    return d;
}

void CsrPatternBuilder::add_clique(const int* nodes, int count) {
    for (int a = 0; a < count; ++a) {
        auto& row = adjacency_[static_cast<std::size_t>(nodes[a])];
        for (int b = 0; b < count; ++b) row.push_back(nodes[b]);
    }
}

CsrMatrix CsrPatternBuilder::build() const {
    CsrMatrix m;
    m.n = static_cast<int>(adjacency_.size());
    m.row_ptr.resize(static_cast<std::size_t>(m.n) + 1, 0);
    std::vector<std::vector<int>> rows(adjacency_.size());
    for (std::size_t i = 0; i < adjacency_.size(); ++i) {
        rows[i] = adjacency_[i];
        std::sort(rows[i].begin(), rows[i].end());
        rows[i].erase(std::unique(rows[i].begin(), rows[i].end()), rows[i].end());
        m.row_ptr[i + 1] = m.row_ptr[i] + static_cast<int>(rows[i].size());
    }
    m.col.reserve(static_cast<std::size_t>(m.nnz()));
    for (auto& r : rows) m.col.insert(m.col.end(), r.begin(), r.end());
    m.val.assign(m.col.size(), 0.0);
    return m;
}

namespace kernels {

namespace serial {
void spmv(const CsrMatrix& a, const double* x, double* y) {
    for (int i = 0; i < a.n; ++i) {
        double s = 0.0;
        for (int k = a.row_ptr[static_cast<std::size_t>(i)];
             k < a.row_ptr[static_cast<std::size_t>(i) + 1]; ++k) {
            s += a.val[static_cast<std::size_t>(k)] * x[a.col[static_cast<std::size_t>(k)]];
        }
        y[i] = s;
    }
}
}  // namespace serial

void spmv(const CsrMatrix& a, const double* x, double* y) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (a.n > 2048)
#endif
    for (int i = 0; i < a.n; ++i) {
        double s = 0.0;
        for (int k = a.row_ptr[static_cast<std::size_t>(i)];
             k < a.row_ptr[static_cast<std::size_t>(i) + 1]; ++k) {
            s += a.val[static_cast<std::size_t>(k)] * x[a.col[static_cast<std::size_t>(k)]];
        }
        y[i] = s;
    }
}

}  // namespace kernels

}  // namespace rtm
