#include "juribert/tensor.hpp"

#include <cassert>

namespace juribert {

void matmul_acc(const Tensor& a, const Tensor& b, Tensor& out) {
    assert(a.cols == b.rows && out.rows == a.rows && out.cols == b.cols);
    const int n = a.rows;
    const int k = a.cols;
    const int m = b.cols;
    for (int i = 0; i < n; ++i) {
        const real_t* arow = a.data.data() + static_cast<size_t>(i) * k;
        real_t* orow = out.data.data() + static_cast<size_t>(i) * m;
        for (int p = 0; p < k; ++p) {
            const real_t av = arow[p];
            if (av == 0) {
                continue;
            }
            const real_t* brow = b.data.data() + static_cast<size_t>(p) * m;
            for (int j = 0; j < m; ++j) {
                orow[j] += av * brow[j];
            }
        }
    }
}

void matmul_nt_acc(const Tensor& a, const Tensor& b, Tensor& out) {
    assert(a.cols == b.cols && out.rows == a.rows && out.cols == b.rows);
    const int n = a.rows;
    const int k = a.cols;
    const int m = b.rows;
    for (int i = 0; i < n; ++i) {
        const real_t* arow = a.data.data() + static_cast<size_t>(i) * k;
        real_t* orow = out.data.data() + static_cast<size_t>(i) * m;
        for (int j = 0; j < m; ++j) {
            const real_t* brow = b.data.data() + static_cast<size_t>(j) * k;
            real_t sum = 0;
            for (int p = 0; p < k; ++p) {
                sum += arow[p] * brow[p];
            }
            orow[j] += sum;
        }
    }
}

void matmul_tn_acc(const Tensor& a, const Tensor& b, Tensor& out) {
    assert(a.rows == b.rows && out.rows == a.cols && out.cols == b.cols);
    const int n = a.rows;
    const int k = a.cols;
    const int m = b.cols;
    for (int p = 0; p < n; ++p) {
        const real_t* arow = a.data.data() + static_cast<size_t>(p) * k;
        const real_t* brow = b.data.data() + static_cast<size_t>(p) * m;
        for (int i = 0; i < k; ++i) {
            const real_t av = arow[i];
            if (av == 0) {
                continue;
            }
            real_t* orow = out.data.data() + static_cast<size_t>(i) * m;
            for (int j = 0; j < m; ++j) {
                orow[j] += av * brow[j];
            }
        }
    }
}

Tensor matmul(const Tensor& a, const Tensor& b) {
    Tensor out(a.rows, b.cols);
    matmul_acc(a, b, out);
    return out;
}

Tensor matmul_nt(const Tensor& a, const Tensor& b) {
    Tensor out(a.rows, b.rows);
    matmul_nt_acc(a, b, out);
    return out;
}

}  // namespace juribert
