#pragma once

#include <cstddef>
#include <vector>

#include "juribert/common.hpp"

namespace juribert {

// Dense row-major matrix. Vectors are 1 x n.
struct Tensor {
    int rows = 0;
    int cols = 0;
    std::vector<real_t> data;

    Tensor() = default;
    Tensor(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * static_cast<size_t>(c), 0) {}

    real_t& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
    real_t at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }

    size_t size() const { return data.size(); }
    bool same_shape(const Tensor& other) const { return rows == other.rows && cols == other.cols; }

    void fill(real_t value) { std::fill(data.begin(), data.end(), value); }
};

// out += a * b
void matmul_acc(const Tensor& a, const Tensor& b, Tensor& out);
// out += a * b^T
void matmul_nt_acc(const Tensor& a, const Tensor& b, Tensor& out);
// out += a^T * b
void matmul_tn_acc(const Tensor& a, const Tensor& b, Tensor& out);

Tensor matmul(const Tensor& a, const Tensor& b);
Tensor matmul_nt(const Tensor& a, const Tensor& b);

}  // namespace juribert
