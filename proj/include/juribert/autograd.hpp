#pragma once

#include <functional>
#include <vector>

#include "juribert/rng.hpp"
#include "juribert/tensor.hpp"

namespace juribert {

// Eager reverse-mode tape over Tensor. Nodes are created in topological order,
// so the backward pass is a single reverse sweep. Parameter leaves accumulate
// their gradients straight into caller-owned tensors.
class Graph {
public:
    using NodeId = int;

    NodeId input(Tensor value);                              // constant, no gradient
    NodeId param(const Tensor* value, Tensor* grad_sink);    // leaf with external grad target

    NodeId matmul(NodeId a, NodeId b);
    NodeId matmul_nt(NodeId a, NodeId b);                    // a * b^T
    NodeId add(NodeId a, NodeId b);
    NodeId add_row_broadcast(NodeId x, NodeId bias);         // bias is 1 x C
    NodeId scale(NodeId x, real_t factor);
    NodeId layer_norm(NodeId x, NodeId gamma, NodeId beta, real_t eps);
    NodeId gelu(NodeId x);                                   // exact erf form
    NodeId tanh_act(NodeId x);
    NodeId dropout(NodeId x, real_t rate, Rng& rng);         // inverted dropout
    NodeId masked_softmax_rows(NodeId scores, std::vector<uint8_t> key_mask);
    NodeId col_slice(NodeId x, int start, int count);
    NodeId col_concat(const std::vector<NodeId>& parts);
    NodeId gather_rows(NodeId x, std::vector<int> row_indices);
    NodeId embedding(NodeId table, std::vector<int> ids);

    // Sum over rows of -log softmax(logits_row)[label_row]; 1 x 1 output.
    NodeId cross_entropy_sum(NodeId logits, std::vector<int> labels);
    NodeId add_scalars(const std::vector<NodeId>& scalars);

    const Tensor& value(NodeId id) const { return *nodes_[static_cast<size_t>(id)].value; }

    // Seeds d(loss)/d(loss) = 1 and sweeps the tape in reverse. loss must be 1x1.
    void backward(NodeId loss);

    size_t node_count() const { return nodes_.size(); }

private:
    struct Node {
        Tensor owned;
        const Tensor* value = nullptr;
        Tensor grad;
        Tensor* param_sink = nullptr;
        bool needs_grad = false;
        std::function<void(Graph&, NodeId)> backprop;
    };

    NodeId push_owned(Tensor value, bool needs_grad);
    bool wants_grad(NodeId id) const { return nodes_[static_cast<size_t>(id)].needs_grad; }
    Tensor& grad_ref(NodeId id);

    std::vector<Node> nodes_;
};

// Row-wise softmax of plain tensors (no graph involvement).
Tensor softmax_rows(const Tensor& logits);

}  // namespace juribert
