#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sohcast/matrix.hpp"

namespace sohcast {

/// Weights for one gate: pre-activation z = wx * x + wh * h_prev + b.
struct GateParams {
    Matrix wx;  // H x F
    Matrix wh;  // H x H
    Matrix b;   // H x 1
};

/// Single-layer LSTM cell plus a linear readout head y = wy * h + by.
///
/// The four gates follow the usual cell update:
///   f = sigmoid(zf), i = sigmoid(zi), c = tanh(zc), o = sigmoid(zo)
///   s = c (*) i + s_prev (*) f
///   h = tanh(s) (*) o
struct LstmParams {
    std::size_t input_size = 0;   // F
    std::size_t hidden_size = 0;  // H
    std::size_t output_size = 0;  // K_out

    GateParams forget;
    GateParams input;
    GateParams candidate;
    GateParams output;

    Matrix wy;  // K_out x H
    Matrix by;  // K_out x 1

    bool operator==(const LstmParams&) const = default;
};

/// Gradients have the same layout as the parameters they differentiate.
using LstmGrads = LstmParams;

/// Zero-valued gradients (or moment accumulators) shaped like `params`.
LstmParams zeros_like(const LstmParams& params);

/// Visit the 14 parameter tensors in a fixed documented order:
/// forget.{wx,wh,b}, input.{...}, candidate.{...}, output.{...}, wy, by.
/// Checkpoints, optimizers, and gradient checks all rely on this order.
void for_each_tensor(LstmParams& p, const std::function<void(const char*, Matrix&)>& fn);
void for_each_tensor(const LstmParams& p,
                     const std::function<void(const char*, const Matrix&)>& fn);

struct LstmState {
    Matrix s;  // internal cell state, H x 1
    Matrix h;  // hidden output, H x 1
};

LstmState zero_state(std::size_t hidden_size);

/// Everything one timestep's backward pass needs.
struct StepTrace {
    Matrix x;       // F x 1
    Matrix f, i, c, o;  // gate activations, H x 1
    Matrix s_prev;  // H x 1
    Matrix s;       // H x 1
    Matrix h;       // H x 1
};

/// One cell update. Returns the new state and the cached trace.
std::pair<LstmState, StepTrace> step(const LstmParams& params, const LstmState& state,
                                     const Matrix& x);

struct ForwardResult {
    std::vector<Matrix> outputs;  // y_t = wy * h_t + by, one per step
    std::vector<StepTrace> traces;
};

/// Run the cell over a sequence from `init`, applying the readout at every step.
ForwardResult forward(const LstmParams& params, const std::vector<Matrix>& inputs,
                      const LstmState& init);

/// Backpropagation through time. `d_outputs[t]` is dL/dy_t; gradients are
/// accumulated across all steps through both the h and s recurrences.
LstmGrads backward(const LstmParams& params, const std::vector<StepTrace>& traces,
                   const std::vector<Matrix>& d_outputs);

/// Weights ~ U(-r, r) with r = 1/sqrt(H), forget-gate bias +1, other biases 0.
/// Deterministic for a given seed.
LstmParams init_params(std::size_t input_size, std::size_t hidden_size,
                       std::size_t output_size, std::uint64_t seed);

}  // namespace sohcast
