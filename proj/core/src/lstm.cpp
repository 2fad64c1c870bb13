#include "sohcast/lstm.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "sohcast/errors.hpp"
#include "sohcast/rng.hpp"

namespace sohcast {

namespace {

// z = wx * x + wh * h + b, fused into one pass over the gate rows.
Matrix gate_preactivation(const GateParams& g, const Matrix& x, const Matrix& h) {
    const std::size_t hidden = g.wx.rows();
    const std::size_t in = g.wx.cols();
    Matrix z(hidden, 1);
    const double* wx = g.wx.data();
    const double* wh = g.wh.data();
    const double* bd = g.b.data();
    const double* xd = x.data();
    const double* hd = h.data();
    double* zd = z.data();
    for (std::size_t r = 0; r < hidden; ++r) {
        double acc = bd[r];
        const double* wxr = wx + r * in;
        for (std::size_t j = 0; j < in; ++j) acc += wxr[j] * xd[j];
        const double* whr = wh + r * hidden;
        for (std::size_t j = 0; j < hidden; ++j) acc += whr[j] * hd[j];
        zd[r] = acc;
    }
    return z;
}

void check_step_shapes(const LstmParams& p, const LstmState& state, const Matrix& x) {
    if (x.rows() != p.input_size || x.cols() != 1) {
        throw ShapeError("lstm step: input " + shape_str(x) + ", expected " +
                         std::to_string(p.input_size) + "x1");
    }
    if (state.h.rows() != p.hidden_size || state.s.rows() != p.hidden_size) {
        throw ShapeError("lstm step: state h " + shape_str(state.h) + " / s " +
                         shape_str(state.s) + ", expected " +
                         std::to_string(p.hidden_size) + "x1");
    }
}

}  // namespace

LstmParams zeros_like(const LstmParams& params) {
    LstmParams z;
    z.input_size = params.input_size;
    z.hidden_size = params.hidden_size;
    z.output_size = params.output_size;
    const auto gate = [&](const GateParams& g) {
        return GateParams{Matrix(g.wx.rows(), g.wx.cols()), Matrix(g.wh.rows(), g.wh.cols()),
                          Matrix(g.b.rows(), g.b.cols())};
    };
    z.forget = gate(params.forget);
    z.input = gate(params.input);
    z.candidate = gate(params.candidate);
    z.output = gate(params.output);
    z.wy = Matrix(params.wy.rows(), params.wy.cols());
    z.by = Matrix(params.by.rows(), params.by.cols());
    return z;
}

void for_each_tensor(LstmParams& p, const std::function<void(const char*, Matrix&)>& fn) {
    fn("forget.wx", p.forget.wx);
    fn("forget.wh", p.forget.wh);
    fn("forget.b", p.forget.b);
    fn("input.wx", p.input.wx);
    fn("input.wh", p.input.wh);
    fn("input.b", p.input.b);
    fn("candidate.wx", p.candidate.wx);
    fn("candidate.wh", p.candidate.wh);
    fn("candidate.b", p.candidate.b);
    fn("output.wx", p.output.wx);
    fn("output.wh", p.output.wh);
    fn("output.b", p.output.b);
    fn("wy", p.wy);
    fn("by", p.by);
}

void for_each_tensor(const LstmParams& p,
                     const std::function<void(const char*, const Matrix&)>& fn) {
    for_each_tensor(const_cast<LstmParams&>(p),
                    [&fn](const char* name, Matrix& m) { fn(name, m); });
}

LstmState zero_state(std::size_t hidden_size) {
    return LstmState{Matrix(hidden_size, 1), Matrix(hidden_size, 1)};
}

std::pair<LstmState, StepTrace> step(const LstmParams& params, const LstmState& state,
                                     const Matrix& x) {
    check_step_shapes(params, state, x);

    StepTrace tr;
    tr.x = x;
    tr.s_prev = state.s;
    tr.f = sigmoid(gate_preactivation(params.forget, x, state.h));
    tr.i = sigmoid(gate_preactivation(params.input, x, state.h));
    tr.c = tanh_elem(gate_preactivation(params.candidate, x, state.h));
    tr.o = sigmoid(gate_preactivation(params.output, x, state.h));

    const std::size_t hidden = params.hidden_size;
    tr.s = Matrix(hidden, 1);
    tr.h = Matrix(hidden, 1);
    for (std::size_t r = 0; r < hidden; ++r) {
        const double s = tr.c(r, 0) * tr.i(r, 0) + state.s(r, 0) * tr.f(r, 0);
        tr.s(r, 0) = s;
        tr.h(r, 0) = std::tanh(s) * tr.o(r, 0);
    }

    LstmState next{tr.s, tr.h};
    return {std::move(next), std::move(tr)};
}

ForwardResult forward(const LstmParams& params, const std::vector<Matrix>& inputs,
                      const LstmState& init) {
    if (inputs.empty()) {
        throw ShapeError("lstm forward: empty input sequence");
    }
    ForwardResult result;
    result.outputs.reserve(inputs.size());
    result.traces.reserve(inputs.size());

    LstmState state = init;
    for (const Matrix& x : inputs) {
        auto [next, trace] = step(params, state, x);
        state = std::move(next);

        // y = wy * h + by
        Matrix y(params.output_size, 1);
        const double* wyd = params.wy.data();
        const double* hd = state.h.data();
        for (std::size_t r = 0; r < params.output_size; ++r) {
            double acc = params.by(r, 0);
            const double* row = wyd + r * params.hidden_size;
            for (std::size_t j = 0; j < params.hidden_size; ++j) acc += row[j] * hd[j];
            y(r, 0) = acc;
        }
        result.outputs.push_back(std::move(y));
        result.traces.push_back(std::move(trace));
    }
    return result;
}

LstmGrads backward(const LstmParams& params, const std::vector<StepTrace>& traces,
                   const std::vector<Matrix>& d_outputs) {
    if (traces.size() != d_outputs.size()) {
        throw ShapeError("lstm backward: " + std::to_string(traces.size()) +
                         " traces vs " + std::to_string(d_outputs.size()) +
                         " output gradients");
    }
    const std::size_t hidden = params.hidden_size;
    LstmGrads grads = zeros_like(params);

    Matrix dh_next(hidden, 1);  // dL/dh_t flowing in from step t+1
    Matrix ds_next(hidden, 1);  // dL/ds_t flowing in from step t+1
    const Matrix zero_h(hidden, 1);

    for (std::size_t t = traces.size(); t-- > 0;) {
        const StepTrace& tr = traces[t];
        const Matrix& dy = d_outputs[t];
        if (dy.rows() != params.output_size || dy.cols() != 1) {
            throw ShapeError("lstm backward: d_output[" + std::to_string(t) + "] " +
                             shape_str(dy) + ", expected " +
                             std::to_string(params.output_size) + "x1");
        }

        // Readout: y = wy * h + by.
        add_outer(grads.wy, dy, tr.h);
        add_in_place(grads.by, dy);
        Matrix dh = matvec_transposed(params.wy, dy);
        add_in_place(dh, dh_next);

        // h = tanh(s) (*) o
        Matrix tanh_s(hidden, 1);
        for (std::size_t r = 0; r < hidden; ++r) tanh_s(r, 0) = std::tanh(tr.s(r, 0));
        Matrix do_gate = elementwise(dh, tanh_s, ElemOp::mul);
        Matrix ds = ds_next;
        for (std::size_t r = 0; r < hidden; ++r) {
            ds(r, 0) += dh(r, 0) * tr.o(r, 0) * (1.0 - tanh_s(r, 0) * tanh_s(r, 0));
        }

        // s = c (*) i + s_prev (*) f
        Matrix dc = elementwise(ds, tr.i, ElemOp::mul);
        Matrix di = elementwise(ds, tr.c, ElemOp::mul);
        Matrix df = elementwise(ds, tr.s_prev, ElemOp::mul);
        ds_next = elementwise(ds, tr.f, ElemOp::mul);

        // Through the gate nonlinearities to the pre-activations.
        Matrix da_f = elementwise(df, sigmoid_deriv_from_output(tr.f), ElemOp::mul);
        Matrix da_i = elementwise(di, sigmoid_deriv_from_output(tr.i), ElemOp::mul);
        Matrix da_c = elementwise(dc, tanh_deriv_from_output(tr.c), ElemOp::mul);
        Matrix da_o = elementwise(do_gate, sigmoid_deriv_from_output(tr.o), ElemOp::mul);

        const Matrix& h_prev = (t == 0) ? zero_h : traces[t - 1].h;

        Matrix dh_prev(hidden, 1);
        const auto gate_grads = [&](GateParams& g, const GateParams& pg, const Matrix& da) {
            add_outer(g.wx, da, tr.x);
            add_outer(g.wh, da, h_prev);
            add_in_place(g.b, da);
            add_in_place(dh_prev, matvec_transposed(pg.wh, da));
        };
        gate_grads(grads.forget, params.forget, da_f);
        gate_grads(grads.input, params.input, da_i);
        gate_grads(grads.candidate, params.candidate, da_c);
        gate_grads(grads.output, params.output, da_o);

        dh_next = std::move(dh_prev);
    }
    return grads;
}

LstmParams init_params(std::size_t input_size, std::size_t hidden_size,
                       std::size_t output_size, std::uint64_t seed) {
    if (input_size == 0 || hidden_size == 0 || output_size == 0) {
        throw ShapeError("init_params: dimensions must be >= 1, got F=" +
                         std::to_string(input_size) + " H=" + std::to_string(hidden_size) +
                         " K=" + std::to_string(output_size));
    }
    LstmParams p;
    p.input_size = input_size;
    p.hidden_size = hidden_size;
    p.output_size = output_size;
    const auto gate = [&] {
        return GateParams{Matrix(hidden_size, input_size), Matrix(hidden_size, hidden_size),
                          Matrix(hidden_size, 1)};
    };
    p.forget = gate();
    p.input = gate();
    p.candidate = gate();
    p.output = gate();
    p.wy = Matrix(output_size, hidden_size);
    p.by = Matrix(output_size, 1);

    const double r = 1.0 / std::sqrt(static_cast<double>(hidden_size));
    Rng rng(seed);
    const auto draw = [&](Matrix& m) {
        double* d = m.data();
        for (std::size_t i = 0; i < m.size(); ++i) d[i] = rng.uniform(-r, r);
    };
    // Weight draw order is fixed; biases are not drawn.
    draw(p.forget.wx);
    draw(p.forget.wh);
    draw(p.input.wx);
    draw(p.input.wh);
    draw(p.candidate.wx);
    draw(p.candidate.wh);
    draw(p.output.wx);
    draw(p.output.wh);
    draw(p.wy);

    p.forget.b.fill(1.0);
    return p;
}

}  // namespace sohcast
