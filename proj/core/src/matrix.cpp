#include "sohcast/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sohcast/errors.hpp"

namespace sohcast {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw ShapeError("matrix data length " + std::to_string(data_.size()) +
                         " does not match " + std::to_string(rows_) + "x" +
                         std::to_string(cols_));
    }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw ShapeError("ragged initializer: row of length " +
                             std::to_string(row.size()) + " in " +
                             std::to_string(cols_) + "-column matrix");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

void Matrix::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

std::string shape_str(const Matrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("matmul: lhs " + shape_str(a) + " incompatible with rhs " +
                         shape_str(b));
    }
    Matrix out(a.rows(), b.cols());
    const std::size_t m = a.rows(), n = a.cols(), p = b.cols();
    const double* ad = a.data();
    const double* bd = b.data();
    double* od = out.data();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const double aik = ad[i * n + k];
            if (aik == 0.0) continue;
            const double* brow = bd + k * p;
            double* orow = od + i * p;
            for (std::size_t j = 0; j < p; ++j) orow[j] += aik * brow[j];
        }
    }
    return out;
}

Matrix elementwise(const Matrix& a, const Matrix& b, ElemOp op) {
    if (!a.same_shape(b)) {
        throw ShapeError("elementwise: " + shape_str(a) + " vs " + shape_str(b));
    }
    Matrix out(a.rows(), a.cols());
    const double* ad = a.data();
    const double* bd = b.data();
    double* od = out.data();
    const std::size_t n = a.size();
    switch (op) {
        case ElemOp::add:
            for (std::size_t i = 0; i < n; ++i) od[i] = ad[i] + bd[i];
            break;
        case ElemOp::sub:
            for (std::size_t i = 0; i < n; ++i) od[i] = ad[i] - bd[i];
            break;
        case ElemOp::mul:
            for (std::size_t i = 0; i < n; ++i) od[i] = ad[i] * bd[i];
            break;
    }
    return out;
}

double sigmoid_scalar(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

Matrix sigmoid(const Matrix& x) {
    Matrix out(x.rows(), x.cols());
    const double* xd = x.data();
    double* od = out.data();
    for (std::size_t i = 0; i < x.size(); ++i) od[i] = sigmoid_scalar(xd[i]);
    return out;
}

Matrix tanh_elem(const Matrix& x) {
    Matrix out(x.rows(), x.cols());
    const double* xd = x.data();
    double* od = out.data();
    for (std::size_t i = 0; i < x.size(); ++i) od[i] = std::tanh(xd[i]);
    return out;
}

Matrix sigmoid_deriv_from_output(const Matrix& y) {
    Matrix out(y.rows(), y.cols());
    const double* yd = y.data();
    double* od = out.data();
    for (std::size_t i = 0; i < y.size(); ++i) od[i] = yd[i] * (1.0 - yd[i]);
    return out;
}

Matrix tanh_deriv_from_output(const Matrix& y) {
    Matrix out(y.rows(), y.cols());
    const double* yd = y.data();
    double* od = out.data();
    for (std::size_t i = 0; i < y.size(); ++i) od[i] = 1.0 - yd[i] * yd[i];
    return out;
}

void add_in_place(Matrix& dst, const Matrix& a) {
    if (!dst.same_shape(a)) {
        throw ShapeError("add_in_place: " + shape_str(dst) + " vs " + shape_str(a));
    }
    double* dd = dst.data();
    const double* ad = a.data();
    for (std::size_t i = 0; i < dst.size(); ++i) dd[i] += ad[i];
}

void add_outer(Matrix& dst, const Matrix& u, const Matrix& v) {
    if (u.cols() != 1 || v.cols() != 1 || dst.rows() != u.rows() ||
        dst.cols() != v.rows()) {
        throw ShapeError("add_outer: dst " + shape_str(dst) + ", u " + shape_str(u) +
                         ", v " + shape_str(v));
    }
    const std::size_t m = u.rows(), n = v.rows();
    double* dd = dst.data();
    const double* ud = u.data();
    const double* vd = v.data();
    for (std::size_t i = 0; i < m; ++i) {
        const double ui = ud[i];
        double* drow = dd + i * n;
        for (std::size_t j = 0; j < n; ++j) drow[j] += ui * vd[j];
    }
}

Matrix matvec_transposed(const Matrix& a, const Matrix& x) {
    if (x.cols() != 1 || a.rows() != x.rows()) {
        throw ShapeError("matvec_transposed: lhs " + shape_str(a) + "^T with rhs " +
                         shape_str(x));
    }
    Matrix out(a.cols(), 1);
    const std::size_t m = a.rows(), n = a.cols();
    const double* ad = a.data();
    const double* xd = x.data();
    double* od = out.data();
    for (std::size_t i = 0; i < m; ++i) {
        const double xi = xd[i];
        const double* arow = ad + i * n;
        for (std::size_t j = 0; j < n; ++j) od[j] += xi * arow[j];
    }
    return out;
}

}  // namespace sohcast
