#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace sohcast {

/// Dense row-major matrix of doubles. Column vectors are n x 1 matrices.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    bool same_shape(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }
    bool operator==(const Matrix& other) const = default;

    void fill(double v);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

enum class ElemOp { add, sub, mul };

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix elementwise(const Matrix& a, const Matrix& b, ElemOp op);

/// Elementwise logistic function, computed in the overflow-safe two-branch form.
Matrix sigmoid(const Matrix& x);
Matrix tanh_elem(const Matrix& x);

// Derivatives from cached activation *outputs* (the BPTT convention):
// sigmoid' = y(1-y), tanh' = 1-y^2 where y is the activation value.
Matrix sigmoid_deriv_from_output(const Matrix& y);
Matrix tanh_deriv_from_output(const Matrix& y);

double sigmoid_scalar(double x);

/// dst += a (shapes must match).
void add_in_place(Matrix& dst, const Matrix& a);
/// dst += u * v^T for column vectors u (m x 1) and v (n x 1); dst is m x n.
void add_outer(Matrix& dst, const Matrix& u, const Matrix& v);
/// A^T * x for column vector x; avoids materializing the transpose.
Matrix matvec_transposed(const Matrix& a, const Matrix& x);

std::string shape_str(const Matrix& m);

}  // namespace sohcast
