#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace torusmc {

// Plain 2-vector. Primal quantities are read as columns, dual quantities as
// rows; the distinction lives in the signatures, not in the type.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
    constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
    friend constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
    friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
// det of the 2x2 matrix with columns a, b
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
constexpr double squared_norm(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double max_abs(Vec2 a) { return std::max(std::abs(a.x), std::abs(a.y)); }

// Integer lattice coordinates (homology vectors, cover translations).
struct IVec2 {
    std::int64_t x = 0;
    std::int64_t y = 0;

    constexpr IVec2& operator+=(IVec2 o) { x += o.x; y += o.y; return *this; }
    constexpr IVec2& operator-=(IVec2 o) { x -= o.x; y -= o.y; return *this; }
    friend constexpr IVec2 operator+(IVec2 a, IVec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr IVec2 operator-(IVec2 a, IVec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr IVec2 operator-(IVec2 a) { return {-a.x, -a.y}; }
    friend constexpr IVec2 operator*(std::int64_t s, IVec2 a) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(IVec2, IVec2) = default;
    friend constexpr auto operator<=>(IVec2, IVec2) = default;
};

constexpr Vec2 to_real(IVec2 k) {
    return {static_cast<double>(k.x), static_cast<double>(k.y)};
}

// Rounds each component; `error` receives the largest distance to an integer.
IVec2 round_to_lattice(Vec2 v, double* error = nullptr);

// 2x2 matrix ((a, b), (c, d)); columns are (a, c) and (b, d).
struct Mat2 {
    double a = 1.0, b = 0.0;
    double c = 0.0, d = 1.0;

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr Mat2 from_columns(Vec2 u, Vec2 v) { return {u.x, v.x, u.y, v.y}; }
    static Mat2 rotation(double angle) {
        return {std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle)};
    }

    constexpr Vec2 col0() const { return {a, c}; }
    constexpr Vec2 col1() const { return {b, d}; }
    constexpr double det() const { return a * d - b * c; }
    constexpr Mat2 transpose() const { return {a, c, b, d}; }
    Mat2 inverse() const;

    friend constexpr Vec2 operator*(const Mat2& m, Vec2 v) {
        return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y};
    }
    friend constexpr Mat2 operator*(const Mat2& m, const Mat2& n) {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }
    friend constexpr Mat2 operator*(double s, const Mat2& m) {
        return {s * m.a, s * m.b, s * m.c, s * m.d};
    }
    friend constexpr Mat2 operator+(const Mat2& m, const Mat2& n) {
        return {m.a + n.a, m.b + n.b, m.c + n.c, m.d + n.d};
    }
    friend constexpr Mat2 operator-(const Mat2& m, const Mat2& n) {
        return {m.a - n.a, m.b - n.b, m.c - n.c, m.d - n.d};
    }
    friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

// Row vector times matrix.
constexpr Vec2 row_times(Vec2 row, const Mat2& m) {
    return {row.x * m.a + row.y * m.c, row.x * m.b + row.y * m.d};
}

double max_abs(const Mat2& m);

// 90 degree counterclockwise rotation.
inline constexpr Mat2 kJ{0.0, -1.0, 1.0, 0.0};

// v -> (J v)^T, i.e. (x, y) -> row (-y, x).
constexpr Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

// (J A)^T for a 2 x n matrix given by its columns; row i is perp(column i).
std::vector<Vec2> mat_perp(std::span<const Vec2> columns);

// The flat torus R^2 / M Z^2 with det(M) > 0.
class TorusShape {
public:
    TorusShape() = default;
    explicit TorusShape(const Mat2& m);

    static TorusShape square() { return TorusShape(); }

    const Mat2& matrix() const noexcept { return m_; }
    const Mat2& inverse() const noexcept { return inv_; }
    Vec2 u() const { return m_.col0(); }
    Vec2 v() const { return m_.col1(); }
    double area() const { return m_.det(); }

    Vec2 to_lattice(Vec2 p) const { return inv_ * p; }
    Vec2 from_lattice(Vec2 l) const { return m_ * l; }
    Vec2 translation(IVec2 k) const { return m_ * to_real(k); }

    // Longest column; used to set scale-aware tolerances.
    double scale() const;

    friend bool operator==(const TorusShape& a, const TorusShape& b) { return a.m_ == b.m_; }

private:
    Mat2 m_ = Mat2::identity();
    Mat2 inv_ = Mat2::identity();
};

struct Reduced {
    Vec2 point;   // representative in the half-open fundamental parallelogram
    IVec2 shift;  // p = point + M * shift
};

Reduced reduce_to_fundamental(Vec2 p, const TorusShape& shape);

// Row-major dense matrix used by the equilibrium solves.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double max_abs() const;
    DenseMatrix operator*(const DenseMatrix& other) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

struct LinearSystem {
    DenseMatrix matrix;  // n x n
    DenseMatrix rhs;     // n x k
};

// Gaussian elimination with partial pivoting. Throws SingularSystem when no
// pivot exceeds 1e-12 relative to the largest matrix entry.
DenseMatrix solve_dense(const LinearSystem& system);

// max |A x - b| over all entries.
double residual_inf(const LinearSystem& system, const DenseMatrix& x);

} // namespace torusmc
