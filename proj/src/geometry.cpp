#include "torusmc/geometry.hpp"

#include "torusmc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace torusmc {

std::string_view kind_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::MalformedMap: return "MalformedMap";
    case ErrorKind::NotCellular: return "NotCellular";
    case ErrorKind::BadFaceHomology: return "BadFaceHomology";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotACirculation: return "NotACirculation";
    case ErrorKind::CocirculationCheckFailed: return "CocirculationCheckFailed";
    case ErrorKind::NotEssentiallyValid: return "NotEssentiallyValid";
    case ErrorKind::EmbeddingFailed: return "EmbeddingFailed";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NotReciprocalHere: return "NotReciprocalHere";
    case ErrorKind::ClosureFailure: return "ClosureFailure";
    case ErrorKind::DegenerateStar: return "DegenerateStar";
    case ErrorKind::PathInconsistent: return "PathInconsistent";
    case ErrorKind::NonGeneric: return "NonGeneric";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

IVec2 round_to_lattice(Vec2 v, double* error) {
    const double rx = std::round(v.x);
    const double ry = std::round(v.y);
    if (error) *error = std::max(std::abs(v.x - rx), std::abs(v.y - ry));
    return {static_cast<std::int64_t>(rx), static_cast<std::int64_t>(ry)};
}

Mat2 Mat2::inverse() const {
    const double det_value = det();
    return {d / det_value, -b / det_value, -c / det_value, a / det_value};
}

double max_abs(const Mat2& m) {
    return std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
}

std::vector<Vec2> mat_perp(std::span<const Vec2> columns) {
    std::vector<Vec2> rows;
    rows.reserve(columns.size());
    for (Vec2 col : columns) rows.push_back(perp(col));
    return rows;
}

TorusShape::TorusShape(const Mat2& m) : m_(m) {
    const double det_value = m.det();
    if (!std::isfinite(m.a) || !std::isfinite(m.b) || !std::isfinite(m.c) ||
        !std::isfinite(m.d) || !(det_value > 0.0)) {
        std::ostringstream msg;
        msg << "torus matrix must be finite with positive determinant (det = " << det_value
            << ")";
        fail(ErrorKind::InvalidArgument, msg.str());
    }
    inv_ = m.inverse();
}

double TorusShape::scale() const { return std::max(norm(u()), norm(v())); }

Reduced reduce_to_fundamental(Vec2 p, const TorusShape& shape) {
    Vec2 lattice = shape.to_lattice(p);
    auto wrap = [](double t, std::int64_t& k) {
        double f = std::floor(t);
        double frac = t - f;
        // Rounding can leave frac == 1; the half-open convention sends it to 0.
        if (frac >= 1.0) {
            frac -= 1.0;
            f += 1.0;
        }
        k = static_cast<std::int64_t>(f);
        return frac;
    };
    IVec2 shift;
    const double fx = wrap(lattice.x, shift.x);
    const double fy = wrap(lattice.y, shift.y);
    if (shift.x == 0 && shift.y == 0) return {p, shift};
    // p - M k computed directly keeps exact inputs exact where possible.
    Vec2 q = p - shape.translation(shift);
    Vec2 check = shape.to_lattice(q);
    if (check.x < 0.0 || check.x >= 1.0 || check.y < 0.0 || check.y >= 1.0) {
        q = shape.from_lattice({fx, fy});
    }
    return {q, shift};
}

double DenseMatrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& other) const {
    if (cols_ != other.rows_) fail(ErrorKind::InvalidArgument, "matrix dimension mismatch");
    DenseMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const double aik = (*this)(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += aik * other(k, j);
        }
    return out;
}

DenseMatrix solve_dense(const LinearSystem& system) {
    const std::size_t n = system.matrix.rows();
    const std::size_t k = system.rhs.cols();
    if (system.matrix.cols() != n || system.rhs.rows() != n)
        fail(ErrorKind::InvalidArgument, "linear system dimensions are inconsistent");

    DenseMatrix a = system.matrix;
    DenseMatrix x = system.rhs;
    const double threshold = 1e-12 * std::max(a.max_abs(), std::numeric_limits<double>::min());

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > best) {
                best = std::abs(a(r, col));
                pivot = r;
            }
        }
        if (!(best > threshold)) {
            std::ostringstream msg;
            msg << "no pivot above tolerance in column " << col;
            fail(ErrorKind::SingularSystem, msg.str());
        }
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
            for (std::size_t j = 0; j < k; ++j) std::swap(x(col, j), x(pivot, j));
        }
        const double inv = 1.0 / a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a(r, col) * inv;
            if (factor == 0.0) continue;
            a(r, col) = 0.0;
            for (std::size_t j = col + 1; j < n; ++j) a(r, j) -= factor * a(col, j);
            for (std::size_t j = 0; j < k; ++j) x(r, j) -= factor * x(col, j);
        }
    }
    for (std::size_t col = n; col-- > 0;) {
        for (std::size_t j = 0; j < k; ++j) {
            double sum = x(col, j);
            for (std::size_t c = col + 1; c < n; ++c) sum -= a(col, c) * x(c, j);
            x(col, j) = sum / a(col, col);
        }
    }
    return x;
}

double residual_inf(const LinearSystem& system, const DenseMatrix& x) {
    DenseMatrix ax = system.matrix * x;
    double r = 0.0;
    for (std::size_t i = 0; i < ax.rows(); ++i)
        for (std::size_t j = 0; j < ax.cols(); ++j)
            r = std::max(r, std::abs(ax(i, j) - system.rhs(i, j)));
    return r;
}

} // namespace torusmc
