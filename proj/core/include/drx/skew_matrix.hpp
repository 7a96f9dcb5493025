#ifndef DRX_SKEW_MATRIX_HPP
#define DRX_SKEW_MATRIX_HPP

#include "drx/skew_poly.hpp"

#include <string>
#include <vector>

namespace drx {

/// Dense matrix over K. Carrier for constant terms, tangent (Lie) data and the
/// Lie-level solver.
class KMatrix {
public:
    KMatrix(FqPtr field, std::size_t rows, std::size_t cols);
    KMatrix(FqPtr field, std::size_t rows, std::size_t cols, std::vector<KElement> entries);

    static KMatrix identity(const FqPtr& f, std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const FqPtr& field() const noexcept { return field_; }

    const KElement& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, KElement v) { e_[i * cols_ + j] = std::move(v); }

    KMatrix operator+(const KMatrix& rhs) const;
    KMatrix operator-(const KMatrix& rhs) const;
    KMatrix operator-() const;
    KMatrix operator*(const KMatrix& rhs) const;
    KMatrix scaled(const KElement& s) const;
    KMatrix frobenius(unsigned k) const;    // entrywise x -> x^(q^k)

    bool is_zero() const;
    bool is_nilpotent() const;              // exact: some power up to dim is zero
    bool operator==(const KMatrix& rhs) const;
    bool operator!=(const KMatrix& rhs) const { return !(*this == rhs); }

private:
    FqPtr field_;
    std::size_t rows_, cols_;
    std::vector<KElement> e_;
};

/// Rectangular matrix over K{tau}.
class SkewMatrix {
public:
    SkewMatrix(FqPtr field, std::size_t rows, std::size_t cols);
    SkewMatrix(FqPtr field, std::size_t rows, std::size_t cols, std::vector<SkewPoly> entries);

    static SkewMatrix identity(const FqPtr& f, std::size_t n);
    static SkewMatrix from_k(const KMatrix& m);   // embed via tau^0

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const FqPtr& field() const noexcept { return field_; }

    const SkewPoly& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, SkewPoly v) { e_[i * cols_ + j] = std::move(v); }

    SkewMatrix operator+(const SkewMatrix& rhs) const;
    SkewMatrix operator-(const SkewMatrix& rhs) const;
    SkewMatrix operator-() const;
    SkewMatrix operator*(const SkewMatrix& rhs) const;   // dimension-checked skew product
    SkewMatrix scaled_left(const KElement& s) const;

    /// tau^0 coefficient of every entry.
    KMatrix constant_term() const;
    /// tau^k coefficient of every entry.
    KMatrix tau_coefficient(std::size_t k) const;

    int max_tau_degree() const;    // SkewPoly::kZeroDegree when the matrix is zero
    bool is_zero() const;

    void set_block(std::size_t i0, std::size_t j0, const SkewMatrix& b);
    SkewMatrix block(std::size_t i0, std::size_t j0, std::size_t r, std::size_t c) const;

    bool operator==(const SkewMatrix& rhs) const;
    bool operator!=(const SkewMatrix& rhs) const { return !(*this == rhs); }

    std::string str() const;   // aligned pretty print, one row per line

private:
    FqPtr field_;
    std::size_t rows_, cols_;
    std::vector<SkewPoly> e_;

    void check_same_shape(const SkewMatrix& rhs) const;
};

} // namespace drx

#endif
