#include "drx/skew_matrix.hpp"

#include <stdexcept>

namespace drx {

KMatrix::KMatrix(FqPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols),
      e_(rows * cols, KElement::zero(field_)) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("empty matrix");
}

KMatrix::KMatrix(FqPtr field, std::size_t rows, std::size_t cols, std::vector<KElement> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("empty matrix");
    if (e_.size() != rows * cols) throw std::invalid_argument("entry count mismatch");
}

KMatrix KMatrix::identity(const FqPtr& f, std::size_t n) {
    KMatrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, KElement::one(f));
    return m;
}

KMatrix KMatrix::operator+(const KMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("shape mismatch");
    KMatrix r(field_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + rhs.e_[i];
    return r;
}

KMatrix KMatrix::operator-(const KMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("shape mismatch");
    KMatrix r(field_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - rhs.e_[i];
    return r;
}

KMatrix KMatrix::operator-() const {
    KMatrix r(field_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = -e_[i];
    return r;
}

KMatrix KMatrix::operator*(const KMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("dimension mismatch in matrix product");
    KMatrix r(field_, rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                r.set(i, j, r.at(i, j) + at(i, k) * rhs.at(k, j));
        }
    return r;
}

KMatrix KMatrix::scaled(const KElement& s) const {
    KMatrix r(field_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * s;
    return r;
}

KMatrix KMatrix::frobenius(unsigned k) const {
    KMatrix r(field_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i].frobenius(k);
    return r;
}

bool KMatrix::is_zero() const {
    for (const auto& x : e_)
        if (!x.is_zero()) return false;
    return true;
}

bool KMatrix::is_nilpotent() const {
    if (rows_ != cols_) return false;
    KMatrix p = *this;
    for (std::size_t i = 0; i < rows_; ++i) {
        if (p.is_zero()) return true;
        p = p * *this;
    }
    return p.is_zero();
}

bool KMatrix::operator==(const KMatrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && e_ == rhs.e_;
}

SkewMatrix::SkewMatrix(FqPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), e_(rows * cols, SkewPoly(field_)) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("empty matrix");
}

SkewMatrix::SkewMatrix(FqPtr field, std::size_t rows, std::size_t cols,
                       std::vector<SkewPoly> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("empty matrix");
    if (e_.size() != rows * cols) throw std::invalid_argument("entry count mismatch");
    for (const auto& x : e_)
        if (*x.field() != *field_) throw std::invalid_argument("entry from wrong field");
}

SkewMatrix SkewMatrix::identity(const FqPtr& f, std::size_t n) {
    SkewMatrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, SkewPoly::one(f));
    return m;
}

SkewMatrix SkewMatrix::from_k(const KMatrix& m) {
    SkewMatrix r(m.field(), m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r.set(i, j, SkewPoly::constant(m.at(i, j)));
    return r;
}

void SkewMatrix::check_same_shape(const SkewMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("shape mismatch");
    if (*field_ != *rhs.field_) throw std::invalid_argument("mixed-field matrices");
}

SkewMatrix SkewMatrix::operator+(const SkewMatrix& rhs) const {
    check_same_shape(rhs);
    SkewMatrix r(field_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + rhs.e_[i];
    return r;
}

SkewMatrix SkewMatrix::operator-(const SkewMatrix& rhs) const {
    check_same_shape(rhs);
    SkewMatrix r(field_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - rhs.e_[i];
    return r;
}

SkewMatrix SkewMatrix::operator-() const {
    SkewMatrix r(field_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = -e_[i];
    return r;
}

SkewMatrix SkewMatrix::operator*(const SkewMatrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw std::invalid_argument("dimension mismatch in twisted matrix product");
    if (*field_ != *rhs.field_) throw std::invalid_argument("mixed-field matrices");
    SkewMatrix r(field_, rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                if (rhs.at(k, j).is_zero()) continue;
                r.set(i, j, r.at(i, j) + at(i, k) * rhs.at(k, j));
            }
        }
    return r;
}

SkewMatrix SkewMatrix::scaled_left(const KElement& s) const {
    SkewMatrix r(field_, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i].scaled_left(s);
    return r;
}

KMatrix SkewMatrix::constant_term() const { return tau_coefficient(0); }

KMatrix SkewMatrix::tau_coefficient(std::size_t k) const {
    KMatrix m(field_, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.set(i, j, at(i, j).coeff(k));
    return m;
}

int SkewMatrix::max_tau_degree() const {
    int d = SkewPoly::kZeroDegree;
    for (const auto& x : e_) d = std::max(d, x.degree());
    return d;
}

bool SkewMatrix::is_zero() const {
    for (const auto& x : e_)
        if (!x.is_zero()) return false;
    return true;
}

void SkewMatrix::set_block(std::size_t i0, std::size_t j0, const SkewMatrix& b) {
    if (i0 + b.rows_ > rows_ || j0 + b.cols_ > cols_)
        throw std::invalid_argument("block does not fit");
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) set(i0 + i, j0 + j, b.at(i, j));
}

SkewMatrix SkewMatrix::block(std::size_t i0, std::size_t j0, std::size_t r, std::size_t c) const {
    if (i0 + r > rows_ || j0 + c > cols_) throw std::invalid_argument("block out of range");
    SkewMatrix b(field_, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) b.set(i, j, at(i0 + i, j0 + j));
    return b;
}

bool SkewMatrix::operator==(const SkewMatrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && e_ == rhs.e_;
}

std::string SkewMatrix::str() const {
    std::vector<std::string> cells(e_.size());
    std::vector<std::size_t> width(cols_, 0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            cells[i * cols_ + j] = at(i, j).str();
            width[j] = std::max(width[j], cells[i * cols_ + j].size());
        }
    std::string out;
    for (std::size_t i = 0; i < rows_; ++i) {
        out += "[ ";
        for (std::size_t j = 0; j < cols_; ++j) {
            const std::string& s = cells[i * cols_ + j];
            out += s;
            out.append(width[j] - s.size() + (j + 1 < cols_ ? 2 : 0), ' ');
        }
        out += " ]";
        if (i + 1 < rows_) out += "\n";
    }
    return out;
}

} // namespace drx
