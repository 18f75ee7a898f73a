#include "geoindex/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "geoindex/errors.hpp"

namespace geoindex {

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw DimensionError("ragged matrix literal");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Rational Matrix::trace() const {
    Rational t = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product of incompatible shapes");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix sum of incompatible shapes");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    return a + Rational(-1) * b;
}

Matrix operator*(const Rational& s, const Matrix& a) {
    Matrix c = a;
    for (auto& v : c.data_) v *= s;
    return c;
}

namespace {

// Row echelon form in place; returns the rank.
std::size_t eliminate(Matrix& m) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t pivot = rank;
        while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != rank)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(rank, j));
        for (std::size_t i = rank + 1; i < m.rows(); ++i) {
            if (m(i, col) == 0) continue;
            Rational f = m(i, col) / m(rank, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(rank, j);
        }
        ++rank;
    }
    return rank;
}

}  // namespace

std::size_t rank(const Matrix& m) {
    Matrix work = m;
    return eliminate(work);
}

Matrix inverse(const Matrix& m) {
    if (!m.is_square()) throw DimensionError("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && aug(pivot, col) == 0) ++pivot;
        if (pivot == n) throw ValidationError("singular matrix has no inverse");
        if (pivot != col)
            for (std::size_t j = 0; j < 2 * n; ++j) std::swap(aug(pivot, j), aug(col, j));
        Rational p = aug(col, col);
        for (std::size_t j = 0; j < 2 * n; ++j) aug(col, j) /= p;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || aug(i, col) == 0) continue;
            Rational f = aug(i, col);
            for (std::size_t j = 0; j < 2 * n; ++j) aug(i, j) -= f * aug(col, j);
        }
    }
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

Eigen::MatrixXd to_numeric(const Matrix& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).convert_to<double>();
    return out;
}

Matrix standard_symplectic_form(std::size_t dim) {
    if (dim == 0 || dim % 2 != 0) throw DimensionError("symplectic form needs even positive dimension, got " + std::to_string(dim));
    const std::size_t k = dim / 2;
    Matrix j(dim, dim);
    for (std::size_t i = 0; i < k; ++i) {
        j(i, k + i) = 1;
        j(k + i, i) = -1;
    }
    return j;
}

bool check_symplectic(const Matrix& m) {
    if (!m.is_square()) throw DimensionError("symplectic check needs a square matrix");
    if (m.rows() == 0 || m.rows() % 2 != 0)
        throw DimensionError("symplectic matrices have even dimension >= 2, got " + std::to_string(m.rows()));
    Matrix j = standard_symplectic_form(m.rows());
    return m.transpose() * j * m == j;
}

namespace {

template <class GetA, class GetB, class Set>
void diamond_fill(std::size_t i, std::size_t j, GetA&& ga, GetB&& gb, Set&& set) {
    // a is 2i x 2i, b is 2j x 2j.
    auto map_a = [&](std::size_t x) { return x < i ? x : (i + j) + (x - i); };
    auto map_b = [&](std::size_t x) { return x < j ? i + x : (i + j) + i + (x - j); };
    for (std::size_t r = 0; r < 2 * i; ++r)
        for (std::size_t c = 0; c < 2 * i; ++c) set(map_a(r), map_a(c), ga(r, c));
    for (std::size_t r = 0; r < 2 * j; ++r)
        for (std::size_t c = 0; c < 2 * j; ++c) set(map_b(r), map_b(c), gb(r, c));
}

}  // namespace

Matrix diamond(const Matrix& a, const Matrix& b) {
    if (a.rows() == 0) return b;
    if (b.rows() == 0) return a;
    if (!a.is_square() || !b.is_square() || a.rows() % 2 || b.rows() % 2)
        throw DimensionError("direct sum needs even square factors");
    const std::size_t i = a.rows() / 2, j = b.rows() / 2;
    Matrix c(2 * (i + j), 2 * (i + j));
    auto ga = [&](std::size_t r, std::size_t s) -> Rational { return a(r, s); };
    auto gb = [&](std::size_t r, std::size_t s) -> Rational { return b(r, s); };
    diamond_fill(i, j, ga, gb, [&](std::size_t r, std::size_t s, const Rational& v) { c(r, s) = v; });
    return c;
}

Eigen::MatrixXd diamond(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.rows() == 0) return b;
    if (b.rows() == 0) return a;
    const auto i = static_cast<std::size_t>(a.rows() / 2), j = static_cast<std::size_t>(b.rows() / 2);
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(2 * (i + j)), static_cast<Eigen::Index>(2 * (i + j)));
    auto ga = [&](std::size_t r, std::size_t s) -> double { return a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)); };
    auto gb = [&](std::size_t r, std::size_t s) -> double { return b(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)); };
    diamond_fill(i, j, ga, gb, [&](std::size_t r, std::size_t s, double v) {
        c(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) = v;
    });
    return c;
}

// ---------------------------------------------------------------------------
// Rotation numbers and descriptors

Rational max_decimal_error() {
    return Rational(1, Integer("1000000000000"));
}

RotationNumber RotationNumber::exact(const Rational& value) {
    RotationNumber r;
    r.kind_ = Kind::exact;
    r.value_ = Bounded(value);
    return r;
}

RotationNumber RotationNumber::decimal(std::string value_text, std::string err_text, bool irrational) {
    RotationNumber r;
    r.kind_ = Kind::decimal;
    Rational centre = parse_rational(value_text);
    Rational err = parse_rational(err_text);
    if (err < 0) throw ValidationError("negative error bound \"" + err_text + "\"");
    r.value_ = Bounded::around(centre, err);
    r.irrational_ = irrational;
    r.decimal_text_ = std::move(value_text);
    r.err_text_ = std::move(err_text);
    return r;
}

void RotationNumber::validate(std::int64_t resolution_limit) const {
    if (!(value_.lo() > 0 && value_.hi() < 1))
        throw ValidationError("rotation number " + describe() + " must lie in (0, 1) (theta in (0, 2pi))");
    if (value_.contains(Rational(1, 2)))
        throw ValidationError("rotation number " + describe() + " may not equal 1/2 (theta = pi is excluded)");
    if (kind_ == Kind::decimal) {
        if (value_.width() / 2 >= max_decimal_error())
            throw ValidationError("rotation number " + describe() + ": decimal error bound must be below 1e-12");
        if (irrational_) {
            Rational simplest = simplest_rational_between(value_.lo(), value_.hi());
            if (boost::multiprecision::denominator(simplest) <= resolution_limit)
                throw ValidationError("rotation number " + describe() + " is flagged irrational but its interval contains " +
                                      to_string(simplest) + " (denominator within resolution limit " +
                                      std::to_string(resolution_limit) + ")");
        }
    }
}

std::string RotationNumber::describe() const {
    if (kind_ == Kind::exact) return to_string(value_.lo());
    return decimal_text_ + "+-" + err_text_;
}

int NormalFormDescriptor::total_dimension() const noexcept {
    return 2 * (p_minus + p_zero + p_plus) + 2 * (q_minus + q_zero + q_plus) + 2 * r() + 4 * r_star() + 4 * r_zero() +
           hyperbolic_dim;
}

void validate_descriptor(const NormalFormDescriptor& d, int ambient_dim, std::int64_t resolution_limit) {
    const std::pair<const char*, int> counts[] = {
        {"p_minus", d.p_minus}, {"p_zero", d.p_zero}, {"p_plus", d.p_plus},          {"q_minus", d.q_minus},
        {"q_zero", d.q_zero},   {"q_plus", d.q_plus}, {"hyperbolic_dim", d.hyperbolic_dim},
    };
    for (const auto& [name, value] : counts)
        if (value < 0) throw ValidationError(std::string(name) + " must be non-negative, got " + std::to_string(value));
    if (d.hyperbolic_dim % 2 != 0)
        throw ValidationError("hyperbolic_dim must be even, got " + std::to_string(d.hyperbolic_dim));
    if (d.total_dimension() != ambient_dim)
        throw DimensionError("descriptor dimension 2(p-+p0+p+) + 2(q-+q0+q+) + 2r + 4r* + 4r0 + dim M0 = " +
                             std::to_string(d.total_dimension()) + " differs from ambient 2(n-1) = " +
                             std::to_string(ambient_dim));
    for (const auto* list : {&d.thetas, &d.alphas, &d.betas})
        for (const auto& rho : *list) rho.validate(resolution_limit);
}

int elliptic_height(const NormalFormDescriptor& d) {
    return d.total_dimension() - d.hyperbolic_dim;
}

// ---------------------------------------------------------------------------
// Basic blocks

std::string_view block_name(BlockKind kind) {
    switch (kind) {
        case BlockKind::n1_one_plus: return "N1(1,1)";
        case BlockKind::identity: return "I2";
        case BlockKind::n1_one_minus: return "N1(1,-1)";
        case BlockKind::n1_minus_one_plus: return "N1(-1,1)";
        case BlockKind::minus_identity: return "-I2";
        case BlockKind::n1_minus_one_minus: return "N1(-1,-1)";
        case BlockKind::rotation: return "R(theta)";
        case BlockKind::hyperbolic: return "hyperbolic";
    }
    return "?";
}

Matrix basic_block(BlockKind kind) {
    switch (kind) {
        case BlockKind::n1_one_plus: return {{1, 1}, {0, 1}};
        case BlockKind::identity: return {{1, 0}, {0, 1}};
        case BlockKind::n1_one_minus: return {{1, -1}, {0, 1}};
        case BlockKind::n1_minus_one_plus: return {{-1, 1}, {0, -1}};
        case BlockKind::minus_identity: return {{-1, 0}, {0, -1}};
        case BlockKind::n1_minus_one_minus: return {{-1, -1}, {0, -1}};
        default: break;
    }
    throw ValidationError("basic_block: " + std::string(block_name(kind)) + " has no fixed literal");
}

namespace {

// 2 cos(2 pi rho) for the rotation numbers where it is rational.
std::optional<Rational> rational_double_cosine(const RotationNumber& rho) {
    if (!rho.is_exact()) return std::nullopt;
    const Rational& v = rho.value().lo();
    if (v == Rational(1, 6) || v == Rational(5, 6)) return Rational(1);
    if (v == Rational(1, 4) || v == Rational(3, 4)) return Rational(0);
    if (v == Rational(1, 3) || v == Rational(2, 3)) return Rational(-1);
    return std::nullopt;
}

double numeric_value(const RotationNumber& rho) {
    return rho.value().midpoint().convert_to<double>();
}

Eigen::MatrixXd numeric_rotation(double rho) {
    const double theta = 2.0 * std::numbers::pi * rho;
    Eigen::MatrixXd r(2, 2);
    r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    return r;
}

}  // namespace

Matrix rotation_block(const RotationNumber& rho) {
    auto t = rational_double_cosine(rho);
    if (!t)
        throw UnsupportedError("rotation number " + rho.describe() +
                               " has irrational trace; use realize_numeric for a floating-point realization");
    // Companion form: trace t, determinant 1, lower-left entry carries sign(sin theta).
    if (rho.value().lo() < Rational(1, 2)) return {{0, -1}, {1, *t}};
    return {{0, 1}, {-1, *t}};
}

Matrix rational_rotation(const Rational& t) {
    Rational den = 1 + t * t;
    Rational c = (1 - t * t) / den;
    Rational s = 2 * t / den;
    return {{c, -s}, {s, c}};
}

Matrix n2_block(const RotationNumber& rho, bool trivial) {
    Matrix a = rotation_block(rho);
    Matrix d = inverse(a).transpose();
    Matrix b = Rational(trivial ? -1 : 1) * a;
    Matrix m(4, 4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            m(i, j) = a(i, j);
            m(i, j + 2) = b(i, j);
            m(i + 2, j + 2) = d(i, j);
        }
    return m;
}

Matrix hyperbolic_block(const Rational& lambda) {
    if (lambda == 0) throw ValidationError("hyperbolic block needs a non-zero eigenvalue");
    return {{lambda, 0}, {0, Rational(1) / lambda}};
}

Matrix realize(const NormalFormDescriptor& d) {
    Matrix m;
    auto repeat = [&](BlockKind kind, int count) {
        for (int i = 0; i < count; ++i) m = diamond(m, basic_block(kind));
    };
    repeat(BlockKind::n1_one_plus, d.p_minus);
    repeat(BlockKind::identity, d.p_zero);
    repeat(BlockKind::n1_one_minus, d.p_plus);
    repeat(BlockKind::n1_minus_one_plus, d.q_minus);
    repeat(BlockKind::minus_identity, d.q_zero);
    repeat(BlockKind::n1_minus_one_minus, d.q_plus);
    for (const auto& rho : d.thetas) m = diamond(m, rotation_block(rho));
    for (const auto& rho : d.alphas) m = diamond(m, n2_block(rho, false));
    for (const auto& rho : d.betas) m = diamond(m, n2_block(rho, true));
    for (int i = 0; i < d.hyperbolic_dim / 2; ++i) m = diamond(m, hyperbolic_block(Rational(2 + i)));
    return m;
}

Eigen::MatrixXd realize_numeric(const NormalFormDescriptor& d) {
    Eigen::MatrixXd m(0, 0);
    auto repeat = [&](BlockKind kind, int count) {
        for (int i = 0; i < count; ++i) m = diamond(m, to_numeric(basic_block(kind)));
    };
    repeat(BlockKind::n1_one_plus, d.p_minus);
    repeat(BlockKind::identity, d.p_zero);
    repeat(BlockKind::n1_one_minus, d.p_plus);
    repeat(BlockKind::n1_minus_one_plus, d.q_minus);
    repeat(BlockKind::minus_identity, d.q_zero);
    repeat(BlockKind::n1_minus_one_minus, d.q_plus);
    for (const auto& rho : d.thetas) m = diamond(m, numeric_rotation(numeric_value(rho)));
    auto n2 = [](double rho, bool trivial) {
        Eigen::MatrixXd r = numeric_rotation(rho);
        Eigen::MatrixXd b = Eigen::MatrixXd::Zero(4, 4);
        b.topLeftCorner(2, 2) = r;
        b.topRightCorner(2, 2) = (trivial ? -1.0 : 1.0) * r;
        b.bottomRightCorner(2, 2) = r;
        return b;
    };
    for (const auto& rho : d.alphas) m = diamond(m, n2(numeric_value(rho), false));
    for (const auto& rho : d.betas) m = diamond(m, n2(numeric_value(rho), true));
    for (int i = 0; i < d.hyperbolic_dim / 2; ++i) {
        Eigen::MatrixXd h(2, 2);
        h << 2.0 + i, 0.0, 0.0, 1.0 / (2.0 + i);
        m = diamond(m, h);
    }
    return m;
}

// ---------------------------------------------------------------------------
// Classification

namespace {

RotationNumber rotation_from_trace(const Rational& trace, bool upper_half) {
    const Rational c = trace / 2;
    auto pick = [&](Rational lower) { return RotationNumber::exact(upper_half ? lower : Rational(1) - lower); };
    if (c == 0) return pick(Rational(1, 4));
    if (c == Rational(1, 2)) return pick(Rational(1, 6));
    if (c == Rational(-1, 2)) return pick(Rational(1, 3));

    // Niven: every other rational cosine belongs to an irrational multiple of pi.
    const long double cl = c.convert_to<long double>();
    const long double base = std::acos(cl) / (2.0L * std::numbers::pi_v<long double>);
    const long double rho = upper_half ? base : 1.0L - base;
    const long double sensitivity = 1.0L / std::sqrt(std::max(1.0L - cl * cl, 1e-300L));
    const long double err = std::max(1e-15L, 1e-17L * sensitivity);
    if (err >= 1e-12L) throw PrecisionError("rotation angle too close to 0 or pi to classify within 1e-12");
    std::ostringstream value;
    value.precision(19);
    value << std::fixed << rho;
    std::ostringstream bound;
    bound.precision(1);
    bound << std::scientific << err;
    return RotationNumber::decimal(value.str(), bound.str(), true);
}

}  // namespace

BlockClass classify_2x2(const Matrix& m) {
    if (m.rows() != 2 || m.cols() != 2) throw DimensionError("classify_2x2 needs a 2x2 matrix");
    if (!check_symplectic(m)) throw ValidationError("classify_2x2: matrix is not symplectic (det != 1)");
    const Rational tr = m.trace();
    if (tr == 2 || tr == -2) {
        const bool plus = tr == 2;
        Matrix n = plus ? m - Matrix::identity(2) : m + Matrix::identity(2);
        if (n == Matrix(2, 2)) return {plus ? BlockKind::identity : BlockKind::minus_identity, std::nullopt};
        // J N is a rank-one semidefinite form; its sign is a conjugacy invariant
        // and equals -sign(b) for N1(+-1, b).
        const int b = sign(n(0, 1) - n(1, 0));
        if (plus) return {b > 0 ? BlockKind::n1_one_plus : BlockKind::n1_one_minus, std::nullopt};
        return {b > 0 ? BlockKind::n1_minus_one_plus : BlockKind::n1_minus_one_minus, std::nullopt};
    }
    if (tr > -2 && tr < 2) {
        // e1^T J M e1 = m(1, 0) has the sign of sin(theta).
        return {BlockKind::rotation, rotation_from_trace(tr, m(1, 0) > 0)};
    }
    return {BlockKind::hyperbolic, std::nullopt};
}

// ---------------------------------------------------------------------------
// Spectra

namespace {

void eig2(double a, double b, double c, double d, std::vector<std::complex<double>>& out) {
    const double tr = a + d;
    const double det = a * d - b * c;
    const double disc = tr * tr - 4.0 * det;
    if (disc >= 0) {
        const double s = std::sqrt(disc);
        out.emplace_back((tr + s) / 2.0, 0.0);
        out.emplace_back((tr - s) / 2.0, 0.0);
    } else {
        const double s = std::sqrt(-disc);
        out.emplace_back(tr / 2.0, s / 2.0);
        out.emplace_back(tr / 2.0, -s / 2.0);
    }
}

void component_eigenvalues(const Eigen::MatrixXd& s, std::vector<std::complex<double>>& out) {
    const auto n = s.rows();
    if (n == 1) {
        out.emplace_back(s(0, 0), 0.0);
        return;
    }
    if (n == 2) {
        eig2(s(0, 0), s(0, 1), s(1, 0), s(1, 1), out);
        return;
    }
    if (n == 4 && s.bottomLeftCorner(2, 2).isZero(0.0)) {
        eig2(s(0, 0), s(0, 1), s(1, 0), s(1, 1), out);
        eig2(s(2, 2), s(2, 3), s(3, 2), s(3, 3), out);
        return;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(s, false);
    for (Eigen::Index i = 0; i < n; ++i) out.push_back(solver.eigenvalues()(i));
}

}  // namespace

std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& m) {
    const auto n = static_cast<std::size_t>(m.rows());
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) != 0.0) parent[find(i)] = find(j);

    std::vector<std::vector<std::size_t>> groups(n);
    for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);

    std::vector<std::complex<double>> out;
    for (const auto& g : groups) {
        if (g.empty()) continue;
        Eigen::MatrixXd s(static_cast<Eigen::Index>(g.size()), static_cast<Eigen::Index>(g.size()));
        for (std::size_t a = 0; a < g.size(); ++a)
            for (std::size_t b = 0; b < g.size(); ++b)
                s(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                    m(static_cast<Eigen::Index>(g[a]), static_cast<Eigen::Index>(g[b]));
        component_eigenvalues(s, out);
    }
    return out;
}

std::vector<std::complex<double>> implied_unit_spectrum(const NormalFormDescriptor& d) {
    std::vector<std::complex<double>> out;
    const int ones = 2 * (d.p_minus + d.p_zero + d.p_plus);
    const int minus_ones = 2 * (d.q_minus + d.q_zero + d.q_plus);
    for (int i = 0; i < ones; ++i) out.emplace_back(1.0, 0.0);
    for (int i = 0; i < minus_ones; ++i) out.emplace_back(-1.0, 0.0);
    auto pair = [&](const RotationNumber& rho, int multiplicity) {
        const double theta = 2.0 * std::numbers::pi * numeric_value(rho);
        for (int i = 0; i < multiplicity; ++i) {
            out.push_back(std::polar(1.0, theta));
            out.push_back(std::polar(1.0, -theta));
        }
    };
    for (const auto& rho : d.thetas) pair(rho, 1);
    for (const auto& rho : d.alphas) pair(rho, 2);
    for (const auto& rho : d.betas) pair(rho, 2);
    return out;
}

bool descriptor_consistent(const Eigen::MatrixXd& m, const NormalFormDescriptor& d, double tol) {
    if (m.rows() != m.cols() || m.rows() != d.total_dimension())
        throw DimensionError("matrix dimension " + std::to_string(m.rows()) + " does not match descriptor dimension " +
                             std::to_string(d.total_dimension()));
    std::vector<std::complex<double>> on_circle;
    for (const auto& z : eigenvalues(m))
        if (std::abs(std::abs(z) - 1.0) <= tol) on_circle.push_back(z);
    const auto implied = implied_unit_spectrum(d);
    if (on_circle.size() != implied.size()) return false;

    std::vector<bool> used(on_circle.size(), false);
    for (const auto& target : implied) {
        std::size_t best = on_circle.size();
        double best_dist = 0.0;
        for (std::size_t i = 0; i < on_circle.size(); ++i) {
            if (used[i]) continue;
            const double dist = std::abs(on_circle[i] - target);
            if (best == on_circle.size() || dist < best_dist) {
                best = i;
                best_dist = dist;
            }
        }
        if (best == on_circle.size() || best_dist > tol) return false;
        used[best] = true;
    }
    return true;
}

bool descriptor_consistent(const Matrix& m, const NormalFormDescriptor& d, double tol) {
    return descriptor_consistent(to_numeric(m), d, tol);
}

std::size_t kernel_dim_minus_identity(const Matrix& m) {
    if (!m.is_square()) throw DimensionError("kernel_dim_minus_identity needs a square matrix");
    return m.rows() - rank(m - Matrix::identity(m.rows()));
}

}  // namespace geoindex
