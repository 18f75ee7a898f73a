#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "geoindex/exact.hpp"

namespace geoindex {

/// Dense matrix over the rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transpose() const;
    Rational trace() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Rational& c, const Matrix& a);
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

std::size_t rank(const Matrix& m);
Matrix inverse(const Matrix& m);
Eigen::MatrixXd to_numeric(const Matrix& m);

/// J = [[0, I_k], [-I_k, 0]] of size 2k.
Matrix standard_symplectic_form(std::size_t dim);

/// M^T J M == J in exact arithmetic. Throws DimensionError for non-square
/// or odd-dimensional input.
bool check_symplectic(const Matrix& m);

/// Symplectic direct sum: the blocks keep their own (x, y) halves, so the
/// result is symplectic for the standard form whenever both factors are.
Matrix diamond(const Matrix& a, const Matrix& b);
Eigen::MatrixXd diamond(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Rotation number rho = theta / (2 pi) of a unit-circle eigenvalue pair.
///
/// Either an exact rational or a decimal with an absolute error bound. A
/// decimal may be flagged irrational; such a value is admissible only when
/// its interval holds no rational of denominator up to the resolution limit,
/// which also guarantees that m * rho never straddles an integer for
/// m up to that limit.
class RotationNumber {
public:
    enum class Kind { exact, decimal };

    static RotationNumber exact(const Rational& value);
    static RotationNumber decimal(std::string value_text, std::string err_text, bool irrational);

    Kind kind() const noexcept { return kind_; }
    bool is_exact() const noexcept { return kind_ == Kind::exact; }
    bool irrational() const noexcept { return irrational_; }
    const Bounded& value() const noexcept { return value_; }
    const std::string& decimal_text() const noexcept { return decimal_text_; }
    const std::string& err_text() const noexcept { return err_text_; }

    /// m * rho, exact whenever rho is.
    Bounded times(std::int64_t m) const { return value_ * Rational(m); }

    /// Range, exclusion of 1/2, decimal error bound, and the irrationality
    /// resolution check. Throws ValidationError.
    void validate(std::int64_t resolution_limit) const;

    std::string describe() const;

    friend bool operator==(const RotationNumber& a, const RotationNumber& b) {
        return a.kind_ == b.kind_ && a.value_ == b.value_ && a.irrational_ == b.irrational_;
    }

private:
    Kind kind_ = Kind::exact;
    Bounded value_;
    bool irrational_ = false;
    std::string decimal_text_;
    std::string err_text_;
};

/// Largest admissible decimal error bound for a rotation number.
Rational max_decimal_error();

/// Block counts and angles of the basic normal form of a linearized
/// Poincare map:
///
///   N1(1,1)^{p-} I_{2p0} N1(1,-1)^{p+} N1(-1,1)^{q-} (-I_{2q0}) N1(-1,-1)^{q+}
///   R(theta_1..r) N2(alpha_1..r*, non-trivial) N2(beta_1..r0, trivial) M0
///
/// with sigma(M0) off the unit circle; only dim M0 is kept.
struct NormalFormDescriptor {
    int p_minus = 0;
    int p_zero = 0;
    int p_plus = 0;
    int q_minus = 0;
    int q_zero = 0;
    int q_plus = 0;
    std::vector<RotationNumber> thetas;
    std::vector<RotationNumber> alphas;
    std::vector<RotationNumber> betas;
    int hyperbolic_dim = 0;

    int r() const noexcept { return static_cast<int>(thetas.size()); }
    int r_star() const noexcept { return static_cast<int>(alphas.size()); }
    int r_zero() const noexcept { return static_cast<int>(betas.size()); }

    bool has_eigenvalue_one_blocks() const noexcept { return p_minus + p_zero + p_plus > 0; }
    bool has_eigenvalue_minus_one_blocks() const noexcept { return q_minus + q_zero + q_plus > 0; }

    int total_dimension() const noexcept;

    friend bool operator==(const NormalFormDescriptor&, const NormalFormDescriptor&) = default;
};

/// Throws ValidationError (or DimensionError) naming the violated invariant.
void validate_descriptor(const NormalFormDescriptor& d, int ambient_dim, std::int64_t resolution_limit);

/// Total algebraic multiplicity of the unit-circle spectrum.
int elliptic_height(const NormalFormDescriptor& d);

enum class BlockKind {
    n1_one_plus,        // N1(1, 1)
    identity,           // I2
    n1_one_minus,       // N1(1, -1)
    n1_minus_one_plus,  // N1(-1, 1)
    minus_identity,     // -I2
    n1_minus_one_minus, // N1(-1, -1)
    rotation,           // R(theta)
    hyperbolic,
};

std::string_view block_name(BlockKind kind);

struct BlockClass {
    BlockKind kind;
    std::optional<RotationNumber> rotation;  // set for BlockKind::rotation
};

/// Literal 2x2 block for the six parabolic/identity families.
Matrix basic_block(BlockKind kind);

/// Exact rational representative of the conjugacy class of R(theta).
/// Only rho in {1/6, 1/4, 1/3, 2/3, 3/4, 5/6} has rational trace; other
/// values throw UnsupportedError.
Matrix rotation_block(const RotationNumber& rho);

/// R(theta) for an arbitrary rational cosine/sine pair on the unit circle,
/// parametrized by t: cos = (1 - t^2)/(1 + t^2), sin = 2t/(1 + t^2).
Matrix rational_rotation(const Rational& t);

/// [[A, A S], [0, A^{-T}]] with S = -I (trivial) or +I (non-trivial).
Matrix n2_block(const RotationNumber& rho, bool trivial);

/// diag(lambda, 1/lambda).
Matrix hyperbolic_block(const Rational& lambda);

/// Exact assembly of the normal form; throws UnsupportedError when some
/// angle has no rational representative.
Matrix realize(const NormalFormDescriptor& d);

/// Floating-point assembly using the literal R(theta) and b = -/+ R(theta)
/// for trivial/non-trivial N2 blocks. Works for every descriptor.
Eigen::MatrixXd realize_numeric(const NormalFormDescriptor& d);

/// Classifies a symplectic 2x2 matrix up to symplectic conjugation.
/// Throws ValidationError for non-symplectic input.
BlockClass classify_2x2(const Matrix& m);

/// Eigenvalues, splitting the matrix into its decoupled diagonal blocks
/// first so that Jordan blocks of the normal form come out exactly.
std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& m);

/// Unit-circle eigenvalues implied by a descriptor, with multiplicity.
std::vector<std::complex<double>> implied_unit_spectrum(const NormalFormDescriptor& d);

/// Whether the unit-circle spectrum of m matches the descriptor's within tol.
/// The trivial/non-trivial N2 distinction is not checked.
bool descriptor_consistent(const Eigen::MatrixXd& m, const NormalFormDescriptor& d, double tol);
bool descriptor_consistent(const Matrix& m, const NormalFormDescriptor& d, double tol);

/// dim ker(M - I), exact.
std::size_t kernel_dim_minus_identity(const Matrix& m);

}  // namespace geoindex
