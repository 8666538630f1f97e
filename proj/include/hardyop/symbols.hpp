#pragma once

#include <compare>
#include <map>
#include <optional>
#include <variant>

#include "hardyop/geometry.hpp"

namespace hardyop {

/// Exponent vector alpha of a monomial z^alpha = z_1^a1 ... z_n^an.
struct MultiIndex {
    std::vector<int> exp;

    std::size_t dim() const { return exp.size(); }
    int order() const;  // |alpha|
    auto operator<=>(const MultiIndex&) const = default;
};

MultiIndex zero_index(std::size_t n);
MultiIndex unit_index(std::size_t n, std::size_t j);

/// All alpha with |alpha| <= d, in lexicographic order.
std::vector<MultiIndex> indices_up_to(std::size_t n, int d);

/// Finite monomial sum; zero coefficients are never stored.
class PolynomialSymbol {
  public:
    explicit PolynomialSymbol(std::size_t n) : n_(n) {
        if (n < 1) throw DimensionError("PolynomialSymbol: dimension must be >= 1");
    }
    static PolynomialSymbol constant(std::size_t n, Complex c);
    static PolynomialSymbol coordinate(std::size_t n, std::size_t j);  // z_{j+1}

    std::size_t dim() const { return n_; }
    const std::map<MultiIndex, Complex>& terms() const { return terms_; }
    int degree() const;  // -1 for the zero polynomial

    void set(MultiIndex alpha, Complex c);
    void add(const MultiIndex& alpha, Complex c);
    Complex coeff(const MultiIndex& alpha) const;

    Complex eval(std::span<const Complex> z) const;

    PolynomialSymbol operator+(const PolynomialSymbol& rhs) const;
    PolynomialSymbol operator*(const PolynomialSymbol& rhs) const;
    PolynomialSymbol scaled(Complex c) const;
    /// Coefficients of z |-> p(r z): c(alpha) * r^|alpha|.
    PolynomialSymbol radially_scaled(double r) const;

  private:
    std::size_t n_;
    std::map<MultiIndex, Complex> terms_;
};

/// Finite Blaschke product on the disk, exp(i theta) * prod (z-a_j)/(1-conj(a_j) z).
/// Inner: |B| = 1 on the unit circle.
struct BlaschkeSymbol {
    std::vector<Complex> zeros;
    double theta = 0.0;

    static BlaschkeSymbol checked(std::vector<Complex> zeros, double theta);
    Complex eval(Complex z) const;
};

/// Scalar symbol on B_n: a polynomial, or (n = 1) a finite Blaschke product.
/// Carries a radial prescale r so that z |-> core(r z) stays in the class;
/// this is what radial_scale produces for Blaschke components.
class Symbol {
  public:
    Symbol(PolynomialSymbol p) : core_(std::move(p)) {}
    Symbol(BlaschkeSymbol b) : core_(std::move(b)) {}

    static Symbol constant(std::size_t n, Complex c) {
        return Symbol(PolynomialSymbol::constant(n, c));
    }

    std::size_t dim() const;
    double prescale() const { return prescale_; }
    bool is_poly() const { return std::holds_alternative<PolynomialSymbol>(core_); }
    bool is_blaschke() const { return std::holds_alternative<BlaschkeSymbol>(core_); }
    const PolynomialSymbol* poly() const { return std::get_if<PolynomialSymbol>(&core_); }
    const BlaschkeSymbol* blaschke() const { return std::get_if<BlaschkeSymbol>(&core_); }

    Complex eval(std::span<const Complex> z) const;
    Complex eval1(Complex z) const {  // n = 1 convenience
        return eval(std::span<const Complex>(&z, 1));
    }

    /// Symbol whose evaluation is eval(.)^m, exactly (m >= 0).
    Symbol pow(int m) const;
    /// Symbol evaluating to this(r z); requires r in (0, 1).
    Symbol radial(double r) const;

  private:
    std::variant<PolynomialSymbol, BlaschkeSymbol> core_;
    double prescale_ = 1.0;
};

struct SelfMapValidation {
    bool ok = false;
    double worst_modulus = 0.0;
    CVec worst_node;
};

/// Candidate holomorphic self-map of B_n given by component symbols.
/// By the maximum principle the self-map property reduces to a boundary
/// maximization, carried out over a validation node set.
class BallSelfMap {
  public:
    explicit BallSelfMap(std::vector<Symbol> components);

    std::size_t dim() const { return components_.size(); }
    const std::vector<Symbol>& components() const { return components_; }

    void eval(std::span<const Complex> z, std::span<Complex> out) const;
    CVec eval(std::span<const Complex> z) const;
    double modulus_at(std::span<const Complex> z) const;

    SelfMapValidation validate(const NodeSet& nodes, double tol = kSelfMapTol);
    bool validated() const { return validated_; }
    double boundary_sup() const { return boundary_sup_; }

    /// The map z |-> phi(r z); inherits validation (composition with a
    /// contraction keeps the image inside the ball).
    BallSelfMap radial_scale(double r) const;

    static constexpr double kSelfMapTol = 1e-9;

  private:
    std::vector<Symbol> components_;
    bool validated_ = false;
    double boundary_sup_ = 0.0;
};

/// phi = identity on B_n.
BallSelfMap identity_map(std::size_t n);

}  // namespace hardyop
