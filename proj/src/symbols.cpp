#include "hardyop/symbols.hpp"

#include <algorithm>
#include <numeric>

namespace hardyop {

int MultiIndex::order() const { return std::accumulate(exp.begin(), exp.end(), 0); }

MultiIndex zero_index(std::size_t n) { return MultiIndex{std::vector<int>(n, 0)}; }

MultiIndex unit_index(std::size_t n, std::size_t j) {
    MultiIndex a = zero_index(n);
    a.exp.at(j) = 1;
    return a;
}

namespace {
void enumerate(std::size_t n, int budget, std::vector<int>& cur,
               std::vector<MultiIndex>& out) {
    if (cur.size() == n) {
        out.push_back(MultiIndex{cur});
        return;
    }
    for (int k = 0; k <= budget; ++k) {
        cur.push_back(k);
        enumerate(n, budget - k, cur, out);
        cur.pop_back();
    }
}
}  // namespace

std::vector<MultiIndex> indices_up_to(std::size_t n, int d) {
    std::vector<MultiIndex> out;
    std::vector<int> cur;
    enumerate(n, d, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

PolynomialSymbol PolynomialSymbol::constant(std::size_t n, Complex c) {
    PolynomialSymbol p(n);
    p.set(zero_index(n), c);
    return p;
}

PolynomialSymbol PolynomialSymbol::coordinate(std::size_t n, std::size_t j) {
    PolynomialSymbol p(n);
    p.set(unit_index(n, j), Complex{1.0, 0.0});
    return p;
}

int PolynomialSymbol::degree() const {
    int d = -1;
    for (const auto& [alpha, c] : terms_) d = std::max(d, alpha.order());
    return d;
}

void PolynomialSymbol::set(MultiIndex alpha, Complex c) {
    if (alpha.dim() != n_) throw DimensionError("PolynomialSymbol::set: index dimension");
    for (int e : alpha.exp)
        if (e < 0) throw DimensionError("PolynomialSymbol::set: negative exponent");
    if (c == Complex{0.0, 0.0})
        terms_.erase(alpha);
    else
        terms_[std::move(alpha)] = c;
}

void PolynomialSymbol::add(const MultiIndex& alpha, Complex c) {
    set(alpha, coeff(alpha) + c);
}

Complex PolynomialSymbol::coeff(const MultiIndex& alpha) const {
    const auto it = terms_.find(alpha);
    return it == terms_.end() ? Complex{0.0, 0.0} : it->second;
}

Complex PolynomialSymbol::eval(std::span<const Complex> z) const {
    if (z.size() != n_) throw DimensionError("PolynomialSymbol::eval: point dimension");
    Complex acc{0.0, 0.0};
    for (const auto& [alpha, c] : terms_) {
        Complex t = c;
        for (std::size_t j = 0; j < n_; ++j) {
            Complex p{1.0, 0.0};
            for (int e = 0; e < alpha.exp[j]; ++e) p *= z[j];
            t *= p;
        }
        acc += t;
    }
    return acc;
}

PolynomialSymbol PolynomialSymbol::operator+(const PolynomialSymbol& rhs) const {
    if (rhs.n_ != n_) throw DimensionError("PolynomialSymbol::+: dimension mismatch");
    PolynomialSymbol out = *this;
    for (const auto& [alpha, c] : rhs.terms_) out.add(alpha, c);
    return out;
}

PolynomialSymbol PolynomialSymbol::operator*(const PolynomialSymbol& rhs) const {
    if (rhs.n_ != n_) throw DimensionError("PolynomialSymbol::*: dimension mismatch");
    PolynomialSymbol out(n_);
    for (const auto& [a, ca] : terms_) {
        for (const auto& [b, cb] : rhs.terms_) {
            MultiIndex s = a;
            for (std::size_t j = 0; j < n_; ++j) s.exp[j] += b.exp[j];
            out.add(s, ca * cb);
        }
    }
    return out;
}

PolynomialSymbol PolynomialSymbol::scaled(Complex c) const {
    PolynomialSymbol out(n_);
    if (c == Complex{0.0, 0.0}) return out;
    for (const auto& [alpha, t] : terms_) out.set(alpha, c * t);
    return out;
}

PolynomialSymbol PolynomialSymbol::radially_scaled(double r) const {
    PolynomialSymbol out(n_);
    for (const auto& [alpha, c] : terms_) out.set(alpha, c * std::pow(r, alpha.order()));
    return out;
}

BlaschkeSymbol BlaschkeSymbol::checked(std::vector<Complex> zeros, double theta) {
    for (const Complex& a : zeros)
        if (!(std::abs(a) < 1.0))
            throw QuadratureDomainError("BlaschkeSymbol: zero with |a| >= 1");
    return BlaschkeSymbol{std::move(zeros), theta};
}

Complex BlaschkeSymbol::eval(Complex z) const {
    Complex v = std::polar(1.0, theta);
    for (const Complex& a : zeros) v *= (z - a) / (Complex{1.0, 0.0} - std::conj(a) * z);
    return v;
}

std::size_t Symbol::dim() const {
    if (const auto* p = poly()) return p->dim();
    return 1;
}

Complex Symbol::eval(std::span<const Complex> z) const {
    if (z.size() != dim()) throw DimensionError("Symbol::eval: point dimension");
    if (const auto* p = poly()) {
        if (prescale_ == 1.0) return p->eval(z);
        CVec scaled(z.begin(), z.end());
        for (Complex& c : scaled) c *= prescale_;
        return p->eval(scaled);
    }
    return blaschke()->eval(prescale_ * z[0]);
}

Symbol Symbol::pow(int m) const {
    if (m < 0) throw DimensionError("Symbol::pow: exponent must be >= 0");
    if (m == 0) return Symbol::constant(dim(), Complex{1.0, 0.0});
    if (const auto* p = poly()) {
        PolynomialSymbol acc = *p;
        for (int i = 1; i < m; ++i) acc = acc * *p;
        Symbol out(std::move(acc));
        out.prescale_ = prescale_;
        return out;
    }
    const auto& b = *blaschke();
    BlaschkeSymbol powered;
    powered.theta = b.theta * m;
    powered.zeros.reserve(b.zeros.size() * static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        powered.zeros.insert(powered.zeros.end(), b.zeros.begin(), b.zeros.end());
    Symbol out(std::move(powered));
    out.prescale_ = prescale_;
    return out;
}

Symbol Symbol::radial(double r) const {
    if (!(r > 0.0) || !(r < 1.0))
        throw PreconditionError("Symbol::radial: r must lie in (0, 1)");
    if (const auto* p = poly()) {
        // fold into coefficients: exact and keeps evaluation cheap
        return Symbol(p->radially_scaled(r * prescale_));
    }
    Symbol out = *this;
    out.prescale_ *= r;
    return out;
}

BallSelfMap::BallSelfMap(std::vector<Symbol> components)
    : components_(std::move(components)) {
    if (components_.empty()) throw DimensionError("BallSelfMap: at least one component");
    for (const Symbol& s : components_)
        if (s.dim() != components_.size())
            throw DimensionError("BallSelfMap: component dimension must equal n");
}

void BallSelfMap::eval(std::span<const Complex> z, std::span<Complex> out) const {
    for (std::size_t j = 0; j < components_.size(); ++j) out[j] = components_[j].eval(z);
}

CVec BallSelfMap::eval(std::span<const Complex> z) const {
    CVec out(components_.size());
    eval(z, out);
    return out;
}

double BallSelfMap::modulus_at(std::span<const Complex> z) const {
    double s = 0.0;
    for (const Symbol& c : components_) s += sq_abs(c.eval(z));
    return std::sqrt(s);
}

SelfMapValidation BallSelfMap::validate(const NodeSet& nodes, double tol) {
    if (nodes.dim != dim()) throw DimensionError("BallSelfMap::validate: node dimension");
    const auto [worst, idx] =
        par::argmax(nodes.size(), [&](std::size_t i) { return modulus_at(nodes[i]); });
    SelfMapValidation report;
    report.worst_modulus = worst;
    if (idx < nodes.size()) {
        const auto z = nodes[idx];
        report.worst_node.assign(z.begin(), z.end());
    }
    report.ok = worst <= 1.0 + tol;
    validated_ = report.ok;
    boundary_sup_ = worst;
    return report;
}

BallSelfMap BallSelfMap::radial_scale(double r) const {
    if (!(r > 0.0) || !(r < 1.0))
        throw PreconditionError("BallSelfMap::radial_scale: r must lie in (0, 1)");
    std::vector<Symbol> scaled;
    scaled.reserve(components_.size());
    for (const Symbol& c : components_) scaled.push_back(c.radial(r));
    BallSelfMap out(std::move(scaled));
    out.validated_ = validated_;
    out.boundary_sup_ = boundary_sup_;  // conservative; the scaled sup is strictly smaller
    return out;
}

BallSelfMap identity_map(std::size_t n) {
    std::vector<Symbol> comps;
    comps.reserve(n);
    for (std::size_t j = 0; j < n; ++j)
        comps.emplace_back(PolynomialSymbol::coordinate(n, j));
    return BallSelfMap(std::move(comps));
}

}  // namespace hardyop
