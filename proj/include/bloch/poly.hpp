#pragma once

// Sparse multivariate (Laurent) polynomials over Q or a prime field.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bloch/field.hpp"

namespace bloch {

/// Exponent vector, one entry per ring variable. Negative entries make a Laurent monomial.
using Exponent = std::vector<int>;

template <class Field>
class PolyRing {
public:
    PolyRing(Field field, std::vector<std::string> vars) : field_(std::move(field)), vars_(std::move(vars))
    {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            for (std::size_t j = i + 1; j < vars_.size(); ++j)
                if (vars_[i] == vars_[j]) throw std::invalid_argument("duplicate variable " + vars_[i]);
    }

    const Field& field() const { return field_; }
    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }

    std::optional<std::size_t> index_of(std::string_view name) const
    {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return i;
        return std::nullopt;
    }

    std::size_t require(std::string_view name) const
    {
        if (auto i = index_of(name)) return *i;
        throw std::invalid_argument("unknown variable " + std::string(name));
    }

    friend bool operator==(const PolyRing& a, const PolyRing& b)
    {
        return a.field_ == b.field_ && a.vars_ == b.vars_;
    }

private:
    Field field_;
    std::vector<std::string> vars_;
};

template <class Field>
using RingPtr = std::shared_ptr<const PolyRing<Field>>;

template <class Field>
RingPtr<Field> make_ring(Field field, std::vector<std::string> vars)
{
    return std::make_shared<const PolyRing<Field>>(std::move(field), std::move(vars));
}

inline RingPtr<Rationals> make_rational_ring(std::vector<std::string> vars)
{
    return make_ring(Rationals{}, std::move(vars));
}

template <class Field>
class Poly {
public:
    using Coeff = typename Field::value_type;
    using TermMap = std::map<Exponent, Coeff>;

    explicit Poly(RingPtr<Field> ring) : ring_(std::move(ring))
    {
        if (!ring_) throw std::invalid_argument("null ring");
    }

    static Poly constant(RingPtr<Field> ring, const Coeff& c)
    {
        Poly p(std::move(ring));
        p.add_term(Exponent(p.nvars(), 0), c);
        return p;
    }

    static Poly integer(RingPtr<Field> ring, long c)
    {
        const Coeff v = ring->field().from_integer(c);
        return constant(std::move(ring), v);
    }

    static Poly variable(RingPtr<Field> ring, std::string_view name, int power = 1)
    {
        Poly p(ring);
        Exponent e(ring->nvars(), 0);
        e[ring->require(name)] = power;
        p.add_term(std::move(e), ring->field().one());
        return p;
    }

    static Poly monomial(RingPtr<Field> ring, Exponent e, const Coeff& c)
    {
        Poly p(std::move(ring));
        p.add_term(std::move(e), c);
        return p;
    }

    const RingPtr<Field>& ring() const { return ring_; }
    const Field& field() const { return ring_->field(); }
    std::size_t nvars() const { return ring_->nvars(); }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const
    {
        return terms_.empty() ||
               (terms_.size() == 1 &&
                std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(), [](int e) { return e == 0; }));
    }

    /// True when no exponent is negative.
    bool is_polynomial() const
    {
        for (const auto& [e, c] : terms_)
            for (int x : e)
                if (x < 0) return false;
        return true;
    }

    Coeff coefficient(const Exponent& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? field().zero() : it->second;
    }

    /// Adds c * x^e, dropping the term if it cancels.
    void add_term(Exponent e, const Coeff& c)
    {
        if (e.size() != nvars()) throw std::invalid_argument("exponent arity mismatch");
        if (Field::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(std::move(e), c);
        if (!inserted) {
            it->second = field().add(it->second, c);
            if (Field::is_zero(it->second)) terms_.erase(it);
        }
    }

    int max_exponent(std::size_t var) const
    {
        if (terms_.empty()) throw std::domain_error("degree of zero polynomial");
        int m = terms_.begin()->first.at(var);
        for (const auto& [e, c] : terms_) m = std::max(m, e[var]);
        return m;
    }

    int min_exponent(std::size_t var) const
    {
        if (terms_.empty()) throw std::domain_error("degree of zero polynomial");
        int m = terms_.begin()->first.at(var);
        for (const auto& [e, c] : terms_) m = std::min(m, e[var]);
        return m;
    }

    /// Largest total degree in the given subset of variables.
    int degree_in(std::span<const std::size_t> vars) const
    {
        if (terms_.empty()) throw std::domain_error("degree of zero polynomial");
        int best = std::numeric_limits<int>::min();
        for (const auto& [e, c] : terms_) {
            int d = 0;
            for (std::size_t v : vars) d += e[v];
            best = std::max(best, d);
        }
        return best;
    }

    /// True when every term has the same total degree in `vars`.
    bool is_homogeneous_in(std::span<const std::size_t> vars) const
    {
        std::optional<int> deg;
        for (const auto& [e, c] : terms_) {
            int d = 0;
            for (std::size_t v : vars) d += e[v];
            if (deg && *deg != d) return false;
            deg = d;
        }
        return true;
    }

    Poly operator-() const
    {
        Poly r(ring_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, field().neg(c));
        return r;
    }

    Poly& operator+=(const Poly& o)
    {
        check_compatible(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    Poly& operator-=(const Poly& o)
    {
        check_compatible(o);
        for (const auto& [e, c] : o.terms_) add_term(e, field().neg(c));
        return *this;
    }

    Poly& operator*=(const Poly& o)
    {
        *this = *this * o;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    friend Poly operator*(const Poly& a, const Poly& b)
    {
        a.check_compatible(b);
        Poly r(a.ring_);
        const auto& f = a.field();
        Exponent e(a.nvars());
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, f.mul(ca, cb));
            }
        }
        return r;
    }

    Poly scaled(const Coeff& c) const
    {
        Poly r(ring_);
        if (Field::is_zero(c)) return r;
        for (const auto& [e, x] : terms_) r.terms_.emplace(e, field().mul(x, c));
        return r;
    }

    /// Multiplies by the monomial x^shift.
    Poly shifted(const Exponent& shift) const
    {
        if (shift.size() != nvars()) throw std::invalid_argument("exponent arity mismatch");
        Poly r(ring_);
        for (const auto& [e, c] : terms_) {
            Exponent s = e;
            for (std::size_t i = 0; i < s.size(); ++i) s[i] += shift[i];
            r.terms_.emplace(std::move(s), c);
        }
        return r;
    }

    Poly pow(unsigned n) const
    {
        Poly result = Poly::constant(ring_, field().one());
        Poly base = *this;
        while (n) {
            if (n & 1u) result = result * base;
            n >>= 1u;
            if (n) base = base * base;
        }
        return result;
    }

    friend bool operator==(const Poly& a, const Poly& b)
    {
        return *a.ring_ == *b.ring_ && a.terms_ == b.terms_;
    }

    /// Canonical text: terms in descending graded reverse lexicographic order.
    std::string to_string() const;

private:
    void check_compatible(const Poly& o) const
    {
        if (ring_ != o.ring_ && !(*ring_ == *o.ring_))
            throw std::invalid_argument("polynomials live in different rings");
    }

    RingPtr<Field> ring_;
    TermMap terms_;
};

using QPoly = Poly<Rationals>;
using FpPoly = Poly<PrimeField>;

/// Graded reverse lexicographic comparison of exponent vectors; true when a > b.
inline bool grevlex_greater(const Exponent& a, const Exponent& b)
{
    const long da = std::accumulate(a.begin(), a.end(), 0L);
    const long db = std::accumulate(b.begin(), b.end(), 0L);
    if (da != db) return da > db;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

template <class Field>
std::string Poly<Field>::to_string() const
{
    if (terms_.empty()) return "0";
    std::vector<const typename TermMap::value_type*> order;
    order.reserve(terms_.size());
    for (const auto& t : terms_) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](auto* x, auto* y) { return grevlex_greater(x->first, y->first); });

    std::string out;
    bool first = true;
    for (const auto* t : order) {
        std::string coeff = Field::to_string(t->second);
        bool negative = !coeff.empty() && coeff.front() == '-';
        if (negative) coeff.erase(0, 1);
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;

        std::string mono;
        for (std::size_t i = 0; i < t->first.size(); ++i) {
            const int e = t->first[i];
            if (e == 0) continue;
            if (!mono.empty()) mono += '*';
            mono += ring_->vars()[i];
            if (e != 1) mono += '^' + std::to_string(e);
        }
        if (mono.empty())
            out += coeff;
        else if (coeff == "1")
            out += mono;
        else
            out += coeff + '*' + mono;
    }
    return out;
}

/// Formal partial derivative with respect to the variable at `var`.
template <class Field>
Poly<Field> partial(const Poly<Field>& p, std::size_t var)
{
    if (var >= p.nvars()) throw std::invalid_argument("unknown variable index");
    Poly<Field> r(p.ring());
    const auto& f = p.field();
    for (const auto& [e, c] : p.terms()) {
        if (e[var] == 0) continue;
        Exponent d = e;
        --d[var];
        r.add_term(std::move(d), f.mul(c, f.from_integer(e[var])));
    }
    return r;
}

template <class Field>
Poly<Field> partial(const Poly<Field>& p, std::string_view var)
{
    return partial(p, p.ring()->require(var));
}

template <class Field>
struct Cleared {
    Poly<Field> numerator;
    Exponent multiplier;  // numerator = x^multiplier * p
};

/// Multiplies by the smallest monomial in `vars` making every exponent nonnegative.
/// Negative exponents in any other variable are rejected.
template <class Field>
Cleared<Field> clear_denominators(const Poly<Field>& p, std::span<const std::size_t> vars)
{
    Exponent mult(p.nvars(), 0);
    for (const auto& [e, c] : p.terms()) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] >= 0) continue;
            if (std::find(vars.begin(), vars.end(), i) == vars.end())
                throw std::domain_error("negative exponent in non-Laurent variable " + p.ring()->vars()[i]);
            mult[i] = std::max(mult[i], -e[i]);
        }
    }
    return {p.shifted(mult), mult};
}

/// Clears denominators in every variable.
template <class Field>
Cleared<Field> clear_denominators(const Poly<Field>& p)
{
    std::vector<std::size_t> all(p.nvars());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return clear_denominators(p, std::span<const std::size_t>(all));
}

/// Substitutes field values for the named variables; their exponents become zero.
template <class Field>
Poly<Field> specialize(const Poly<Field>& p, const std::map<std::string, typename Field::value_type>& bindings)
{
    if (bindings.empty()) return p;
    std::vector<std::pair<std::size_t, typename Field::value_type>> bound;
    for (const auto& [name, v] : bindings) bound.emplace_back(p.ring()->require(name), v);
    const auto& f = p.field();
    Poly<Field> r(p.ring());
    for (const auto& [e, c] : p.terms()) {
        auto coeff = c;
        Exponent rest = e;
        for (const auto& [i, v] : bound) {
            if (e[i] < 0 && Field::is_zero(v)) throw std::domain_error("negative power of zero");
            int k = e[i];
            auto base = k < 0 ? f.inv(v) : v;
            for (int j = 0; j < std::abs(k); ++j) coeff = f.mul(coeff, base);
            rest[i] = 0;
        }
        r.add_term(std::move(rest), coeff);
    }
    return r;
}

/// Moves p into a ring with a different variable list, matching variables by name.
/// Variables absent from the target must not occur in p.
template <class Field>
Poly<Field> change_ring(const Poly<Field>& p, const RingPtr<Field>& target)
{
    if (!(p.field() == target->field())) throw std::invalid_argument("field mismatch");
    std::vector<std::optional<std::size_t>> map(p.nvars());
    for (std::size_t i = 0; i < p.nvars(); ++i) map[i] = target->index_of(p.ring()->vars()[i]);
    Poly<Field> r(target);
    for (const auto& [e, c] : p.terms()) {
        Exponent t(target->nvars(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!map[i]) throw std::invalid_argument("variable " + p.ring()->vars()[i] + " missing from target ring");
            t[*map[i]] = e[i];
        }
        r.add_term(std::move(t), c);
    }
    return r;
}

/// Reduces a rational polynomial modulo a prime, into `target` (same variable list).
inline FpPoly reduce_mod(const QPoly& p, const RingPtr<PrimeField>& target)
{
    if (p.ring()->vars() != target->vars()) throw std::invalid_argument("variable list mismatch");
    FpPoly r(target);
    for (const auto& [e, c] : p.terms()) r.add_term(e, target->field().from_rational(c));
    return r;
}

/// Evaluates a rational polynomial at a numeric point (complex or real scalar type T).
template <class T>
T evaluate(const QPoly& p, std::span<const T> point)
{
    if (point.size() != p.nvars()) throw std::invalid_argument("point arity mismatch");
    T sum{0};
    for (const auto& [e, c] : p.terms()) {
        T term = static_cast<T>(c.get_d());
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            T base = e[i] > 0 ? point[i] : T{1} / point[i];
            for (int j = 0; j < std::abs(e[i]); ++j) term *= base;
        }
        sum += term;
    }
    return sum;
}

/// Dense row-major matrix of arbitrary values.
template <class T>
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_.at(i * cols_ + j); }
    const T& operator()(std::size_t i, std::size_t j) const { return data_.at(i * cols_ + j); }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

template <class Field>
using PolyMatrix = Matrix<Poly<Field>>;

namespace detail {

template <class Field>
Poly<Field> det_minor(const PolyMatrix<Field>& m, std::vector<std::size_t>& rows, std::size_t col)
{
    if (rows.size() == 1) return m(rows[0], col);
    if (rows.size() == 2)
        return m(rows[0], col) * m(rows[1], col + 1) - m(rows[0], col + 1) * m(rows[1], col);
    Poly<Field> sum(m(0, 0).ring());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (m(rows[k], col).is_zero()) continue;
        std::vector<std::size_t> rest;
        rest.reserve(rows.size() - 1);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != k) rest.push_back(rows[r]);
        Poly<Field> term = m(rows[k], col) * det_minor(m, rest, col + 1);
        if (k % 2) sum -= term; else sum += term;
    }
    return sum;
}

}  // namespace detail

/// Determinant by cofactor expansion along the first column.
template <class Field>
Poly<Field> det(const PolyMatrix<Field>& m)
{
    if (!m.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
    if (m.rows() == 0) throw std::invalid_argument("determinant of an empty matrix");
    std::vector<std::size_t> rows(m.rows());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    return detail::det_minor(m, rows, 0);
}

/// Parses text such as "3*x^2*y - z^-1 + 1/2" or "(x+1)^2*(y-1)" into a rational polynomial.
QPoly parse_poly(const RingPtr<Rationals>& ring, std::string_view text);

}  // namespace bloch
