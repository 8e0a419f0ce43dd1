// Number fields presented absolutely as Q[x]/(f), with real embeddings
// certified by Sturm-sequence interval refinement, quadratic extension
// towers, and exact square-root testing inside those towers.
//
// Every value here is immutable after construction; elements carry a
// shared_ptr to their field and interoperate only within one field object.
#pragma once

#include <qhmf/poly.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <sstream>

namespace qhmf {

class FieldSpec;
using FieldPtr = std::shared_ptr<const FieldSpec>;

class AlgElem;

// Basis-change data for a field K = base(b), b^2 = delta. The "tower basis"
// is {theta^i} ++ {theta^i * b} with theta the base generator; the matrix
// tower_from_power maps power-basis coordinates of K to tower coordinates.
struct TowerLink {
    FieldPtr base;
    std::vector<Rat> delta_coeffs;                  // delta in the base's power basis
    QPoly base_gen_image;                           // theta as a polynomial in K's generator
    QPoly sqrt_image;                               // b as a polynomial in K's generator
    std::vector<std::vector<Rat>> tower_from_power; // 2n x 2n
};

class FieldSpec : public std::enable_shared_from_this<FieldSpec> {
public:
    // Field presented by a monic polynomial; irreducibility is certified here.
    static FieldPtr create(const QPoly& f, std::string label, std::string gen_name) {
        if (f.degree() < 1 || f.lead() != 1)
            throw std::invalid_argument("FieldSpec: defining polynomial must be monic of degree >= 1");
        if (f.degree() > 1 && !is_irreducible_q(f))
            throw std::invalid_argument("FieldSpec: defining polynomial is reducible over Q");
        return FieldPtr(new FieldSpec(f, std::move(label), std::move(gen_name), std::nullopt));
    }

    static FieldPtr rationals() {
        static FieldPtr q = FieldPtr(new FieldSpec(QPoly::x(), "QQ", "x", std::nullopt));
        return q;
    }

    const std::string& label() const { return label_; }
    const std::string& gen_name() const { return gen_name_; }
    const QPoly& min_poly() const { return f_; }
    int degree() const { return deg_; }
    const std::vector<RootInterval>& real_roots() const { return real_roots_; }
    bool has_tower() const { return tower_.has_value(); }
    const TowerLink& tower() const { return *tower_; }

    AlgElem zero() const;
    AlgElem one() const;
    AlgElem generator() const;
    AlgElem from_rat(const Rat& r) const;
    AlgElem element(std::vector<Rat> coeffs) const;

    friend FieldPtr adjoin_square_root(const FieldPtr&, const AlgElem&, const std::string&, const std::string&);

private:
    FieldSpec(QPoly f, std::string label, std::string gen_name, std::optional<TowerLink> tower)
        : f_(std::move(f)),
          deg_(f_.degree()),
          label_(std::move(label)),
          gen_name_(std::move(gen_name)),
          tower_(std::move(tower)) {
        real_roots_ = isolate_real_roots(f_);
    }

    QPoly f_;
    int deg_;
    std::string label_;
    std::string gen_name_;
    std::vector<RootInterval> real_roots_;
    std::optional<TowerLink> tower_;
};

class AlgElem {
public:
    AlgElem() = default;
    AlgElem(FieldPtr field, std::vector<Rat> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
        const size_t n = static_cast<size_t>(field_->degree());
        if (c_.size() > n) {
            QPoly r = QPoly(c_).mod(field_->min_poly());
            c_.assign(n, Rat(0));
            for (int i = 0; i <= r.degree(); ++i) c_[static_cast<size_t>(i)] = r[static_cast<size_t>(i)];
        } else {
            c_.resize(n, Rat(0));
        }
    }

    const FieldPtr& field() const { return field_; }
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& coeff(size_t i) const { return c_[i]; }

    bool is_zero() const {
        for (const auto& a : c_)
            if (sgn(a) != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (sgn(c_[i]) != 0) return false;
        return true;
    }
    Rat rational_value() const {
        if (!is_rational()) throw std::invalid_argument("AlgElem: not rational");
        return c_.empty() ? Rat(0) : c_[0];
    }

    QPoly poly() const { return QPoly(c_); }

    bool operator==(const AlgElem& o) const {
        check_same(o);
        return c_ == o.c_;
    }
    bool operator!=(const AlgElem& o) const { return !(*this == o); }

    AlgElem operator-() const {
        std::vector<Rat> v(c_);
        for (auto& a : v) a = -a;
        return AlgElem(field_, std::move(v));
    }
    AlgElem operator+(const AlgElem& o) const {
        check_same(o);
        std::vector<Rat> v(c_);
        for (size_t i = 0; i < v.size(); ++i) v[i] += o.c_[i];
        return AlgElem(field_, std::move(v));
    }
    AlgElem operator-(const AlgElem& o) const {
        check_same(o);
        std::vector<Rat> v(c_);
        for (size_t i = 0; i < v.size(); ++i) v[i] -= o.c_[i];
        return AlgElem(field_, std::move(v));
    }
    AlgElem operator*(const AlgElem& o) const {
        check_same(o);
        QPoly prod = poly() * o.poly();
        QPoly r = prod.mod(field_->min_poly());
        std::vector<Rat> v(static_cast<size_t>(field_->degree()), Rat(0));
        for (int i = 0; i <= r.degree(); ++i) v[static_cast<size_t>(i)] = r[static_cast<size_t>(i)];
        return AlgElem(field_, std::move(v));
    }
    AlgElem operator*(const Rat& a) const {
        std::vector<Rat> v(c_);
        for (auto& x : v) x *= a;
        return AlgElem(field_, std::move(v));
    }
    friend AlgElem operator*(const Rat& a, const AlgElem& x) { return x * a; }

    AlgElem inverse() const {
        if (is_zero()) throw std::domain_error("AlgElem: inverse of zero");
        // extended Euclid: s*f + t*z = g (constant), inverse = t/g
        QPoly r0 = field_->min_poly(), r1 = poly();
        QPoly t0 = QPoly::zero(), t1 = QPoly::constant(Rat(1));
        while (!r1.is_zero()) {
            auto [q, r2] = r0.divrem(r1);
            QPoly t2 = t0 - q * t1;
            r0 = std::move(r1);
            r1 = std::move(r2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        if (r0.degree() != 0)
            throw std::domain_error("AlgElem: element not invertible (defining polynomial not irreducible?)");
        QPoly inv = (t0 * (Rat(1) / r0[0])).mod(field_->min_poly());
        std::vector<Rat> v(static_cast<size_t>(field_->degree()), Rat(0));
        for (int i = 0; i <= inv.degree(); ++i) v[static_cast<size_t>(i)] = inv[static_cast<size_t>(i)];
        return AlgElem(field_, std::move(v));
    }
    AlgElem operator/(const AlgElem& o) const { return *this * o.inverse(); }

    AlgElem pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        AlgElem acc = field_->one();
        AlgElem base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    std::string str() const { return poly().str(field_->gen_name()); }

private:
    void check_same(const AlgElem& o) const {
        if (field_.get() != o.field_.get())
            throw std::invalid_argument("AlgElem: operands live in different fields");
    }
    FieldPtr field_;
    std::vector<Rat> c_;
};

inline AlgElem FieldSpec::zero() const {
    return AlgElem(shared_from_this(), std::vector<Rat>(static_cast<size_t>(deg_), Rat(0)));
}
inline AlgElem FieldSpec::one() const { return from_rat(Rat(1)); }
inline AlgElem FieldSpec::from_rat(const Rat& r) const {
    std::vector<Rat> v(static_cast<size_t>(deg_), Rat(0));
    v[0] = r;
    return AlgElem(shared_from_this(), std::move(v));
}
inline AlgElem FieldSpec::generator() const {
    if (deg_ == 1) {
        // Q[x]/(x): the generator is 0
        return zero();
    }
    std::vector<Rat> v(static_cast<size_t>(deg_), Rat(0));
    v[1] = Rat(1);
    return AlgElem(shared_from_this(), std::move(v));
}
inline AlgElem FieldSpec::element(std::vector<Rat> coeffs) const {
    return AlgElem(shared_from_this(), std::move(coeffs));
}

// Evaluate a polynomial with rational coefficients at an element.
inline AlgElem eval_poly(const QPoly& g, const AlgElem& x) {
    AlgElem acc = x.field()->zero();
    for (size_t i = g.coeffs().size(); i-- > 0;) acc = acc * x + x.field()->from_rat(g[i]);
    return acc;
}

// ---------------------------------------------------------------------------
// Real embedding signs.

// Exact sign of x under the real embedding selected by root_index.
// Zero is detected algebraically (x = 0 as a reduced coefficient vector, with
// a gcd cross-check); nonzero signs are certified by interval refinement.
inline int embed_sign(const AlgElem& x, size_t root_index) {
    const FieldSpec& K = *x.field();
    if (root_index >= K.real_roots().size())
        throw std::out_of_range("embed_sign: root_index out of range");
    if (x.is_zero()) return 0;
    QPoly g = x.poly();
    if (poly_gcd(K.min_poly(), g).degree() > 0)
        throw std::logic_error("embed_sign: reduced element shares a factor with the defining polynomial");
    RootInterval iv = K.real_roots()[root_index];
    const QPoly& f = K.min_poly();
    for (;;) {
        RatInterval r = eval_interval(g, iv.lo, iv.hi);
        int s = r.sign();
        if (s != 0) return s;
        iv = refine_once(f, iv);
    }
}

// ---------------------------------------------------------------------------
// Square roots within quadratic towers.

namespace detail {
std::optional<AlgElem> sqrt_in_field(const AlgElem& z);

// z = u + v*b with b^2 = delta over the base; all four in the base field.
inline std::optional<AlgElem> sqrt_from_parts(const FieldPtr& K, const AlgElem& u, const AlgElem& v,
                                              const AlgElem& delta, const AlgElem& b_in_K,
                                              const std::function<AlgElem(const AlgElem&)>& embed) {
    if (v.is_zero()) {
        if (auto r = sqrt_in_field(u)) return embed(*r);
        if (auto r = sqrt_in_field(u / delta)) return embed(*r) * b_in_K;
        return std::nullopt;
    }
    AlgElem nm = u * u - delta * v * v;
    auto m = sqrt_in_field(nm);
    if (!m) return std::nullopt;
    for (int s = 1; s >= -1; s -= 2) {
        AlgElem half = (u + *m * Rat(s)) * Rat(1, 2);
        auto c1 = sqrt_in_field(half);
        if (c1 && !c1->is_zero()) {
            AlgElem c2 = v / (*c1 * Rat(2));
            AlgElem cand = embed(*c1) + embed(c2) * b_in_K;
            AlgElem target = embed(u) + embed(v) * b_in_K;
            if (cand * cand == target) return cand;
        }
    }
    return std::nullopt;
}
}  // namespace detail

// Decompose an element of a tower field K = base(b) as (u, v) with z = u + v b.
inline std::pair<AlgElem, AlgElem> tower_decompose(const AlgElem& z) {
    const FieldSpec& K = *z.field();
    if (!K.has_tower()) throw std::invalid_argument("tower_decompose: field has no tower structure");
    const TowerLink& t = K.tower();
    int n = t.base->degree();
    std::vector<Rat> coords(static_cast<size_t>(2 * n), Rat(0));
    for (size_t i = 0; i < coords.size(); ++i) {
        Rat acc(0);
        for (size_t j = 0; j < coords.size(); ++j) acc += t.tower_from_power[i][j] * z.coeff(j);
        coords[i] = acc;
    }
    std::vector<Rat> ucoef(coords.begin(), coords.begin() + n);
    std::vector<Rat> vcoef(coords.begin() + n, coords.end());
    return {t.base->element(std::move(ucoef)), t.base->element(std::move(vcoef))};
}

// Image of a base-field element in the tower field.
inline AlgElem tower_embed(const FieldPtr& K, const AlgElem& x) {
    if (!K->has_tower()) throw std::invalid_argument("tower_embed: field has no tower structure");
    const TowerLink& t = K->tower();
    if (x.field().get() != t.base.get()) throw std::invalid_argument("tower_embed: element not in the base field");
    AlgElem theta = eval_poly(t.base_gen_image, K->generator());
    return eval_poly(x.poly(), theta);
}

inline AlgElem tower_sqrt_elem(const FieldPtr& K) {
    return eval_poly(K->tower().sqrt_image, K->generator());
}

// Conjugation of the degree-2 step: u + v b -> u - v b.
inline AlgElem tower_conj(const AlgElem& z) {
    auto [u, v] = tower_decompose(z);
    const FieldPtr K = z.field();
    return tower_embed(K, u) - tower_embed(K, v) * tower_sqrt_elem(K);
}

namespace detail {
inline std::optional<AlgElem> sqrt_in_field(const AlgElem& z) {
    const FieldPtr K = z.field();
    if (z.is_zero()) return K->zero();
    if (K->degree() == 1) {
        auto r = rat_sqrt(z.rational_value());
        if (!r) return std::nullopt;
        return K->from_rat(*r);
    }
    if (K->has_tower()) {
        auto [u, v] = tower_decompose(z);
        AlgElem delta = K->tower().base->element(K->tower().delta_coeffs);
        AlgElem b = tower_sqrt_elem(K);
        return sqrt_from_parts(K, u, v, delta, b, [&](const AlgElem& x) { return tower_embed(K, x); });
    }
    if (K->degree() == 2) {
        // implicit tower over Q: theta^2 + p theta + q = 0, b = theta + p/2
        Rat p = K->min_poly()[1], q = K->min_poly()[0];
        Rat delta = p * p / 4 - q;
        FieldPtr QQ = FieldSpec::rationals();
        AlgElem u = QQ->from_rat(z.coeff(0) - z.coeff(1) * p / 2);
        AlgElem v = QQ->from_rat(z.coeff(1));
        AlgElem b = K->generator() + K->from_rat(p / 2);
        return sqrt_from_parts(K, u, v, QQ->from_rat(delta), b,
                               [&](const AlgElem& x) { return K->from_rat(x.rational_value()); });
    }
    throw std::invalid_argument("sqrt_in_field: field has no usable tower structure");
}
}  // namespace detail

// Exact square root in the field, when one exists. Supported for Q, for any
// quadratic field, and for any field built through adjoin_square_root.
inline std::optional<AlgElem> field_sqrt(const AlgElem& z) { return detail::sqrt_in_field(z); }

// c with x = c^2 * y, if one exists (y != 0).
inline std::optional<AlgElem> is_square_ratio(const AlgElem& x, const AlgElem& y) {
    if (y.is_zero()) throw std::invalid_argument("is_square_ratio: y must be nonzero");
    return field_sqrt(x / y);
}

struct DeltaIsSquareError : std::domain_error {
    explicit DeltaIsSquareError(std::string sqrt_str)
        : std::domain_error("adjoin_square_root: delta is already a square, sqrt = " + sqrt_str),
          sqrt_repr(std::move(sqrt_str)) {}
    std::string sqrt_repr;
};

// ---------------------------------------------------------------------------
// Quadratic extension by a square root, presented absolutely.

inline FieldPtr adjoin_square_root(const FieldPtr& base, const AlgElem& delta, const std::string& label,
                                   const std::string& gen_name) {
    if (delta.field().get() != base.get()) throw std::invalid_argument("adjoin_square_root: delta not in base");
    if (delta.is_zero()) throw std::invalid_argument("adjoin_square_root: delta must be nonzero");
    if (auto r = field_sqrt(delta)) throw DeltaIsSquareError(r->str());
    const int n = base->degree();
    const int N = 2 * n;
    if (N > 8) throw std::invalid_argument("adjoin_square_root: resulting degree exceeds the cap of 8");

    // Abstract elements of base[b]/(b^2 - delta) as pairs (u, v) = u + v b.
    using Pair = std::pair<AlgElem, AlgElem>;
    auto mul = [&](const Pair& a, const Pair& b) -> Pair {
        return {a.first * b.first + delta * a.second * b.second, a.first * b.second + a.second * b.first};
    };
    auto flatten = [&](const Pair& a) {
        std::vector<Rat> v;
        v.reserve(static_cast<size_t>(N));
        for (const auto& c : a.first.coeffs()) v.push_back(c);
        for (const auto& c : a.second.coeffs()) v.push_back(c);
        return v;
    };

    for (int shift = 0; shift <= 8; ++shift) {
        // alpha = b + c*theta, scanning c = 0, 1, -1, 2, -2, ...
        Rat c = (shift % 2 == 0) ? Rat(shift / 2) : Rat(-(shift + 1) / 2);
        Pair alpha{base->generator() * c, base->one()};
        std::vector<Pair> powers;
        powers.push_back({base->one(), base->zero()});
        for (int k = 1; k <= N; ++k) powers.push_back(mul(powers.back(), alpha));

        // columns alpha^0 .. alpha^(N-1); solve for alpha^N
        std::vector<std::vector<Rat>> m(static_cast<size_t>(N), std::vector<Rat>(static_cast<size_t>(N + 1)));
        for (int k = 0; k <= N; ++k) {
            auto col = flatten(powers[static_cast<size_t>(k)]);
            for (int i = 0; i < N; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(k)] = col[static_cast<size_t>(i)];
        }
        // Gaussian elimination on the N x (N+1) system
        std::vector<std::vector<Rat>> a = m;
        std::vector<int> pivot_col(static_cast<size_t>(N), -1);
        int row = 0;
        for (int col = 0; col < N && row < N; ++col) {
            int pr = -1;
            for (int r = row; r < N; ++r)
                if (sgn(a[static_cast<size_t>(r)][static_cast<size_t>(col)]) != 0) {
                    pr = r;
                    break;
                }
            if (pr < 0) continue;
            std::swap(a[static_cast<size_t>(pr)], a[static_cast<size_t>(row)]);
            Rat inv = Rat(1) / a[static_cast<size_t>(row)][static_cast<size_t>(col)];
            for (int j = col; j <= N; ++j) a[static_cast<size_t>(row)][static_cast<size_t>(j)] *= inv;
            for (int r = 0; r < N; ++r) {
                if (r == row) continue;
                Rat f = a[static_cast<size_t>(r)][static_cast<size_t>(col)];
                if (sgn(f) == 0) continue;
                for (int j = col; j <= N; ++j)
                    a[static_cast<size_t>(r)][static_cast<size_t>(j)] -= f * a[static_cast<size_t>(row)][static_cast<size_t>(j)];
            }
            pivot_col[static_cast<size_t>(row)] = col;
            ++row;
        }
        if (row < N) continue;  // alpha not primitive, try the next shift

        // min poly: x^N - sum coeffs; solution of M x = alpha^N is in the last column
        std::vector<Rat> sol(static_cast<size_t>(N));
        for (int r = 0; r < N; ++r) sol[static_cast<size_t>(pivot_col[static_cast<size_t>(r)])] = a[static_cast<size_t>(r)][static_cast<size_t>(N)];
        std::vector<Rat> fc(static_cast<size_t>(N) + 1);
        for (int i = 0; i < N; ++i) fc[static_cast<size_t>(i)] = -sol[static_cast<size_t>(i)];
        fc[static_cast<size_t>(N)] = Rat(1);
        QPoly f(fc);

        // invert M to express tower basis vectors in alpha powers
        std::vector<std::vector<Rat>> M(static_cast<size_t>(N), std::vector<Rat>(static_cast<size_t>(N)));
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < N; ++k) M[static_cast<size_t>(i)][static_cast<size_t>(k)] = m[static_cast<size_t>(i)][static_cast<size_t>(k)];
        // Minv via Gauss-Jordan
        std::vector<std::vector<Rat>> aug(static_cast<size_t>(N), std::vector<Rat>(static_cast<size_t>(2 * N), Rat(0)));
        for (int i = 0; i < N; ++i) {
            for (int j = 0; j < N; ++j) aug[static_cast<size_t>(i)][static_cast<size_t>(j)] = M[static_cast<size_t>(i)][static_cast<size_t>(j)];
            aug[static_cast<size_t>(i)][static_cast<size_t>(N + i)] = Rat(1);
        }
        for (int col = 0; col < N; ++col) {
            int pr = -1;
            for (int r = col; r < N; ++r)
                if (sgn(aug[static_cast<size_t>(r)][static_cast<size_t>(col)]) != 0) {
                    pr = r;
                    break;
                }
            std::swap(aug[static_cast<size_t>(pr)], aug[static_cast<size_t>(col)]);
            Rat inv = Rat(1) / aug[static_cast<size_t>(col)][static_cast<size_t>(col)];
            for (int j = 0; j < 2 * N; ++j) aug[static_cast<size_t>(col)][static_cast<size_t>(j)] *= inv;
            for (int r = 0; r < N; ++r) {
                if (r == col) continue;
                Rat fmul = aug[static_cast<size_t>(r)][static_cast<size_t>(col)];
                if (sgn(fmul) == 0) continue;
                for (int j = 0; j < 2 * N; ++j)
                    aug[static_cast<size_t>(r)][static_cast<size_t>(j)] -= fmul * aug[static_cast<size_t>(col)][static_cast<size_t>(j)];
            }
        }
        std::vector<std::vector<Rat>> Minv(static_cast<size_t>(N), std::vector<Rat>(static_cast<size_t>(N)));
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) Minv[static_cast<size_t>(i)][static_cast<size_t>(j)] = aug[static_cast<size_t>(i)][static_cast<size_t>(N + j)];

        // theta = tower basis vector e_1 (for n >= 2; for base Q theta = 0);
        // b = tower basis vector e_n
        auto col_to_poly = [&](int basis_index) {
            std::vector<Rat> v(static_cast<size_t>(N));
            for (int i = 0; i < N; ++i) v[static_cast<size_t>(i)] = Minv[static_cast<size_t>(i)][static_cast<size_t>(basis_index)];
            return QPoly(std::move(v));
        };
        QPoly theta_image = (n >= 2) ? col_to_poly(1) : QPoly::zero();
        QPoly b_image = col_to_poly(n);

        TowerLink link{base, delta.coeffs(), theta_image, b_image, M};
        return FieldPtr(new FieldSpec(f, label, gen_name, std::move(link)));
    }
    throw std::logic_error("adjoin_square_root: no primitive element found (should not happen)");
}

}  // namespace qhmf
