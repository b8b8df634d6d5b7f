#include "axrel/field/exact_real.hpp"

#include "axrel/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <span>
#include <utility>

namespace axrel {

namespace {

using Coords = std::vector<mpq_class>;
using CSpan = std::span<const mpq_class>;

// Fixed-point precision of the dyadic enclosures, in bits.
constexpr unsigned long kPrecision = 256;
constexpr std::size_t kMaxDepth = 14;

// [lo, hi] * 2^-kPrecision
struct Dyadic {
    mpz_class lo;
    mpz_class hi;
};

Dyadic dyadic_from(const mpq_class& q) {
    mpz_class num = q.get_num();
    mpz_class den = q.get_den();
    mpz_class scaled;
    mpz_mul_2exp(scaled.get_mpz_t(), num.get_mpz_t(), kPrecision);
    Dyadic d;
    mpz_fdiv_q(d.lo.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
    mpz_cdiv_q(d.hi.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
    return d;
}

Dyadic dadd(const Dyadic& a, const Dyadic& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Dyadic dmul(const Dyadic& a, const Dyadic& b) {
    mpz_class c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    mpz_class mn = c[0], mx = c[0];
    for (const auto& x : c) {
        if (x < mn) mn = x;
        if (x > mx) mx = x;
    }
    Dyadic d;
    mpz_fdiv_q_2exp(d.lo.get_mpz_t(), mn.get_mpz_t(), kPrecision);
    mpz_cdiv_q_2exp(d.hi.get_mpz_t(), mx.get_mpz_t(), kPrecision);
    return d;
}

// Enclosure of sqrt of a non-negative value enclosed by `a`.
Dyadic dyadic_sqrt(const Dyadic& a) {
    auto root = [](const mpz_class& v, bool ceil) {
        if (v <= 0) return mpz_class(0);
        mpz_class shifted;
        mpz_mul_2exp(shifted.get_mpz_t(), v.get_mpz_t(), kPrecision);
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), shifted.get_mpz_t());
        if (ceil && r * r < shifted) r += 1;
        return r;
    };
    return {root(a.lo, false), root(a.hi, true)};
}

mpq_class dyadic_to_q(const mpz_class& v) {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, kPrecision);
    mpq_class q(v, den);
    q.canonicalize();
    return q;
}

bool all_zero(CSpan a) {
    return std::all_of(a.begin(), a.end(), [](const mpq_class& x) { return sgn(x) == 0; });
}

}  // namespace

namespace detail {

struct TowerNode {
    std::shared_ptr<const TowerNode> parent;
    Coords radicand;  // coordinates over `parent`, size 2^(depth-1)
    std::size_t depth = 0;
    Dyadic root;  // enclosure of sqrt(radicand)
};

}  // namespace detail

using detail::TowerNode;
using TowerPtr = std::shared_ptr<const TowerNode>;

// Coordinate-level algorithms. A null node is Q; a node of depth k carries
// 2^k coordinates.
class TowerOps {
public:
    static std::size_t depth(const TowerNode* t) { return t ? t->depth : 0; }
    static std::size_t size(const TowerNode* t) { return std::size_t{1} << depth(t); }

    static Coords add(CSpan a, CSpan b) {
        Coords r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
        return r;
    }
    static Coords sub(CSpan a, CSpan b) {
        Coords r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
        return r;
    }
    static Coords scale(CSpan a, const mpq_class& s) {
        Coords r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
        return r;
    }
    static Coords neg(CSpan a) {
        Coords r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
        return r;
    }
    static Coords pad(CSpan a, std::size_t n) {
        Coords r(n, mpq_class(0));
        std::copy(a.begin(), a.end(), r.begin());
        return r;
    }
    static Coords concat(CSpan lo, CSpan hi) {
        Coords r(lo.begin(), lo.end());
        r.insert(r.end(), hi.begin(), hi.end());
        return r;
    }

    static Coords mul(const TowerNode* t, CSpan a, CSpan b) {
        if (!t) return {a[0] * b[0]};
        const std::size_t h = a.size() / 2;
        const TowerNode* p = t->parent.get();
        CSpan a0 = a.first(h), a1 = a.subspan(h), b0 = b.first(h), b1 = b.subspan(h);
        const bool a1z = all_zero(a1), b1z = all_zero(b1);
        if (a1z && b1z) return pad(mul(p, a0, b0), a.size());
        if (a1z) return concat(mul(p, a0, b0), mul(p, a0, b1));
        if (b1z) return concat(mul(p, a0, b0), mul(p, a1, b0));
        Coords r0 = add(mul(p, a0, b0), mul(p, mul(p, a1, b1), t->radicand));
        Coords r1 = add(mul(p, a0, b1), mul(p, a1, b0));
        return concat(r0, r1);
    }

    static Coords inv(const TowerNode* t, CSpan a) {
        if (!t) {
            if (sgn(a[0]) == 0) throw DivisionByZero("division by zero");
            return {1 / a[0]};
        }
        const std::size_t h = a.size() / 2;
        const TowerNode* p = t->parent.get();
        CSpan a0 = a.first(h), a1 = a.subspan(h);
        if (all_zero(a1)) return pad(inv(p, a0), a.size());
        // 1/(a0 + a1 r) = (a0 - a1 r) / (a0^2 - a1^2 d); the norm is non-zero
        // because d is not a square below t.
        Coords norm = sub(mul(p, a0, a0), mul(p, mul(p, a1, a1), t->radicand));
        Coords ni = inv(p, norm);
        return concat(mul(p, a0, ni), neg(mul(p, a1, ni)));
    }

    static Dyadic enclose(const TowerNode* t, CSpan a) {
        if (!t) return dyadic_from(a[0]);
        const std::size_t h = a.size() / 2;
        CSpan a0 = a.first(h), a1 = a.subspan(h);
        Dyadic lo = enclose(t->parent.get(), a0);
        if (all_zero(a1)) return lo;
        return dadd(lo, dmul(enclose(t->parent.get(), a1), t->root));
    }

    static int sign(const TowerNode* t, CSpan a) {
        if (all_zero(a)) return 0;
        if (!t) return sgn(a[0]);
        Dyadic d = enclose(t, a);
        if (d.lo > 0) return 1;
        if (d.hi < 0) return -1;
        return exact_sign(t, a);
    }

    // sign(a0 + a1 sqrt(d)) through the signs of a0, a1 and the norm.
    static int exact_sign(const TowerNode* t, CSpan a) {
        if (!t) return sgn(a[0]);
        const std::size_t h = a.size() / 2;
        const TowerNode* p = t->parent.get();
        CSpan a0 = a.first(h), a1 = a.subspan(h);
        int s0 = sign(p, a0);
        int s1 = sign(p, a1);
        if (s1 == 0) return s0;
        if (s0 == 0 || s0 == s1) return s1;
        Coords norm = sub(mul(p, a0, a0), mul(p, mul(p, a1, a1), t->radicand));
        int sn = sign(p, norm);
        return s0 > 0 ? sn : -sn;
    }

    // Some square root of `a` inside t, if one exists (sign unspecified).
    static std::optional<Coords> sqrt_in(const TowerNode* t, CSpan a) {
        if (!t) {
            const mpq_class& q = a[0];
            if (sgn(q) < 0) return std::nullopt;
            if (sgn(q) == 0) return Coords{mpq_class(0)};
            if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
                return std::nullopt;
            mpz_class n, d;
            mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
            mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
            return Coords{mpq_class(n, d)};
        }
        const std::size_t h = a.size() / 2;
        const TowerNode* p = t->parent.get();
        CSpan a0 = a.first(h), a1 = a.subspan(h);
        if (all_zero(a1)) {
            if (auto x = sqrt_in(p, a0)) return pad(*x, a.size());
            Coords q = mul(p, a0, inv(p, t->radicand));
            if (auto y = sqrt_in(p, q)) return concat(Coords(h, mpq_class(0)), *y);
            return std::nullopt;
        }
        // (x + y r)^2 = a0 + a1 r  =>  x^2 - y^2 d = +-sqrt(N), N = a0^2 - a1^2 d.
        Coords norm = sub(mul(p, a0, a0), mul(p, mul(p, a1, a1), t->radicand));
        auto n = sqrt_in(p, norm);
        if (!n) return std::nullopt;
        const mpq_class half(1, 2);
        for (int s : {1, -1}) {
            Coords cand = scale(s > 0 ? add(a0, *n) : sub(a0, *n), half);
            if (all_zero(cand)) continue;
            auto x = sqrt_in(p, cand);
            if (!x) continue;
            Coords y = mul(p, a1, inv(p, scale(*x, mpq_class(2))));
            return concat(*x, y);
        }
        return std::nullopt;
    }

    static TowerPtr adjoin(TowerPtr parent, Coords radicand) {
        auto node = std::make_shared<TowerNode>();
        node->depth = depth(parent.get()) + 1;
        if (node->depth > kMaxDepth) throw Error("square-root tower exceeds maximum depth");
        node->root = dyadic_sqrt(enclose(parent.get(), radicand));
        node->radicand = std::move(radicand);
        node->parent = std::move(parent);
        return node;
    }

    static bool same_tower(const TowerNode* a, const TowerNode* b) {
        while (true) {
            if (a == b) return true;
            if (!a || !b) return false;
            if (a->depth != b->depth) return false;
            if (a->radicand != b->radicand) return false;
            a = a->parent.get();
            b = b->parent.get();
        }
    }

    static std::vector<const TowerNode*> chain(const TowerNode* t) {
        std::vector<const TowerNode*> c(depth(t) + 1, nullptr);
        for (const TowerNode* n = t; n; n = n->parent.get()) c[n->depth] = n;
        return c;
    }

    static TowerPtr ancestor(const TowerPtr& t, std::size_t d) {
        TowerPtr n = t;
        while (n && n->depth > d) n = n->parent;
        return n;
    }

    // Drops generators no coordinate and no kept radicand depends on.
    static ExactReal compress(TowerPtr t, Coords coords) {
        const std::size_t k = depth(t.get());
        if (k == 0) return ExactReal(std::move(t), std::move(coords));
        std::size_t used = 0;
        for (std::size_t m = 0; m < coords.size(); ++m)
            if (sgn(coords[m]) != 0) used |= m;
        auto nodes = chain(t.get());
        for (std::size_t i = k; i-- > 0;) {
            if (!(used & (std::size_t{1} << i))) continue;
            const Coords& rad = nodes[i + 1]->radicand;
            for (std::size_t m = 0; m < rad.size(); ++m)
                if (sgn(rad[m]) != 0) used |= m;
        }
        const std::size_t full = (std::size_t{1} << k) - 1;
        if (used == full) return ExactReal(std::move(t), std::move(coords));
        std::size_t top = 0;
        while ((used >> top) != 0) ++top;
        if (used == (std::size_t{1} << top) - 1) {
            coords.resize(std::size_t{1} << top);
            return ExactReal(ancestor(t, top), std::move(coords));
        }
        std::vector<std::size_t> kept;
        for (std::size_t i = 0; i < k; ++i)
            if (used & (std::size_t{1} << i)) kept.push_back(i);
        auto remap = [&](const Coords& src, std::size_t new_size) {
            Coords dst(new_size, mpq_class(0));
            for (std::size_t m = 0; m < src.size(); ++m) {
                if (sgn(src[m]) == 0) continue;
                std::size_t nm = 0;
                for (std::size_t j = 0; j < kept.size(); ++j)
                    if (m & (std::size_t{1} << kept[j])) nm |= std::size_t{1} << j;
                dst[nm] = src[m];
            }
            return dst;
        };
        TowerPtr nt;
        for (std::size_t j = 0; j < kept.size(); ++j) {
            const TowerNode* old = nodes[kept[j] + 1];
            auto node = std::make_shared<TowerNode>();
            node->depth = j + 1;
            node->radicand = remap(old->radicand, std::size_t{1} << j);
            node->root = old->root;
            node->parent = nt;
            nt = node;
        }
        Coords nc = remap(coords, std::size_t{1} << kept.size());
        return ExactReal(std::move(nt), std::move(nc));
    }

    struct Unified {
        TowerPtr tower;
        Coords a;
        Coords b;
    };

    struct MergePlan {
        TowerPtr tower;
        std::size_t common = 0;           // depth of the shared prefix
        std::vector<Coords> images;       // images of b's generators above `common`
    };

    // Images of b-tower generators are computed once per tower pair.
    static const MergePlan& plan(const TowerPtr& ta, const TowerPtr& tb) {
        thread_local std::map<std::pair<const void*, const void*>, std::pair<std::pair<TowerPtr, TowerPtr>, MergePlan>> cache;
        auto key = std::make_pair(static_cast<const void*>(ta.get()), static_cast<const void*>(tb.get()));
        auto it = cache.find(key);
        if (it != cache.end()) return it->second.second;
        if (cache.size() > 4096) cache.clear();

        auto ca = chain(ta.get());
        auto cb = chain(tb.get());
        std::size_t common = 0;
        while (common + 1 < ca.size() && common + 1 < cb.size() &&
               same_tower(ca[common + 1], cb[common + 1]))
            ++common;

        MergePlan mp;
        mp.common = common;
        mp.tower = ta;
        for (std::size_t j = common + 1; j < cb.size(); ++j) {
            Coords value = map_into(mp, cb[j]->radicand, j - 1);
            auto root = sqrt_in(mp.tower.get(), value);
            if (root) {
                if (sign(mp.tower.get(), *root) < 0) *root = neg(*root);
                mp.images.push_back(std::move(*root));
            } else {
                mp.tower = adjoin(mp.tower, std::move(value));
                const std::size_t n = size(mp.tower.get());
                for (auto& img : mp.images) img = pad(img, n);
                Coords gen(n, mpq_class(0));
                gen[n / 2] = 1;
                mp.images.push_back(std::move(gen));
            }
        }
        auto& slot = cache[key];
        slot.first = {ta, tb};
        slot.second = std::move(mp);
        return slot.second;
    }

    // Maps coordinates over b's prefix of depth `d` (d >= common) into plan.tower.
    static Coords map_into(const MergePlan& mp, CSpan src, std::size_t d) {
        const std::size_t n = size(mp.tower.get());
        const std::size_t low = std::size_t{1} << mp.common;
        Coords out(n, mpq_class(0));
        const std::size_t highs = std::size_t{1} << (d - mp.common);
        for (std::size_t hmask = 0; hmask < highs; ++hmask) {
            CSpan slice = src.subspan(hmask * low, low);
            if (all_zero(slice)) continue;
            Coords term = pad(slice, n);
            for (std::size_t j = 0; j < d - mp.common; ++j)
                if (hmask & (std::size_t{1} << j)) term = mul(mp.tower.get(), term, mp.images[j]);
            out = add(out, term);
        }
        return out;
    }

    static Unified unify(const ExactReal& x, const ExactReal& y) {
        const TowerPtr& ta = x.tower_;
        const TowerPtr& tb = y.tower_;
        if (same_tower(ta.get(), tb.get())) return {ta, x.coords_, y.coords_};
        const std::size_t da = depth(ta.get()), db = depth(tb.get());
        if (da < db && same_tower(ta.get(), ancestor(tb, da).get()))
            return {tb, pad(x.coords_, size(tb.get())), y.coords_};
        if (db < da && same_tower(tb.get(), ancestor(ta, db).get()))
            return {ta, x.coords_, pad(y.coords_, size(ta.get()))};
        const MergePlan& mp = plan(ta, tb);
        return {mp.tower, pad(x.coords_, size(mp.tower.get())), map_into(mp, y.coords_, db)};
    }

    static std::string rational_str(const mpq_class& q) { return q.get_str(); }

    static std::string to_string(const TowerPtr& t, const Coords& c) {
        auto nodes = chain(t.get());
        std::vector<std::string> gens;
        for (std::size_t i = 1; i < nodes.size(); ++i) {
            ExactReal rad = compress(nodes[i]->parent, nodes[i]->radicand);
            gens.push_back("sqrt(" + rad.to_string() + ")");
        }
        std::string out;
        for (std::size_t m = 0; m < c.size(); ++m) {
            if (sgn(c[m]) == 0) continue;
            mpq_class coef = c[m];
            bool negative = sgn(coef) < 0;
            if (negative) coef = -coef;
            std::string term;
            if (m == 0) {
                term = rational_str(coef);
            } else {
                if (coef != 1) term = rational_str(coef) + "*";
                bool first = true;
                for (std::size_t i = 0; i < gens.size(); ++i) {
                    if (!(m & (std::size_t{1} << i))) continue;
                    if (!first) term += "*";
                    term += gens[i];
                    first = false;
                }
            }
            if (out.empty())
                out = negative ? "-" + term : term;
            else
                out += (negative ? " - " : " + ") + term;
        }
        return out.empty() ? "0" : out;
    }
};

ExactReal::ExactReal(const mpq_class& q) : coords_{q} { coords_[0].canonicalize(); }

ExactReal::ExactReal(TowerPtr tower, std::vector<mpq_class> coords)
    : tower_(std::move(tower)), coords_(std::move(coords)) {}

ExactReal ExactReal::make(TowerPtr tower, std::vector<mpq_class> coords) {
    return TowerOps::compress(std::move(tower), std::move(coords));
}

ExactReal ExactReal::rational(long num, long den) {
    if (den == 0) throw DivisionByZero("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return ExactReal(q);
}

std::optional<mpq_class> ExactReal::as_rational() const {
    if (tower_) return std::nullopt;
    return coords_[0];
}

std::size_t ExactReal::tower_depth() const { return TowerOps::depth(tower_.get()); }

std::vector<ExactReal> ExactReal::radicands() const {
    std::vector<ExactReal> out;
    auto nodes = TowerOps::chain(tower_.get());
    for (std::size_t i = 1; i < nodes.size(); ++i)
        out.push_back(make(nodes[i]->parent, nodes[i]->radicand));
    return out;
}

bool ExactReal::is_zero() const { return all_zero(coords_); }

int ExactReal::sign() const { return TowerOps::sign(tower_.get(), coords_); }

ExactReal ExactReal::operator-() const { return ExactReal(tower_, TowerOps::neg(coords_)); }

ExactReal operator+(const ExactReal& a, const ExactReal& b) {
    if (!a.tower_ && !b.tower_) return ExactReal(a.coords_[0] + b.coords_[0]);
    auto u = TowerOps::unify(a, b);
    return ExactReal::make(u.tower, TowerOps::add(u.a, u.b));
}

ExactReal operator-(const ExactReal& a, const ExactReal& b) {
    if (!a.tower_ && !b.tower_) return ExactReal(a.coords_[0] - b.coords_[0]);
    auto u = TowerOps::unify(a, b);
    return ExactReal::make(u.tower, TowerOps::sub(u.a, u.b));
}

ExactReal operator*(const ExactReal& a, const ExactReal& b) {
    if (!a.tower_ && !b.tower_) return ExactReal(a.coords_[0] * b.coords_[0]);
    if (!b.tower_) return ExactReal::make(a.tower_, TowerOps::scale(a.coords_, b.coords_[0]));
    if (!a.tower_) return ExactReal::make(b.tower_, TowerOps::scale(b.coords_, a.coords_[0]));
    auto u = TowerOps::unify(a, b);
    return ExactReal::make(u.tower, TowerOps::mul(u.tower.get(), u.a, u.b));
}

ExactReal operator/(const ExactReal& a, const ExactReal& b) {
    if (b.is_zero()) throw DivisionByZero("division by zero");
    if (!b.tower_) return ExactReal::make(a.tower_, TowerOps::scale(a.coords_, 1 / b.coords_[0]));
    auto u = TowerOps::unify(a, b);
    Coords ib = TowerOps::inv(u.tower.get(), u.b);
    return ExactReal::make(u.tower, TowerOps::mul(u.tower.get(), u.a, ib));
}

bool operator==(const ExactReal& a, const ExactReal& b) {
    if (!a.tower_ && !b.tower_) return a.coords_[0] == b.coords_[0];
    return (a - b).is_zero();
}

std::strong_ordering operator<=>(const ExactReal& a, const ExactReal& b) {
    int s = (a - b).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

namespace {

// Splits q = s^2 * m with m an integer whose small square factors are removed.
std::pair<mpq_class, mpz_class> square_part(const mpq_class& q) {
    mpz_class m = q.get_num() * q.get_den();
    mpz_class s = 1;
    for (unsigned long p = 2; p < 2000; p += (p == 2 ? 1 : 2)) {
        mpz_class pp = p * p;
        if (pp > m) break;
        while (mpz_divisible_p(m.get_mpz_t(), pp.get_mpz_t())) {
            m /= pp;
            s *= p;
        }
    }
    if (mpz_perfect_square_p(m.get_mpz_t())) {
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
        s *= r;
        m = 1;
    }
    mpq_class coef(s, q.get_den());
    coef.canonicalize();
    return {coef, m};
}

}  // namespace

ExactReal ExactReal::sqrt() const {
    int s = sign();
    if (s < 0) throw NegativeRadicand("square root of negative value " + to_string());
    if (s == 0) return ExactReal();
    if (!tower_) {
        auto [coef, m] = square_part(coords_[0]);
        if (m == 1) return ExactReal(coef);
        TowerPtr node = TowerOps::adjoin(nullptr, Coords{mpq_class(m)});
        return ExactReal(node, Coords{mpq_class(0), coef});
    }
    if (auto r = TowerOps::sqrt_in(tower_.get(), coords_)) {
        if (TowerOps::sign(tower_.get(), *r) < 0) *r = TowerOps::neg(*r);
        return make(tower_, std::move(*r));
    }
    TowerPtr node = TowerOps::adjoin(tower_, coords_);
    const std::size_t n = TowerOps::size(node.get());
    Coords c(n, mpq_class(0));
    c[n / 2] = 1;
    return ExactReal(node, std::move(c));
}

ApproxReal ExactReal::approx() const {
    Dyadic d = TowerOps::enclose(tower_.get(), coords_);
    if (!tower_) return ApproxReal::point(coords_[0]);
    return ApproxReal(dyadic_to_q(d.lo), dyadic_to_q(d.hi));
}

double ExactReal::to_double() const {
    if (!tower_) return coords_[0].get_d();
    return approx().midpoint();
}

std::string ExactReal::to_string() const { return TowerOps::to_string(tower_, coords_); }

std::string ExactReal::to_decimal(int digits) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, to_double());
    return buf;
}

ExactReal arith(const ExactReal& a, const ExactReal& b, ArithOp op) {
    switch (op) {
        case ArithOp::add: return a + b;
        case ArithOp::sub: return a - b;
        case ArithOp::mul: return a * b;
        case ArithOp::div: return a / b;
    }
    return a;
}

Ordering compare(const ExactReal& a, const ExactReal& b) {
    int s = (a - b).sign();
    return s < 0 ? Ordering::less : (s > 0 ? Ordering::greater : Ordering::equal);
}

ExactReal abs(const ExactReal& a) { return a.sign() < 0 ? -a : a; }

const ExactReal& min(const ExactReal& a, const ExactReal& b) { return b < a ? b : a; }
const ExactReal& max(const ExactReal& a, const ExactReal& b) { return a < b ? b : a; }

ExactReal from_double(double v) {
    if (!std::isfinite(v)) throw DomainError("non-finite value has no exact rational");
    mpq_class q(v);
    return ExactReal(q);
}

std::ostream& operator<<(std::ostream& os, const ExactReal& v) { return os << v.to_string(); }

// ---------------------------------------------------------------------------
// Literal parser

namespace {

class LiteralParser {
public:
    explicit LiteralParser(std::string_view s) : s_(s) {}

    ExactReal parse() {
        ExactReal v = expr();
        skip();
        if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw LiteralError("field literal '" + std::string(s_) + "' at offset " + std::to_string(i_) +
                           ": " + msg);
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    ExactReal expr() {
        ExactReal v = term();
        while (true) {
            if (eat('+')) v = v + term();
            else if (eat('-')) v = v - term();
            else return v;
        }
    }
    ExactReal term() {
        ExactReal v = unary();
        while (true) {
            if (eat('*')) v = v * unary();
            else if (eat('/')) v = v / unary();
            else return v;
        }
    }
    ExactReal unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    ExactReal power() {
        ExactReal base = primary();
        if (eat('^')) {
            skip();
            std::size_t start = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            if (start == i_) fail("expected integer exponent");
            int e = std::stoi(std::string(s_.substr(start, i_ - start)));
            ExactReal r(1);
            for (int k = 0; k < e; ++k) r = r * base;
            return r;
        }
        return base;
    }
    ExactReal primary() {
        skip();
        if (i_ >= s_.size()) fail("unexpected end");
        if (eat('(')) {
            ExactReal v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (s_.substr(i_, 4) == "sqrt") {
            i_ += 4;
            if (!eat('(')) fail("expected '(' after sqrt");
            ExactReal v = expr();
            if (!eat(')')) fail("expected ')'");
            return v.sqrt();
        }
        if (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.') return number();
        fail("unexpected '" + std::string(1, s_[i_]) + "'");
    }
    ExactReal number() {
        std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        std::string digits(s_.substr(start, i_ - start));
        std::string frac;
        if (i_ < s_.size() && s_[i_] == '.') {
            ++i_;
            std::size_t fs = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            frac = std::string(s_.substr(fs, i_ - fs));
        }
        if (digits.empty() && frac.empty()) fail("malformed number");
        mpz_class num(digits.empty() ? "0" : digits);
        mpz_class den = 1;
        for (char c : frac) {
            num = num * 10 + (c - '0');
            den *= 10;
        }
        mpq_class q(num, den);
        q.canonicalize();
        return ExactReal(q);
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

}  // namespace

ExactReal ExactReal::parse(std::string_view text) { return LiteralParser(text).parse(); }

}  // namespace axrel
