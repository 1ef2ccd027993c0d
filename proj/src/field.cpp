#include "strat/field.hpp"

namespace strat {

namespace {

// Dense F_p[x] arithmetic on small coefficient vectors (lowest degree first).
using PolyFp = std::vector<int>;

void trim(PolyFp& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyFp poly_mul(const PolyFp& a, const PolyFp& b, int p) {
    if (a.empty() || b.empty()) return {};
    PolyFp c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    trim(c);
    return c;
}

// a mod b, b monic.
PolyFp poly_mod(PolyFp a, const PolyFp& b, int p) {
    trim(a);
    while (a.size() >= b.size()) {
        int lead = a.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) {
            a[i + shift] = ((a[i + shift] - lead * b[i]) % p + p) % p;
        }
        trim(a);
    }
    return a;
}

bool poly_divides(const PolyFp& d, const PolyFp& a, int p) {
    return poly_mod(a, d, p).empty();
}

// Irreducibility by trial division against every monic divisor of degree
// 1..deg/2; fine at this size (p^e <= 125).
bool is_irreducible(const PolyFp& m, int p) {
    int deg = static_cast<int>(m.size()) - 1;
    if (deg < 1) return false;
    for (int d = 1; 2 * d <= deg; ++d) {
        int count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (int code = 0; code < count; ++code) {
            PolyFp div(d + 1, 0);
            div[d] = 1;
            int c = code;
            for (int i = 0; i < d; ++i) {
                div[i] = c % p;
                c /= p;
            }
            // normalize monic candidate (it already is), then test
            if (poly_divides(div, m, p)) return false;
        }
    }
    return true;
}

int encode(const PolyFp& a, int p, int e) {
    int v = 0;
    for (int i = e - 1; i >= 0; --i) v = v * p + (i < static_cast<int>(a.size()) ? a[i] : 0);
    return v;
}

PolyFp decode(int v, int p, int e) {
    PolyFp a(e, 0);
    for (int i = 0; i < e; ++i) {
        a[i] = v % p;
        v /= p;
    }
    trim(a);
    return a;
}

}  // namespace

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Field Field::prime(int p) { return extension(p, 1); }

Field Field::extension(int p, int e) {
    if (e == 1) {
        std::vector<int> m = {0, 1};  // x
        return extension(p, 1, std::move(m));
    }
    // scan constant-coefficients lexicographically for the first irreducible
    int count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (int code = 0; code < count; ++code) {
        PolyFp m(e + 1, 0);
        m[e] = 1;
        int c = code;
        for (int i = 0; i < e; ++i) {
            m[i] = c % p;
            c /= p;
        }
        if (is_irreducible(m, p)) {
            std::vector<int> mod(m.begin(), m.end());
            mod.resize(e + 1, 0);
            mod[e] = 1;
            return extension(p, e, std::move(mod));
        }
    }
    throw std::logic_error("no irreducible modulus found");
}

Field Field::extension(int p, int e, std::vector<int> modulus) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (e < 1) throw std::invalid_argument("extension degree must be >= 1");
    int q = 1;
    for (int i = 0; i < e; ++i) {
        q *= p;
        if (q > 125) throw std::invalid_argument("fields with p^e > 125 are unsupported");
    }
    if (static_cast<int>(modulus.size()) != e + 1 || modulus[e] != 1)
        throw std::invalid_argument("modulus must be monic of degree e");
    for (int& c : modulus) c = ((c % p) + p) % p;
    if (e > 1) {
        PolyFp m(modulus.begin(), modulus.end());
        if (!is_irreducible(m, p)) throw std::invalid_argument("modulus is reducible");
    }

    auto d = std::make_shared<Data>();
    d->p = p;
    d->e = e;
    d->q = q;
    d->modulus = modulus;
    d->add.resize(static_cast<size_t>(q) * q);
    d->mul.resize(static_cast<size_t>(q) * q);
    d->neg.resize(q);
    d->inv.resize(q, 0);
    PolyFp m(modulus.begin(), modulus.end());
    for (int a = 0; a < q; ++a) {
        PolyFp pa = decode(a, p, e);
        PolyFp na = pa;
        for (int& c : na) c = (p - c) % p;
        d->neg[a] = static_cast<uint8_t>(encode(na, p, e));
        for (int b = 0; b < q; ++b) {
            PolyFp pb = decode(b, p, e);
            PolyFp s(std::max(pa.size(), pb.size()), 0);
            for (size_t i = 0; i < s.size(); ++i) {
                int x = (i < pa.size() ? pa[i] : 0) + (i < pb.size() ? pb[i] : 0);
                s[i] = x % p;
            }
            d->add[static_cast<size_t>(a) * q + b] = static_cast<uint8_t>(encode(s, p, e));
            PolyFp prod = poly_mod(poly_mul(pa, pb, p), m, p);
            int pv = encode(prod, p, e);
            d->mul[static_cast<size_t>(a) * q + b] = static_cast<uint8_t>(pv);
            if (pv == 1) {
                d->inv[a] = static_cast<uint8_t>(b);
                // inverse recorded; loop continues for the tables
            }
        }
    }
    return Field(std::move(d));
}

int Field::pow(int a, long long n) const {
    if (n < 0) {
        a = inv(a);
        n = -n;
    }
    int r = 1;
    while (n > 0) {
        if (n & 1) r = mul(r, a);
        a = mul(a, a);
        n >>= 1;
    }
    return r;
}

}  // namespace strat
