#include "strat/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace strat {

int mono_total_degree(Mono m, int nvars) {
    int d = 0;
    for (int v = 0; v < nvars; ++v) d += mono_exp(m, v);
    return d;
}

Mono mono_mul(Mono a, Mono b, int nvars) {
    Mono r = 0;
    for (int v = 0; v < nvars; ++v) {
        int e = mono_exp(a, v) + mono_exp(b, v);
        if (e > 255) throw std::overflow_error("monomial exponent overflow");
        r = mono_set(r, v, e);
    }
    return r;
}

bool mono_divides(Mono a, Mono b) {
    // per-byte a <= b, detected without loops over a fixed 8-lane layout
    for (int v = 0; v < 8; ++v)
        if (mono_exp(a, v) > mono_exp(b, v)) return false;
    return true;
}

Mono mono_div(Mono b, Mono a) { return b - a; }

Mono mono_lcm(Mono a, Mono b) {
    Mono r = 0;
    for (int v = 0; v < 8; ++v) r = mono_set(r, v, std::max(mono_exp(a, v), mono_exp(b, v)));
    return r;
}

bool mono_coprime(Mono a, Mono b) {
    for (int v = 0; v < 8; ++v)
        if (mono_exp(a, v) && mono_exp(b, v)) return false;
    return true;
}

namespace {

// grevlex on variables [lo, hi): higher total degree wins; on ties the last
// variable with differing exponent decides, smaller exponent winning.
int grevlex_cmp(Mono a, Mono b, int lo, int hi) {
    int da = 0, db = 0;
    for (int v = lo; v < hi; ++v) {
        da += mono_exp(a, v);
        db += mono_exp(b, v);
    }
    if (da != db) return da < db ? -1 : 1;
    for (int v = hi - 1; v >= lo; --v) {
        int ea = mono_exp(a, v), eb = mono_exp(b, v);
        if (ea != eb) return ea > eb ? -1 : 1;
    }
    return 0;
}

}  // namespace

bool PolyRingData::mono_greater(Mono a, Mono b) const {
    if (block_split > 0) {
        int c = grevlex_cmp(a, b, 0, block_split);
        if (c != 0) return c > 0;
        return grevlex_cmp(a, b, block_split, nvars) > 0;
    }
    return grevlex_cmp(a, b, 0, nvars) > 0;
}

Ring make_ring(int p, int r, int gen_degree, const std::string& prefix) {
    if (!is_prime(p)) throw std::invalid_argument("ring characteristic must be prime");
    if (r < 1 || r > 8) throw std::invalid_argument("ring must have 1..8 variables");
    auto d = std::make_shared<PolyRingData>();
    d->p = p;
    d->nvars = r;
    d->gen_degree = gen_degree;
    for (int i = 1; i <= r; ++i) d->names.push_back(prefix + std::to_string(i));
    d->weights.assign(r, gen_degree);
    return d;
}

bool same_ring(const Ring& a, const Ring& b) {
    if (a == b) return true;
    return a && b && a->p == b->p && a->nvars == b->nvars && a->names == b->names &&
           a->weights == b->weights && a->block_split == b->block_split;
}

Poly::Poly(Ring r, std::vector<Term> terms) : ring_(std::move(r)), terms_(std::move(terms)) {
    normalize();
}

void Poly::normalize() {
    int p = ring_->p;
    for (auto& t : terms_) t.coeff = ((t.coeff % p) + p) % p;
    std::sort(terms_.begin(), terms_.end(), [&](const Term& a, const Term& b) {
        return ring_->mono_greater(a.mono, b.mono);
    });
    std::vector<Term> out;
    for (const auto& t : terms_) {
        if (!out.empty() && out.back().mono == t.mono)
            out.back().coeff = (out.back().coeff + t.coeff) % p;
        else
            out.push_back(t);
        if (!out.empty() && out.back().coeff == 0) out.pop_back();
    }
    terms_ = std::move(out);
}

Poly Poly::constant(Ring r, int c) {
    Poly f(r);
    f.terms_ = {{0, c}};
    f.normalize();
    return f;
}

Poly Poly::variable(Ring r, int v, int exp) {
    if (v < 0 || v >= r->nvars) throw std::invalid_argument("variable index out of range");
    Poly f(r);
    f.terms_ = {{mono_set(0, v, exp), 1}};
    f.normalize();
    return f;
}

Poly Poly::term(Ring r, Mono m, int c) {
    Poly f(r);
    f.terms_ = {{m, c}};
    f.normalize();
    return f;
}

Poly Poly::operator+(const Poly& o) const {
    if (!same_ring(ring_, o.ring_)) throw std::invalid_argument("polynomial ring mismatch");
    int p = ring_->p;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        if (terms_[i].mono == o.terms_[j].mono) {
            int c = (terms_[i].coeff + o.terms_[j].coeff) % p;
            if (c) out.push_back({terms_[i].mono, c});
            ++i;
            ++j;
        } else if (ring_->mono_greater(terms_[i].mono, o.terms_[j].mono)) {
            out.push_back(terms_[i++]);
        } else {
            out.push_back(o.terms_[j++]);
        }
    }
    while (i < terms_.size()) out.push_back(terms_[i++]);
    while (j < o.terms_.size()) out.push_back(o.terms_[j++]);
    Poly f(ring_);
    f.terms_ = std::move(out);
    return f;
}

Poly Poly::operator-(const Poly& o) const { return *this + o.scaled(ring_ ? ring_->p - 1 : 1); }

Poly Poly::scaled(int c) const {
    int p = ring_->p;
    c = ((c % p) + p) % p;
    Poly f(ring_);
    if (c == 0) return f;
    f.terms_ = terms_;
    for (auto& t : f.terms_) t.coeff = (t.coeff * c) % p;
    return f;
}

Poly Poly::times_term(Mono m, int c) const {
    int p = ring_->p;
    c = ((c % p) + p) % p;
    Poly f(ring_);
    if (c == 0) return f;
    f.terms_.reserve(terms_.size());
    for (const auto& t : terms_) f.terms_.push_back({mono_mul(t.mono, m, ring_->nvars), (t.coeff * c) % p});
    // multiplying by a fixed monomial preserves the order of terms
    return f;
}

Poly Poly::operator*(const Poly& o) const {
    if (!same_ring(ring_, o.ring_)) throw std::invalid_argument("polynomial ring mismatch");
    Poly acc(ring_);
    if (terms_.size() > o.terms_.size()) return o * (*this);
    for (const auto& t : terms_) acc = acc + o.times_term(t.mono, t.coeff);
    return acc;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    Field f = Field::prime(ring_->p);
    return scaled(f.inv(lead().coeff));
}

bool Poly::operator==(const Poly& o) const {
    if (!same_ring(ring_, o.ring_)) return false;
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].mono != o.terms_[i].mono || terms_[i].coeff != o.terms_[i].coeff) return false;
    return true;
}

int Poly::total_degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, mono_total_degree(t.mono, ring_->nvars));
    return d;
}

int Poly::weighted_degree() const {
    int d = -1;
    for (const auto& t : terms_) {
        int w = 0;
        for (int v = 0; v < ring_->nvars; ++v) w += ring_->weights[v] * mono_exp(t.mono, v);
        d = std::max(d, w);
    }
    return d;
}

bool Poly::is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = -1;
    for (const auto& t : terms_) {
        int w = 0;
        for (int v = 0; v < ring_->nvars; ++v) w += ring_->weights[v] * mono_exp(t.mono, v);
        if (d < 0) d = w;
        if (w != d) return false;
    }
    return true;
}

int Poly::eval(const Field& f, const std::vector<int>& point) const {
    if (static_cast<int>(point.size()) != ring_->nvars)
        throw std::invalid_argument("evaluation point has wrong arity");
    if (f.p() != ring_->p) throw std::invalid_argument("evaluation field characteristic mismatch");
    int acc = 0;
    for (const auto& t : terms_) {
        int v = t.coeff % f.p();  // F_p embeds in F_{p^e} on the 0..p-1 codes
        for (int var = 0; var < ring_->nvars; ++var) {
            int e = mono_exp(t.mono, var);
            if (e) v = f.mul(v, f.pow(point[var], e));
        }
        acc = f.add(acc, v);
    }
    return acc;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << "+";
        first = false;
        bool printed = false;
        if (t.coeff != 1 || t.mono == 0) {
            os << t.coeff;
            printed = true;
        }
        for (int v = 0; v < ring_->nvars; ++v) {
            int e = mono_exp(t.mono, v);
            if (!e) continue;
            if (printed) os << "*";
            os << ring_->names[v];
            if (e > 1) os << "^" << e;
            printed = true;
        }
    }
    return os.str();
}

Poly Poly::parse(Ring r, const std::string& text) {
    Poly acc(r);
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty polynomial text");
    size_t pos = 0;
    bool negate = false;
    if (s[0] == '+' || s[0] == '-') {
        negate = (s[0] == '-');
        pos = 1;
    }
    while (pos <= s.size()) {
        size_t end = pos;
        while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
        std::string chunk = s.substr(pos, end - pos);
        if (chunk.empty()) throw std::invalid_argument("malformed polynomial text: " + text);
        // chunk = factor*factor*...
        int coeff = 1;
        Mono mono = 0;
        size_t fp = 0;
        while (fp < chunk.size()) {
            size_t fe = chunk.find('*', fp);
            if (fe == std::string::npos) fe = chunk.size();
            std::string fac = chunk.substr(fp, fe - fp);
            if (fac.empty()) throw std::invalid_argument("malformed term: " + chunk);
            if (isdigit(static_cast<unsigned char>(fac[0]))) {
                coeff = coeff * std::stoi(fac);
            } else {
                std::string name = fac;
                int exp = 1;
                size_t caret = fac.find('^');
                if (caret != std::string::npos) {
                    name = fac.substr(0, caret);
                    exp = std::stoi(fac.substr(caret + 1));
                }
                int v = -1;
                for (int i = 0; i < r->nvars; ++i)
                    if (r->names[i] == name) v = i;
                if (v < 0) throw std::invalid_argument("unknown variable: " + name);
                mono = mono_set(mono, v, mono_exp(mono, v) + exp);
            }
            fp = fe + 1;
        }
        if (negate) coeff = -coeff;
        acc = acc + Poly::term(r, mono, coeff);
        if (end == s.size()) break;
        negate = (s[end] == '-');
        pos = end + 1;
    }
    return acc;
}

Poly normal_form(const Poly& f, const std::vector<Poly>& basis) {
    Poly rem(f.ring());
    Poly cur = f;
    int p = f.ring()->p;
    Field fld = Field::prime(p);
    while (!cur.is_zero()) {
        bool reduced = false;
        const Term& lt = cur.lead();
        for (const Poly& g : basis) {
            if (g.is_zero()) continue;
            if (mono_divides(g.lead().mono, lt.mono)) {
                Mono q = mono_div(lt.mono, g.lead().mono);
                int c = fld.mul(lt.coeff, fld.inv(g.lead().coeff));
                cur = cur - g.times_term(q, c);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            rem = rem + Poly::term(f.ring(), lt.mono, lt.coeff);
            cur = cur - Poly::term(f.ring(), lt.mono, lt.coeff);
        }
    }
    return rem;
}

Poly s_poly(const Poly& f, const Poly& g) {
    Field fld = Field::prime(f.ring()->p);
    Mono l = mono_lcm(f.lead().mono, g.lead().mono);
    Poly a = f.times_term(mono_div(l, f.lead().mono), fld.inv(f.lead().coeff));
    Poly b = g.times_term(mono_div(l, g.lead().mono), fld.inv(g.lead().coeff));
    return a - b;
}

}  // namespace strat
