#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

namespace strat {

/// F_{p^e} with a fixed monic irreducible modulus of degree e over F_p.
/// Elements are the integers 0..p^e-1, read as base-p digit vectors against
/// the power basis of the modulus (digit 0 = coefficient of 1).
/// Cheap to copy; arithmetic is table-driven (p^e <= 125).
class Field {
public:
    static Field prime(int p);
    /// First irreducible monic modulus of degree e in lexicographic order.
    static Field extension(int p, int e);
    static Field extension(int p, int e, std::vector<int> modulus);

    int p() const { return d_->p; }
    int e() const { return d_->e; }
    int size() const { return d_->q; }
    const std::vector<int>& modulus() const { return d_->modulus; }

    int add(int a, int b) const { return d_->add[a * d_->q + b]; }
    int sub(int a, int b) const { return d_->add[a * d_->q + d_->neg[b]]; }
    int neg(int a) const { return d_->neg[a]; }
    int mul(int a, int b) const { return d_->mul[a * d_->q + b]; }
    int inv(int a) const {
        if (a == 0) throw std::domain_error("Field::inv of zero");
        return d_->inv[a];
    }
    int pow(int a, long long n) const;

    /// a - c*b in one lookup pass; the elimination inner loop.
    int submul(int a, int c, int b) const { return sub(a, mul(c, b)); }

    bool operator==(const Field& o) const {
        return d_->p == o.d_->p && d_->e == o.d_->e && d_->modulus == o.d_->modulus;
    }
    bool operator!=(const Field& o) const { return !(*this == o); }

private:
    struct Data {
        int p, e, q;
        std::vector<int> modulus;       // length e+1, monic
        std::vector<uint8_t> add, mul;  // q*q tables
        std::vector<uint8_t> neg, inv;  // q tables (inv[0] unused)
    };
    std::shared_ptr<const Data> d_;
    explicit Field(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
};

bool is_prime(int n);

}  // namespace strat
