#include "drw/semistable.hpp"

#include <algorithm>
#include <sstream>

namespace drw {

SemistablePoly::SemistablePoly(FrameShape shape, Int modulus, Int pi)
    : shape_(shape), mod_(std::move(modulus)), pi_(std::move(pi)) {
    if (mod_ < 0) throw Error("modulus must be >= 0");
    pi_ = reduceCoeff(pi_);
}

SemistablePoly SemistablePoly::zero(FrameShape shape, Int modulus, Int pi) {
    return SemistablePoly(shape, std::move(modulus), std::move(pi));
}

SemistablePoly SemistablePoly::constant(FrameShape shape, Int modulus, const Int& c, Int pi) {
    SemistablePoly p(shape, std::move(modulus), std::move(pi));
    p.addTerm(ExponentVector(shape.d + 1, 0), c);
    return p;
}

SemistablePoly SemistablePoly::monomial(FrameShape shape, Int modulus, const ExponentVector& e,
                                        const Int& coeff, Int pi) {
    SemistablePoly p(shape, std::move(modulus), std::move(pi));
    if (e.size() != shape.d + 1) throw ShapeMismatch("exponent vector length");
    p.addTerm(e, coeff);
    return p;
}

Int SemistablePoly::reduceCoeff(const Int& c) const {
    if (mod_ == 0) return c;
    Int r = c % mod_;
    if (r < 0) r += mod_;
    return r;
}

void SemistablePoly::addTerm(ExponentVector e, Int c) {
    for (unsigned i = 0; i <= shape_.r; ++i)
        if (e[i] < 0) throw ShapeMismatch("negative exponent on non-inverted coordinate");
    long m = e[0];
    for (unsigned i = 1; i <= shape_.r; ++i) m = std::min(m, e[i]);
    if (m > 0) {
        if (pi_ == 0) return; // t_0...t_r = 0 on the special fiber
        for (unsigned i = 0; i <= shape_.r; ++i) e[i] -= m;
        Int f = pi_;
        for (long k = 1; k < m; ++k) f *= pi_;
        c *= f;
    }
    c = reduceCoeff(c);
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (c != 0) terms_.emplace(std::move(e), std::move(c));
        return;
    }
    it->second = reduceCoeff(it->second + c);
    if (it->second == 0) terms_.erase(it);
}

void SemistablePoly::checkCompat(const SemistablePoly& o) const {
    if (shape_ != o.shape_ || mod_ != o.mod_ || pi_ != o.pi_)
        throw ShapeMismatch("SemistablePoly shape/ring mismatch");
}

SemistablePoly SemistablePoly::operator+(const SemistablePoly& o) const {
    checkCompat(o);
    SemistablePoly r = *this;
    for (const auto& [e, c] : o.terms_) r.addTerm(e, c);
    return r;
}

SemistablePoly SemistablePoly::operator-(const SemistablePoly& o) const {
    checkCompat(o);
    SemistablePoly r = *this;
    for (const auto& [e, c] : o.terms_) r.addTerm(e, -c);
    return r;
}

SemistablePoly SemistablePoly::operator*(const SemistablePoly& o) const {
    checkCompat(o);
    SemistablePoly r(shape_, mod_, pi_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            ExponentVector e(shape_.d + 1);
            for (unsigned i = 0; i <= shape_.d; ++i) e[i] = e1[i] + e2[i];
            r.addTerm(std::move(e), c1 * c2);
        }
    return r;
}

SemistablePoly SemistablePoly::scaled(const Int& c) const {
    SemistablePoly r(shape_, mod_, pi_);
    for (const auto& [e, c0] : terms_) r.addTerm(e, c0 * c);
    return r;
}

SemistablePoly SemistablePoly::negated() const { return scaled(Int(-1)); }

SemistablePoly SemistablePoly::powAllExponents(unsigned k) const {
    SemistablePoly r(shape_, mod_, pi_);
    for (const auto& [e, c] : terms_) {
        ExponentVector e2(shape_.d + 1);
        for (unsigned i = 0; i <= shape_.d; ++i) e2[i] = e[i] * static_cast<long>(k);
        Int ck;
        mpz_pow_ui(ck.get_mpz_t(), c.get_mpz_t(), k);
        r.addTerm(std::move(e2), ck);
    }
    return r;
}

Int SemistablePoly::coeff(const ExponentVector& e) const {
    SemistablePoly probe = monomial(shape_, mod_, e, Int(1), pi_);
    if (probe.terms_.empty()) return Int(0);
    auto it = terms_.find(probe.terms_.begin()->first);
    return it == terms_.end() ? Int(0) : it->second;
}

SemistablePoly SemistablePoly::withModulus(const Int& newModulus) const {
    SemistablePoly r(shape_, newModulus, pi_);
    for (const auto& [e, c] : terms_) r.addTerm(e, c);
    return r;
}

std::string SemistablePoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        for (unsigned i = 0; i <= shape_.d; ++i)
            if (e[i] != 0) os << "*t" << i << "^" << e[i];
    }
    return os.str();
}

SemistablePoly normalize_monomial(const ExponentVector& e, const FrameShape& shape,
                                  const Int& modulus, const Int& pi, const Int& coeff) {
    return SemistablePoly::monomial(shape, modulus, e, coeff, pi);
}

std::vector<ExponentVector> monomial_basis(const FrameShape& shape, unsigned B,
                                           MonomialVariant variant) {
    std::vector<ExponentVector> out;
    ExponentVector cur(shape.d + 1);
    long loInv = (variant == MonomialVariant::Laurent) ? -static_cast<long>(B) : 0;
    auto rec = [&](auto&& self, unsigned idx) -> void {
        if (idx > shape.d) {
            long m = cur[0];
            for (unsigned i = 1; i <= shape.r; ++i) m = std::min(m, cur[i]);
            if (m == 0) out.push_back(cur);
            return;
        }
        long lo = (idx <= shape.r) ? 0 : loInv;
        for (long v = lo; v <= static_cast<long>(B); ++v) {
            cur[idx] = v;
            self(self, idx + 1);
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace drw
