#include "drw/exact_linalg.hpp"

#include <algorithm>
#include <sstream>

namespace drw {

unsigned padic_val(const Int& x, const Int& p) {
    if (x == 0) throw Error("padic_val of zero");
    Int a = abs(x);
    unsigned v = 0;
    while (a % p == 0) { a /= p; ++v; }
    return v;
}

Int pow_int(const Int& base, unsigned e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

bool IntMatrix::isZero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Int& x) { return x == 0; });
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw DimensionMismatch("matrix product shape");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
        }
    return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix sum shape");
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix difference shape");
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
}

IntMatrix IntMatrix::scaled(const Int& c) const {
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * c;
    return r;
}

IntMatrix IntMatrix::hcat(const IntMatrix& o) const {
    if (rows_ != o.rows_) throw DimensionMismatch("hcat row count");
    IntMatrix r(rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, cols_ + j) = o(i, j);
    }
    return r;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& v) const {
    if (v.size() != cols_) throw DimensionMismatch("apply vector length");
    std::vector<Int> r(rows_, Int(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0) r[i] += (*this)(i, j) * v[j];
    return r;
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    }
    os << "]";
    return os.str();
}

namespace {

// Elementary transform bookkeeping for SNF. Invariant: input == u * a * v.
struct SnfWork {
    IntMatrix a, u, v, uinv, vinv;

    void swapRows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
        for (std::size_t r = 0; r < u.rows(); ++r) std::swap(u(r, i), u(r, j));
        for (std::size_t c = 0; c < uinv.cols(); ++c) std::swap(uinv(i, c), uinv(j, c));
    }
    void swapCols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
        for (std::size_t c = 0; c < v.cols(); ++c) std::swap(v(i, c), v(j, c));
        for (std::size_t r = 0; r < vinv.rows(); ++r) std::swap(vinv(r, i), vinv(r, j));
    }
    // row i -= q * row t
    void addRow(std::size_t i, std::size_t t, const Int& q) {
        if (q == 0) return;
        for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) -= q * a(t, c);
        for (std::size_t r = 0; r < u.rows(); ++r) u(r, t) += q * u(r, i);
        for (std::size_t c = 0; c < uinv.cols(); ++c) uinv(i, c) -= q * uinv(t, c);
    }
    // col j -= q * col t
    void addCol(std::size_t j, std::size_t t, const Int& q) {
        if (q == 0) return;
        for (std::size_t r = 0; r < a.rows(); ++r) a(r, j) -= q * a(r, t);
        for (std::size_t c = 0; c < v.cols(); ++c) v(t, c) += q * v(j, c);
        for (std::size_t r = 0; r < vinv.rows(); ++r) vinv(r, j) -= q * vinv(r, t);
    }
    void negateRow(std::size_t i) {
        for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
        for (std::size_t r = 0; r < u.rows(); ++r) u(r, i) = -u(r, i);
        for (std::size_t c = 0; c < uinv.cols(); ++c) uinv(i, c) = -uinv(i, c);
    }

    // Bezout transform on rows (t, i): afterwards a(t,*) leads with
    // gcd(a(t,t), a(i,t)) and a(i,t) == 0. Single unimodular 2x2 step, so
    // entries stay polynomially bounded (no remainder ping-pong).
    void gcdRows(std::size_t t, std::size_t i) {
        const Int aa = a(t, t), bb = a(i, t);
        if (bb == 0) return;
        if (aa != 0 && bb % aa == 0) { addRow(i, t, bb / aa); return; }
        Int g, s, u2;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), u2.get_mpz_t(), aa.get_mpz_t(), bb.get_mpz_t());
        Int ap = aa / g, bp = bb / g;
        for (std::size_t c = 0; c < a.cols(); ++c) {
            Int x = a(t, c), y = a(i, c);
            a(t, c) = s * x + u2 * y;
            a(i, c) = -bp * x + ap * y;
        }
        for (std::size_t r = 0; r < u.rows(); ++r) {
            Int x = u(r, t), y = u(r, i);
            u(r, t) = ap * x + bp * y;
            u(r, i) = -u2 * x + s * y;
        }
        for (std::size_t c = 0; c < uinv.cols(); ++c) {
            Int x = uinv(t, c), y = uinv(i, c);
            uinv(t, c) = s * x + u2 * y;
            uinv(i, c) = -bp * x + ap * y;
        }
    }

    // Bezout transform on cols (t, j); mirrors gcdRows.
    void gcdCols(std::size_t t, std::size_t j) {
        const Int aa = a(t, t), bb = a(t, j);
        if (bb == 0) return;
        if (aa != 0 && bb % aa == 0) { addCol(j, t, bb / aa); return; }
        Int g, s, u2;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), u2.get_mpz_t(), aa.get_mpz_t(), bb.get_mpz_t());
        Int ap = aa / g, bp = bb / g;
        for (std::size_t r = 0; r < a.rows(); ++r) {
            Int x = a(r, t), y = a(r, j);
            a(r, t) = s * x + u2 * y;
            a(r, j) = -bp * x + ap * y;
        }
        for (std::size_t c = 0; c < v.cols(); ++c) {
            Int x = v(t, c), y = v(j, c);
            v(t, c) = ap * x + bp * y;
            v(j, c) = -u2 * x + s * y;
        }
        for (std::size_t r = 0; r < vinv.rows(); ++r) {
            Int x = vinv(r, t), y = vinv(r, j);
            vinv(r, t) = s * x + u2 * y;
            vinv(r, j) = -bp * x + ap * y;
        }
    }
};

} // namespace

SmithResult smith_normal_form(const IntMatrix& m) {
    const std::size_t R = m.rows(), C = m.cols();
    SnfWork w{m, IntMatrix::identity(R), IntMatrix::identity(C),
              IntMatrix::identity(R), IntMatrix::identity(C)};

    const std::size_t nd = std::min(R, C);
    std::size_t t = 0;
    for (; t < nd; ++t) {
        // pivot: smallest nonzero absolute value, ties by (row, col)
        bool found = false;
        std::size_t pi = t, pj = t;
        Int best;
        for (std::size_t i = t; i < R; ++i)
            for (std::size_t j = t; j < C; ++j) {
                const Int& x = w.a(i, j);
                if (x == 0) continue;
                Int ax = abs(x);
                if (!found || ax < best) { found = true; best = ax; pi = i; pj = j; }
            }
        if (!found) break;
        w.swapRows(t, pi);
        w.swapCols(t, pj);

        for (;;) {
            // gcd-eliminate column t, then row t; column elimination can
            // disturb row t and vice versa, but the pivot strictly shrinks
            // in the divisibility order, so this settles quickly
            for (std::size_t i = t + 1; i < R; ++i) w.gcdRows(t, i);
            bool rowClean = true;
            for (std::size_t j = t + 1; j < C; ++j)
                if (w.a(t, j) != 0) { rowClean = false; break; }
            if (!rowClean) {
                for (std::size_t j = t + 1; j < C; ++j) w.gcdCols(t, j);
                bool colClean = true;
                for (std::size_t i = t + 1; i < R; ++i)
                    if (w.a(i, t) != 0) { colClean = false; break; }
                if (!colClean) continue;
            }
            // divisibility sweep: pivot must divide the rest of the block
            bool divides = true;
            for (std::size_t i = t + 1; i < R && divides; ++i)
                for (std::size_t j = t + 1; j < C && divides; ++j)
                    if (w.a(i, j) % w.a(t, t) != 0) {
                        w.addRow(t, i, Int(-1)); // row t += row i
                        divides = false;
                    }
            if (divides) break;
        }
        if (w.a(t, t) < 0) w.negateRow(t);
    }

    SmithResult res;
    res.u = w.u;
    res.v = w.v;
    res.uinv = w.uinv;
    res.vinv = w.vinv;
    res.d = w.a;
    res.rank = t;
    return res;
}

Int snf_abs_det(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("determinant of non-square matrix");
    auto s = smith_normal_form(m);
    Int d = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) d *= s.d(i, i);
    return abs(d);
}

IntMatrix int_kernel(const IntMatrix& m) {
    const std::size_t C = m.cols();
    if (m.rows() == 0 || C == 0) return IntMatrix::identity(C);
    auto s = smith_normal_form(m);
    std::vector<std::size_t> freeCols;
    for (std::size_t j = 0; j < C; ++j)
        if (j >= s.rank) freeCols.push_back(j);
    IntMatrix k(C, freeCols.size());
    for (std::size_t jj = 0; jj < freeCols.size(); ++jj)
        for (std::size_t i = 0; i < C; ++i) k(i, jj) = s.vinv(i, freeCols[jj]);
    return k;
}

static bool solveImpl(const IntMatrix& m, const IntMatrix& b, IntMatrix* out) {
    if (m.rows() != b.rows()) throw DimensionMismatch("solve rhs rows");
    auto s = smith_normal_form(m);
    IntMatrix c = s.uinv * b;
    IntMatrix y(m.cols(), b.cols());
    const std::size_t nd = std::min(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            if (i < nd && s.d(i, i) != 0) {
                if (c(i, j) % s.d(i, i) != 0) return false;
                y(i, j) = c(i, j) / s.d(i, i);
            } else if (c(i, j) != 0) {
                return false;
            }
        }
    }
    if (out) *out = s.vinv * y;
    return true;
}

IntMatrix int_solve(const IntMatrix& m, const IntMatrix& b) {
    IntMatrix x;
    if (!solveImpl(m, b, &x)) throw Error("int_solve: no integral solution");
    return x;
}

bool int_solvable(const IntMatrix& m, const IntMatrix& b) {
    return solveImpl(m, b, nullptr);
}

ModMatrix::ModMatrix(std::size_t rows, std::size_t cols, const Int& modulus)
    : rows_(rows), cols_(cols), mod_(modulus), e_(rows * cols, Int(0)) {
    if (mod_ <= 1) throw Error("ModMatrix modulus must be > 1");
}

ModMatrix ModMatrix::fromInt(const IntMatrix& m, const Int& modulus) {
    ModMatrix r(m.rows(), m.cols(), modulus);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Int x = m(i, j) % modulus;
            if (x < 0) x += modulus;
            r(i, j) = x;
        }
    return r;
}

void ModMatrix::reduce() {
    for (auto& x : e_) {
        x %= mod_;
        if (x < 0) x += mod_;
    }
}

IntMatrix ModMatrix::lift() const {
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
    return r;
}

ModMatrix ModMatrix::operator*(const ModMatrix& o) const {
    if (mod_ != o.mod_) throw DimensionMismatch("modulus mismatch");
    return ModMatrix::fromInt(lift() * o.lift(), mod_);
}

std::string ModMatrix::str() const { return lift().str(); }

namespace {

Int modInverse(const Int& a, const Int& mod) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw Error("non-unit inverse");
    return r;
}

struct HRow {
    std::vector<Int> v;
    std::vector<Int> cert; // combination of original rows producing v
};

void rowReduceInto(std::vector<Int>& dst, std::vector<Int>* dstCert, const HRow& src,
                   const Int& q, const Int& mod) {
    for (std::size_t k = 0; k < dst.size(); ++k) {
        dst[k] = (dst[k] - q * src.v[k]) % mod;
        if (dst[k] < 0) dst[k] += mod;
    }
    if (dstCert)
        for (std::size_t k = 0; k < dstCert->size(); ++k) {
            (*dstCert)[k] = ((*dstCert)[k] - q * src.cert[k]) % mod;
            if ((*dstCert)[k] < 0) (*dstCert)[k] += mod;
        }
}

// Howell form with optional certificates (rows of result expressed over
// input rows). Deterministic: pivots chosen by minimal p-valuation, then
// earliest position in the working list.
std::vector<HRow> howellRows(const ModMatrix& m, const Int& p, bool withCert) {
    const Int q = m.modulus();
    const unsigned mexp = padic_val(q, p);
    const std::size_t C = m.cols();
    std::vector<HRow> pool;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        HRow r;
        r.v.resize(C);
        for (std::size_t j = 0; j < C; ++j) r.v[j] = m(i, j);
        if (withCert) {
            r.cert.assign(m.rows(), Int(0));
            r.cert[i] = 1;
        }
        pool.push_back(std::move(r));
    }

    std::vector<HRow> result;
    for (std::size_t c = 0; c < C; ++c) {
        // find minimal valuation pivot at column c
        std::size_t best = pool.size();
        unsigned bestVal = mexp + 1;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (pool[i].v[c] == 0) continue;
            unsigned val = padic_val(pool[i].v[c], p);
            if (val < bestVal) { bestVal = val; best = i; }
        }
        if (best == pool.size()) continue;
        HRow piv = std::move(pool[best]);
        pool.erase(pool.begin() + best);
        // normalize leading entry to p^bestVal
        Int lead = piv.v[c];
        Int unit = lead / pow_int(p, bestVal);
        Int uinv = modInverse(unit, q);
        for (auto& x : piv.v) { x = (x * uinv) % q; }
        if (withCert)
            for (auto& x : piv.cert) { x = (x * uinv) % q; }
        Int pv = pow_int(p, bestVal);
        // eliminate column c from remaining rows
        for (auto& row : pool) {
            if (row.v[c] == 0) continue;
            Int qq = row.v[c] / pv; // exact in valuation terms mod q
            rowReduceInto(row.v, withCert ? &row.cert : nullptr, piv, qq, q);
        }
        // span closure: the annihilator multiple may still contribute later
        if (bestVal > 0) {
            HRow ann;
            Int mult = q / pv;
            ann.v.resize(C);
            for (std::size_t k = 0; k < C; ++k) ann.v[k] = (piv.v[k] * mult) % q;
            bool nz = std::any_of(ann.v.begin(), ann.v.end(), [](const Int& x) { return x != 0; });
            if (nz) {
                if (withCert) {
                    ann.cert.resize(piv.cert.size());
                    for (std::size_t k = 0; k < piv.cert.size(); ++k)
                        ann.cert[k] = (piv.cert[k] * mult) % q;
                }
                pool.push_back(std::move(ann));
            }
        }
        result.push_back(std::move(piv));
    }

    // reduce entries above each pivot modulo the pivot value
    for (std::size_t k = 0; k < result.size(); ++k) {
        std::size_t c = 0;
        while (result[k].v[c] == 0) ++c;
        Int pv = result[k].v[c];
        for (std::size_t k2 = 0; k2 < k; ++k2) {
            Int x = result[k2].v[c];
            Int qq = x / pv;
            rowReduceInto(result[k2].v, withCert ? &result[k2].cert : nullptr, result[k], qq, q);
        }
    }
    return result;
}

Int primeOfPrimePower(const Int& q) {
    // factor q = p^m with p prime; the modulus invariant of ModMatrix
    Int p = 2;
    while (q % p != 0) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        if (p * p > q) { p = q; break; }
    }
    Int r = q;
    while (r % p == 0) r /= p;
    if (r != 1) throw Error("modulus is not a prime power");
    return p;
}

} // namespace

ModMatrix howell_form(const ModMatrix& m) {
    Int p = primeOfPrimePower(m.modulus());
    auto rows = howellRows(m, p, false);
    ModMatrix h(rows.size(), m.cols(), m.modulus());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) h(i, j) = rows[i].v[j];
    return h;
}

std::vector<Int> howell_reduce(const ModMatrix& h, std::vector<Int> v) {
    if (v.size() != h.cols()) throw DimensionMismatch("howell_reduce length");
    const Int q = h.modulus();
    for (auto& x : v) { x %= q; if (x < 0) x += q; }
    for (std::size_t i = 0; i < h.rows(); ++i) {
        std::size_t c = 0;
        while (c < h.cols() && h(i, c) == 0) ++c;
        if (c == h.cols()) continue;
        Int qq = v[c] / h(i, c);
        if (qq == 0) continue;
        for (std::size_t k = 0; k < v.size(); ++k) {
            v[k] = (v[k] - qq * h(i, k)) % q;
            if (v[k] < 0) v[k] += q;
        }
    }
    return v;
}

bool submodule_membership(const ModMatrix& gens, const std::vector<Int>& v) {
    if (v.size() != gens.cols()) throw DimensionMismatch("membership vector length");
    ModMatrix h = howell_form(gens);
    auto r = howell_reduce(h, v);
    return std::all_of(r.begin(), r.end(), [](const Int& x) { return x == 0; });
}

std::optional<std::vector<Int>> howell_solve(const ModMatrix& gens, const std::vector<Int>& v) {
    if (v.size() != gens.cols()) throw DimensionMismatch("solve vector length");
    const Int q = gens.modulus();
    Int p = primeOfPrimePower(q);
    auto rows = howellRows(gens, p, true);
    std::vector<Int> w = v;
    for (auto& x : w) { x %= q; if (x < 0) x += q; }
    std::vector<Int> coeff(gens.rows(), Int(0));
    for (const auto& row : rows) {
        std::size_t c = 0;
        while (c < row.v.size() && row.v[c] == 0) ++c;
        if (c == row.v.size()) continue;
        Int qq = w[c] / row.v[c];
        if (qq == 0) continue;
        for (std::size_t k = 0; k < w.size(); ++k) {
            w[k] = (w[k] - qq * row.v[k]) % q;
            if (w[k] < 0) w[k] += q;
        }
        for (std::size_t k = 0; k < coeff.size(); ++k)
            coeff[k] = (coeff[k] + qq * row.cert[k]) % q;
    }
    if (!std::all_of(w.begin(), w.end(), [](const Int& x) { return x == 0; }))
        return std::nullopt;
    return coeff;
}

ModMatrix mod_kernel(const ModMatrix& m) {
    // lift to Z: x in kernel iff (x, y) solves [m | q I](x,y)^T = 0
    const Int q = m.modulus();
    IntMatrix block(m.rows(), m.cols() + m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) block(i, j) = m(i, j);
        block(i, m.cols() + i) = q;
    }
    IntMatrix k = int_kernel(block);
    ModMatrix gens(k.cols(), m.cols(), q);
    for (std::size_t j = 0; j < k.cols(); ++j)
        for (std::size_t i = 0; i < m.cols(); ++i) {
            Int x = k(i, j) % q;
            if (x < 0) x += q;
            gens(j, i) = x;
        }
    return howell_form(gens);
}

std::string FiniteModule::str(const Int& p) const {
    if (isZero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (unsigned e : exps) {
        if (!first) os << " + ";
        first = false;
        os << "Z/" << pow_int(p, e).get_str();
    }
    if (freeRank > 0) {
        if (!first) os << " + ";
        os << "Z^" << freeRank;
    }
    return os.str();
}

IntCohomology lattice_quotient(const IntMatrix& amb, const IntMatrix& sub, const Int& p) {
    // basis of the ambient lattice from its SNF
    IntCohomology out;
    auto s = smith_normal_form(amb);
    std::size_t rank = s.rank;
    IntMatrix basis(amb.rows(), rank);
    for (std::size_t j = 0; j < rank; ++j)
        for (std::size_t i = 0; i < amb.rows(); ++i) basis(i, j) = s.u(i, j) * s.d(j, j);
    IntMatrix x;
    if (sub.cols() == 0) {
        x = IntMatrix(rank, 0);
    } else {
        x = int_solve(basis, sub); // throws if sub is not inside amb
    }
    auto sx = smith_normal_form(x);
    std::vector<Int> factors;
    for (std::size_t i = 0; i < sx.rank; ++i)
        if (sx.d(i, i) != 1) factors.push_back(sx.d(i, i));
    out.mod.freeRank = static_cast<unsigned>(rank - sx.rank);
    out.torsion = factors;
    for (const auto& f : factors) {
        unsigned v = padic_val(f, p);
        if (v > 0) out.mod.exps.push_back(v);
    }
    std::sort(out.mod.exps.rbegin(), out.mod.exps.rend());
    return out;
}

std::vector<FiniteModule> complex_cohomology_mod(const std::vector<std::size_t>& ranks,
                                                 const std::vector<ModMatrix>& diffs,
                                                 const Int& p) {
    if (ranks.size() != diffs.size() + 1) throw DimensionMismatch("ranks/diffs length");
    const std::size_t T = ranks.size();
    Int q = diffs.empty() ? Int(0) : diffs[0].modulus();
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        if (diffs[i].rows() != ranks[i + 1] || diffs[i].cols() != ranks[i])
            throw DimensionMismatch("differential shape at degree " + std::to_string(i));
        if (i + 1 < diffs.size()) {
            ModMatrix c = diffs[i + 1] * diffs[i];
            for (std::size_t a = 0; a < c.rows(); ++a)
                for (std::size_t b = 0; b < c.cols(); ++b)
                    if (c(a, b) != 0) throw CompositionNonzero("d o d != 0 at degree " + std::to_string(i));
        }
    }
    std::vector<FiniteModule> hs;
    for (std::size_t i = 0; i < T; ++i) {
        std::size_t n = ranks[i];
        if (n == 0) { hs.push_back({}); continue; }
        // kernel lattice of d_i mod q (all of Z^n when i is the last degree)
        IntMatrix kerGens;
        if (i < diffs.size()) {
            IntMatrix block(ranks[i + 1], n + ranks[i + 1]);
            for (std::size_t a = 0; a < ranks[i + 1]; ++a) {
                for (std::size_t b = 0; b < n; ++b) block(a, b) = diffs[i](a, b);
                block(a, n + a) = q;
            }
            IntMatrix k = int_kernel(block);
            kerGens = IntMatrix(n, k.cols() + n);
            for (std::size_t j = 0; j < k.cols(); ++j)
                for (std::size_t a = 0; a < n; ++a) kerGens(a, j) = k(a, j);
            for (std::size_t a = 0; a < n; ++a) kerGens(a, k.cols() + a) = q;
        } else {
            kerGens = IntMatrix::identity(n);
        }
        // image lattice of d_{i-1} plus q Z^n
        std::size_t prevCols = (i > 0) ? ranks[i - 1] : 0;
        IntMatrix imGens(n, prevCols + n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < prevCols; ++b) imGens(a, b) = diffs[i - 1](a, b);
            imGens(a, prevCols + a) = q;
        }
        auto qout = lattice_quotient(kerGens, imGens, p);
        if (qout.mod.freeRank != 0) throw Error("mod-q cohomology cannot be free");
        hs.push_back(qout.mod);
    }
    return hs;
}

std::vector<IntCohomology> complex_cohomology_int(const std::vector<std::size_t>& ranks,
                                                  const std::vector<IntMatrix>& diffs,
                                                  const Int& p) {
    if (ranks.size() != diffs.size() + 1) throw DimensionMismatch("ranks/diffs length");
    for (std::size_t i = 0; i + 1 < diffs.size(); ++i) {
        IntMatrix c = diffs[i + 1] * diffs[i];
        if (!c.isZero()) throw CompositionNonzero("d o d != 0 at degree " + std::to_string(i));
    }
    std::vector<IntCohomology> hs;
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        std::size_t n = ranks[i];
        if (n == 0) { hs.push_back({}); continue; }
        IntMatrix ker = (i < diffs.size()) ? int_kernel(diffs[i]) : IntMatrix::identity(n);
        IntMatrix im = (i > 0) ? diffs[i - 1] : IntMatrix(n, 0);
        hs.push_back(lattice_quotient(ker, im, p));
    }
    return hs;
}

} // namespace drw
