#include "arithdyn/poly.hpp"

#include "arithdyn/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace arithdyn {

namespace {

using QVec = std::vector<Rational>;

void trim_q(QVec& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

QVec to_q(const IntPoly& p) {
    QVec out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.emplace_back(c);
    return out;
}

// Remainder of a by b over Q (b nonzero).
QVec rem_q(QVec a, const QVec& b) {
    const std::size_t db = b.size() - 1;
    while (a.size() >= b.size()) {
        Rational factor = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= factor * b[i];
        a.pop_back();
        trim_q(a);
    }
    return a;
}

IntPoly from_q_primitive(const QVec& v) {
    if (v.empty()) return {};
    Int den = 1;
    for (const auto& c : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Int> coeffs;
    coeffs.reserve(v.size());
    for (const auto& c : v) {
        Rational scaled = c * den;
        coeffs.push_back(scaled.get_num());
    }
    return IntPoly(std::move(coeffs)).primitive();
}

}  // namespace

IntPoly::IntPoly(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs) coeffs_.emplace_back(c);
    trim();
}

IntPoly IntPoly::monomial(unsigned degree, const Int& coeff) {
    std::vector<Int> c(degree + 1, Int(0));
    c[degree] = coeff;
    return IntPoly(std::move(c));
}

void IntPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Int IntPoly::content() const {
    Int g = 0;
    for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

IntPoly IntPoly::primitive() const {
    if (is_zero()) return {};
    Int g = content();
    if (sgn(leading()) < 0) g = -g;
    std::vector<Int> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) {
        Int q;
        mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        out.push_back(std::move(q));
    }
    return IntPoly(std::move(out));
}

IntPoly IntPoly::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Int> out(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    return IntPoly(std::move(out));
}

IntPoly IntPoly::reversed() const {
    std::vector<Int> out(coeffs_.rbegin(), coeffs_.rend());
    return IntPoly(std::move(out));
}

IntPoly IntPoly::negated_variable() const {
    std::vector<Int> out = coeffs_;
    for (std::size_t i = 1; i < out.size(); i += 2) out[i] = -out[i];
    return IntPoly(std::move(out));
}

Int IntPoly::eval(const Int& x) const {
    Int acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Rational IntPoly::eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rational(*it);
    return acc;
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Int(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
    return IntPoly(std::move(out));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Int(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] -= b.coeffs_[i];
    return IntPoly(std::move(out));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Int> out(a.coeffs_.size() + b.coeffs_.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return IntPoly(std::move(out));
}

IntPoly operator*(const Int& c, const IntPoly& a) {
    std::vector<Int> out = a.coeffs_;
    for (auto& x : out) x *= c;
    return IntPoly(std::move(out));
}

std::string IntPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Int& c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        Int mag = abs(c);
        os << (sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        if (mag != 1 || i == 0) os << mag.get_str();
        if (i > 0) os << "X";
        if (i > 1) os << "^" << i;
        first = false;
    }
    return os.str();
}

std::optional<IntPoly> exact_divide(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw Error(ErrorKind::InvalidInput, "division by the zero polynomial");
    if (a.is_zero()) return IntPoly{};
    if (a.degree() < b.degree()) return std::nullopt;
    std::vector<Int> rem = a.coeffs();
    const auto db = static_cast<std::size_t>(b.degree());
    std::vector<Int> quot(rem.size() - db, Int(0));
    for (std::size_t k = quot.size(); k-- > 0;) {
        const Int& top = rem[k + db];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), b.leading().get_mpz_t())) return std::nullopt;
        Int q;
        mpz_divexact(q.get_mpz_t(), top.get_mpz_t(), b.leading().get_mpz_t());
        for (std::size_t i = 0; i <= db; ++i) rem[k + i] -= q * b[i];
        quot[k] = std::move(q);
    }
    for (const auto& r : rem)
        if (r != 0) return std::nullopt;
    return IntPoly(std::move(quot));
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
    QVec x = to_q(a.primitive());
    QVec y = to_q(b.primitive());
    while (!y.empty()) {
        QVec r = rem_q(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return from_q_primitive(x);
}

bool is_squarefree(const IntPoly& p) {
    if (p.degree() <= 0) return true;
    return gcd(p, p.derivative()).degree() == 0;
}

IntPoly squarefree_part(const IntPoly& p) {
    if (p.degree() <= 0) return p.primitive();
    IntPoly g = gcd(p, p.derivative());
    if (g.degree() == 0) return p.primitive();
    auto q = exact_divide(p.primitive(), g);
    if (!q) {
        // g is primitive, so Gauss's lemma guarantees exact division.
        throw Error(ErrorKind::InvalidInput, "squarefree deflation failed");
    }
    return q->primitive();
}

// ---------------------------------------------------------------- forms

BinaryForm::BinaryForm(unsigned degree, std::vector<Int> coeffs)
    : degree_(degree), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != degree_ + 1)
        throw Error(ErrorKind::InvalidInput, "binary form of degree " + std::to_string(degree_) +
                                                 " needs " + std::to_string(degree_ + 1) +
                                                 " coefficients");
}

BinaryForm::BinaryForm(unsigned degree, std::initializer_list<long> coeffs) : degree_(degree) {
    coeffs_.clear();
    for (long c : coeffs) coeffs_.emplace_back(c);
    if (coeffs_.size() != degree_ + 1)
        throw Error(ErrorKind::InvalidInput, "binary form coefficient count mismatch");
}

bool BinaryForm::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Int& c) { return c == 0; });
}

Int BinaryForm::eval(const Int& x, const Int& y) const {
    // Homogeneous Horner: ((c0 x + c1 y) x + c2 y^2) ... tracked with running y powers.
    Int acc = coeffs_[0];
    Int ypow = 1;
    for (std::size_t i = 1; i <= degree_; ++i) {
        ypow *= y;
        acc = acc * x + coeffs_[i] * ypow;
    }
    return acc;
}

BinaryForm BinaryForm::x_power(unsigned degree) {
    std::vector<Int> c(degree + 1, Int(0));
    c[0] = 1;
    return BinaryForm(degree, std::move(c));
}

BinaryForm BinaryForm::y_power(unsigned degree) {
    std::vector<Int> c(degree + 1, Int(0));
    c[degree] = 1;
    return BinaryForm(degree, std::move(c));
}

BinaryForm operator+(const BinaryForm& a, const BinaryForm& b) {
    if (a.degree_ != b.degree_) throw Error(ErrorKind::InvalidInput, "adding forms of different degrees");
    std::vector<Int> out = a.coeffs_;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.coeffs_[i];
    return BinaryForm(a.degree_, std::move(out));
}

BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
    std::vector<Int> out(a.degree_ + b.degree_ + 1, Int(0));
    for (std::size_t i = 0; i <= a.degree_; ++i)
        for (std::size_t j = 0; j <= b.degree_; ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return BinaryForm(a.degree_ + b.degree_, std::move(out));
}

BinaryForm operator*(const Int& c, const BinaryForm& a) {
    std::vector<Int> out = a.coeffs_;
    for (auto& x : out) x *= c;
    return BinaryForm(a.degree_, std::move(out));
}

BinaryForm BinaryForm::compose(const BinaryForm& a, const BinaryForm& b) const {
    if (a.degree() != b.degree()) throw Error(ErrorKind::InvalidInput, "composition needs forms of equal degree");
    const unsigned e = a.degree();
    std::vector<BinaryForm> apow{BinaryForm(0, {1})};
    std::vector<BinaryForm> bpow{BinaryForm(0, {1})};
    for (unsigned i = 1; i <= degree_; ++i) {
        apow.push_back(apow.back() * a);
        bpow.push_back(bpow.back() * b);
    }
    BinaryForm result(degree_ * e, std::vector<Int>(degree_ * e + 1, Int(0)));
    for (unsigned i = 0; i <= degree_; ++i) {
        if (coeffs_[i] == 0) continue;
        result = result + coeffs_[i] * (apow[degree_ - i] * bpow[i]);
    }
    return result;
}

Int BinaryForm::l1_norm() const {
    Int s = 0;
    for (const auto& c : coeffs_) s += abs(c);
    return s;
}

std::string BinaryForm::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (unsigned i = 0; i <= degree_; ++i) {
        const Int& c = coeffs_[i];
        if (c == 0) continue;
        Int mag = abs(c);
        os << (sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        const unsigned ex = degree_ - i;
        if (mag != 1 || degree_ == 0) os << mag.get_str();
        if (ex > 0) os << "X" << (ex > 1 ? "^" + std::to_string(ex) : "");
        if (i > 0) os << "Y" << (i > 1 ? "^" + std::to_string(i) : "");
        first = false;
    }
    return first ? "0" : os.str();
}

// ---------------------------------------------------------------- resultants

Int bareiss_determinant(std::vector<std::vector<Int>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : Int(-m[n - 1][n - 1]);
}

std::vector<std::vector<Int>> sylvester_matrix(const BinaryForm& u, const BinaryForm& v) {
    if (u.degree() != v.degree())
        throw Error(ErrorKind::InvalidInput, "resultant needs forms of equal degree");
    const unsigned d = u.degree();
    if (d == 0) throw Error(ErrorKind::InvalidInput, "resultant needs degree >= 1");
    const std::size_t n = 2 * d;
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n, Int(0)));
    // Column j < d: A = X^{d-1-j} Y^j, shifts U's coefficients down by j rows.
    for (unsigned j = 0; j < d; ++j)
        for (unsigned i = 0; i <= d; ++i) {
            m[i + j][j] = u[i];
            m[i + j][d + j] = v[i];
        }
    return m;
}

Int resultant(const BinaryForm& u, const BinaryForm& v) {
    return bareiss_determinant(sylvester_matrix(u, v));
}

Int resultant(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero() || g.is_zero()) return 0;
    const auto m = static_cast<std::size_t>(f.degree());
    const auto n = static_cast<std::size_t>(g.degree());
    if (m + n == 0) return 1;
    std::vector<std::vector<Int>> s(m + n, std::vector<Int>(m + n, Int(0)));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t i = 0; i <= m; ++i) s[r][r + i] = f[m - i];
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t i = 0; i <= n; ++i) s[n + r][r + i] = g[n - i];
    return bareiss_determinant(std::move(s));
}

NullstellensatzCofactors nullstellensatz_cofactors(const BinaryForm& u, const BinaryForm& v) {
    const auto m = sylvester_matrix(u, v);
    const unsigned d = u.degree();
    const std::size_t n = 2 * d;
    Int r = bareiss_determinant(m);
    if (r == 0) throw Error(ErrorKind::DegenerateMap, "Res(U,V) = 0: the forms share a projective root");

    // Cramer: column j of adj(M) e_row = det(M with column j replaced by e_row).
    auto solve = [&](std::size_t row) {
        std::vector<Int> sol(n);
        for (std::size_t j = 0; j < n; ++j) {
            auto mj = m;
            for (std::size_t i = 0; i < n; ++i) mj[i][j] = (i == row) ? 1 : 0;
            sol[j] = bareiss_determinant(std::move(mj));
        }
        BinaryForm a(d - 1, std::vector<Int>(sol.begin(), sol.begin() + d));
        BinaryForm b(d - 1, std::vector<Int>(sol.begin() + d, sol.end()));
        return std::pair{a, b};
    };
    auto [ax, bx] = solve(0);
    auto [ay, by] = solve(n - 1);
    return {std::move(ax), std::move(bx), std::move(ay), std::move(by), std::move(r)};
}

Rational discriminant(const IntPoly& p) {
    if (p.degree() < 2) throw Error(ErrorKind::InvalidInput, "discriminant needs degree >= 2");
    const long n = p.degree();
    Int res = resultant(p, p.derivative());
    Rational disc(res, p.leading());
    disc.canonicalize();
    if (((n * (n - 1)) / 2) % 2 != 0) disc = -disc;
    return disc;
}

// ---------------------------------------------------------------- cyclotomic / phi

IntPoly cyclotomic(unsigned n) {
    if (n == 0) throw Error(ErrorKind::InvalidInput, "cyclotomic index must be positive");
    std::vector<unsigned> divisors;
    for (unsigned m = 1; m <= n; ++m)
        if (n % m == 0) divisors.push_back(m);
    std::vector<IntPoly> phi(divisors.size());
    for (std::size_t i = 0; i < divisors.size(); ++i) {
        IntPoly p = IntPoly::monomial(divisors[i]) - IntPoly{1};
        for (std::size_t j = 0; j < i; ++j)
            if (divisors[i] % divisors[j] == 0) p = *exact_divide(p, phi[j]);
        phi[i] = std::move(p);
    }
    return phi.back();
}

std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t result = n;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace {

const std::vector<std::uint32_t>& phi_table() {
    static const std::vector<std::uint32_t> table = [] {
        constexpr std::uint32_t limit = 100000;
        std::vector<std::uint32_t> phi(limit + 1);
        for (std::uint32_t i = 0; i <= limit; ++i) phi[i] = i;
        for (std::uint32_t p = 2; p <= limit; ++p) {
            if (phi[p] != p) continue;
            for (std::uint32_t k = p; k <= limit; k += p) phi[k] -= phi[k] / p;
        }
        return phi;
    }();
    return table;
}

}  // namespace

std::vector<std::uint64_t> phi_inverse(std::uint64_t d, std::uint64_t limit) {
    // phi(m) >= sqrt(m/2), so every solution satisfies m <= 2 d^2.
    const std::uint64_t bound = std::min<std::uint64_t>(limit, 2 * d * d + 2);
    std::vector<std::uint64_t> out;
    const auto& table = phi_table();
    for (std::uint64_t m = 1; m <= bound; ++m) {
        const std::uint64_t phi = m < table.size() ? table[m] : euler_phi(m);
        if (phi == d) out.push_back(m);
    }
    return out;
}

// ---------------------------------------------------------------- valuations

long vp(const Int& n, unsigned long p) {
    if (n == 0) throw Error(ErrorKind::InvalidInput, "vp of zero integer has no finite value");
    Int t = abs(n);
    Int prime = p;
    return static_cast<long>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), prime.get_mpz_t()));
}

PadicValuation vp(const Rational& q, unsigned long p) {
    if (!is_prime(p)) throw Error(ErrorKind::InvalidInput, std::to_string(p) + " is not prime");
    PadicValuation out;
    out.prime = p;
    if (q == 0) return out;
    out.value = vp(Int(q.get_num()), p) - vp(Int(q.get_den()), p);
    return out;
}

double log_abs(const Int& n) {
    if (n == 0) throw Error(ErrorKind::InvalidInput, "log of zero");
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log(std::abs(mant)) + static_cast<double>(exp) * std::numbers::ln2;
}

double log_abs(const Rational& q) {
    return log_abs(Int(q.get_num())) - log_abs(Int(q.get_den()));
}

bool is_prime(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

std::vector<unsigned long> prime_divisors(const Int& n) {
    std::vector<unsigned long> out;
    Int t = abs(n);
    if (t == 0) throw Error(ErrorKind::InvalidInput, "prime divisors of zero");
    for (unsigned long p = 2; p <= 10000000UL; ++p) {
        if (t == 1) break;
        if (Int(p) * p > t) {
            if (!t.fits_ulong_p())
                throw Error(ErrorKind::ResourceLimit, "prime cofactor too large: " + t.get_str());
            out.push_back(t.get_ui());
            t = 1;
            break;
        }
        if (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
            out.push_back(p);
            while (mpz_divisible_ui_p(t.get_mpz_t(), p)) t /= p;
        }
    }
    if (t != 1) {
        if (!t.fits_ulong_p() || mpz_probab_prime_p(t.get_mpz_t(), 30) == 0)
            throw Error(ErrorKind::ResourceLimit, "cannot factor integer at desk scale: " + n.get_str());
        out.push_back(t.get_ui());
    }
    return out;
}

}  // namespace arithdyn
