#include "arithdyn/projective.hpp"

#include "arithdyn/error.hpp"

#include <boost/math/special_functions/zeta.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace arithdyn {

ProjPointQ::ProjPointQ(std::vector<Int> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw Error(ErrorKind::InvalidInput, "projective point needs at least one coordinate");
    Int g = 0;
    for (const auto& c : coords_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 0) throw Error(ErrorKind::InvalidInput, "all homogeneous coordinates are zero");
    const auto first = std::find_if(coords_.begin(), coords_.end(), [](const Int& c) { return c != 0; });
    if (sgn(*first) < 0) g = -g;
    if (g != 1)
        for (auto& c : coords_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

ProjPointQ::ProjPointQ(std::initializer_list<long> coords)
    : ProjPointQ(std::vector<Int>(coords.begin(), coords.end())) {}

ProjPointQ ProjPointQ::from_rationals(const std::vector<Rational>& coords) {
    Int den = 1;
    for (const auto& c : coords) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Int> out;
    out.reserve(coords.size());
    for (const auto& c : coords) out.emplace_back(Rational(c * den).get_num());
    return ProjPointQ(std::move(out));
}

Int ProjPointQ::exp_height() const {
    Int m = 0;
    for (const auto& c : coords_)
        if (abs(c) > m) m = abs(c);
    return m;
}

std::string ProjPointQ::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? ":" : "") << coords_[i].get_str();
    os << ']';
    return os.str();
}

std::size_t ProjPointHash::operator()(const ProjPointQ& p) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto& c : p.coords()) {
        const std::size_t limb = mpz_size(c.get_mpz_t()) ? mpz_getlimbn(c.get_mpz_t(), 0) : 0;
        h ^= limb + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= static_cast<std::size_t>(mpz_sgn(c.get_mpz_t()) + 1) * 31u + mpz_size(c.get_mpz_t());
    }
    return h;
}

double height(const ProjPointQ& x) {
    return log_abs(x.exp_height());
}

// ---------------------------------------------------------------- enumeration

void for_each_in_shell(unsigned k, std::int64_t h,
                       const std::function<void(const std::vector<std::int64_t>&)>& visit) {
    const std::size_t n = k + 1;
    if (h < 0) return;
    if (h == 0) return;  // only the zero tuple has max 0
    std::vector<std::int64_t> x(n);
    std::vector<std::int64_t> lo(n), hi(n);
    // j is the first index carrying |x_j| = h.
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            if (i < j) {
                lo[i] = -(h - 1);
                hi[i] = h - 1;
            } else if (i == j) {
                lo[i] = -h;
                hi[i] = h;
            } else {
                lo[i] = -h;
                hi[i] = h;
            }
        }
        for (std::size_t i = 0; i < n; ++i) x[i] = lo[i];
        while (true) {
            bool valid = (x[j] == h || x[j] == -h);
            if (valid) {
                std::int64_t g = 0;
                std::int64_t first = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (first == 0) first = x[i];
                    g = std::gcd(g, x[i]);
                }
                if (first > 0 && g == 1) visit(x);
            }
            // Odometer; position j only takes the values -h and h.
            std::size_t pos = n;
            while (pos-- > 0) {
                if (pos == j) {
                    if (x[pos] == -h) {
                        x[pos] = h;
                        break;
                    }
                    x[pos] = -h;
                    continue;
                }
                if (x[pos] < hi[pos]) {
                    ++x[pos];
                    break;
                }
                x[pos] = lo[pos];
            }
            if (pos == static_cast<std::size_t>(-1)) break;
        }
    }
}

std::vector<ProjPointQ> enumerate_shell(unsigned k, std::int64_t h) {
    std::vector<ProjPointQ> out;
    for_each_in_shell(k, h, [&](const std::vector<std::int64_t>& x) {
        std::vector<Int> c(x.begin(), x.end());
        out.emplace_back(std::move(c));
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t count_points(unsigned k, std::int64_t height_bound) {
    std::uint64_t total = 0;
    for (std::int64_t h = 1; h <= height_bound; ++h)
        for_each_in_shell(k, h, [&](const std::vector<std::int64_t>&) { ++total; });
    return total;
}

std::vector<ProjPointQ> enumerate_points(unsigned k, std::int64_t height_bound, std::size_t cap) {
    if (height_bound < 0) throw Error(ErrorKind::InvalidInput, "height bound must be nonnegative");
    // The points [1:x_1:...:x_k] with |x_i| <= B alone number (2B+1)^k.
    const double lower = height_bound == 0 ? 0 : std::pow(2.0 * static_cast<double>(height_bound) + 1.0, k);
    if (lower > static_cast<double>(cap))
        throw Error(ErrorKind::ResourceLimit, "enumeration with H <= " + std::to_string(height_bound) +
                                                  " produces at least " + std::to_string(static_cast<std::uint64_t>(lower)) +
                                                  " points, above the cap of " + std::to_string(cap));
    std::vector<ProjPointQ> out;
    for (std::int64_t h = 1; h <= height_bound; ++h) {
        auto shell = enumerate_shell(k, h);
        if (out.size() + shell.size() > cap)
            throw Error(ErrorKind::ResourceLimit, "enumeration exceeds the cap of " + std::to_string(cap) +
                                                      " points (at least " +
                                                      std::to_string(out.size() + shell.size()) + ")");
        std::move(shell.begin(), shell.end(), std::back_inserter(out));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ProjPointQ> enumerate_points_log(unsigned k, double log_bound, std::size_t cap) {
    if (log_bound < 0) throw Error(ErrorKind::InvalidInput, "height bound must be nonnegative");
    if (log_bound > 60) throw Error(ErrorKind::ResourceLimit, "log height bound too large to enumerate");
    // Largest integer H with log H <= log_bound, robust to rounding of exp.
    auto bound = static_cast<std::int64_t>(std::floor(std::exp(log_bound)));
    while (bound > 1 && std::log(static_cast<double>(bound)) > log_bound + 1e-12) --bound;
    while (std::log(static_cast<double>(bound + 1)) <= log_bound + 1e-12) ++bound;
    return enumerate_points(k, bound, cap);
}

double zeta(unsigned s) {
    if (s < 2) throw Error(ErrorKind::InvalidInput, "zeta needs s >= 2");
    return boost::math::zeta(static_cast<double>(s));
}

double schanuel_ratio(unsigned k, std::int64_t height_bound) {
    if (height_bound < 2) throw Error(ErrorKind::InvalidInput, "Schanuel ratio needs B >= 2");
    const double n = static_cast<double>(count_points(k, height_bound));
    const double b = static_cast<double>(height_bound);
    const double main_term = std::pow(2.0, k) * std::pow(b, k + 1.0) / zeta(k + 1);
    return n / main_term;
}

// ---------------------------------------------------------------- embeddings

ProjPointQ segre(const ProjPointQ& x, const ProjPointQ& y) {
    std::vector<Int> out;
    out.reserve(x.coords().size() * y.coords().size());
    for (const auto& a : x.coords())
        for (const auto& b : y.coords()) out.push_back(a * b);
    return ProjPointQ(std::move(out));
}

namespace {

// Exponent vectors of total degree d in n variables, descending lex.
void monomials(std::size_t n, unsigned d, std::vector<unsigned>& current, std::vector<std::vector<unsigned>>& out) {
    if (current.size() + 1 == n) {
        current.push_back(d);
        out.push_back(current);
        current.pop_back();
        return;
    }
    for (unsigned e = d + 1; e-- > 0;) {
        current.push_back(e);
        monomials(n, d - e, current, out);
        current.pop_back();
    }
}

}  // namespace

ProjPointQ veronese(const ProjPointQ& x, unsigned d) {
    if (d == 0) throw Error(ErrorKind::InvalidInput, "Veronese degree must be >= 1");
    std::vector<std::vector<unsigned>> exps;
    std::vector<unsigned> cur;
    monomials(x.coords().size(), d, cur, exps);
    std::vector<Int> out;
    out.reserve(exps.size());
    for (const auto& e : exps) {
        Int m = 1;
        for (std::size_t i = 0; i < e.size(); ++i) {
            Int p;
            mpz_pow_ui(p.get_mpz_t(), x[i].get_mpz_t(), e[i]);
            m *= p;
        }
        out.push_back(std::move(m));
    }
    return ProjPointQ(std::move(out));
}

ProjPointQ linear_projection(const ProjPointQ& x, unsigned drop) {
    if (drop > x.dim()) throw Error(ErrorKind::InvalidInput, "projection index out of range");
    if (x.dim() == 0) throw Error(ErrorKind::InvalidInput, "cannot project P^0");
    std::vector<Int> out;
    for (unsigned i = 0; i <= x.dim(); ++i)
        if (i != drop) out.push_back(x[i]);
    if (std::all_of(out.begin(), out.end(), [](const Int& c) { return c == 0; }))
        throw Error(ErrorKind::InvalidInput, "point " + x.to_string() + " is the center of the projection");
    return ProjPointQ(std::move(out));
}

// ---------------------------------------------------------------- morphisms

HomogeneousPoly HomogeneousPoly::from_binary_form(const BinaryForm& f) {
    HomogeneousPoly p;
    p.nvars = 2;
    p.degree = f.degree();
    for (unsigned i = 0; i <= f.degree(); ++i)
        if (f[i] != 0) p.terms.push_back({{f.degree() - i, i}, f[i]});
    return p;
}

Int HomogeneousPoly::eval(const std::vector<Int>& x) const {
    Int total = 0;
    for (const auto& t : terms) {
        Int m = t.coeff;
        for (std::size_t i = 0; i < t.exponents.size(); ++i) {
            if (t.exponents[i] == 0) continue;
            Int p;
            mpz_pow_ui(p.get_mpz_t(), x[i].get_mpz_t(), t.exponents[i]);
            m *= p;
        }
        total += m;
    }
    return total;
}

Int HomogeneousPoly::l1_norm() const {
    Int s = 0;
    for (const auto& t : terms) s += abs(t.coeff);
    return s;
}

bool HomogeneousPoly::is_zero() const {
    return std::all_of(terms.begin(), terms.end(), [](const Term& t) { return t.coeff == 0; });
}

namespace {

BinaryForm to_binary_form(const HomogeneousPoly& p) {
    std::vector<Int> c(p.degree + 1, Int(0));
    for (const auto& t : p.terms) c[t.exponents[1]] += t.coeff;
    return BinaryForm(p.degree, std::move(c));
}

// Forms on P^1 share a projective zero iff their gcd has positive degree.
bool binary_forms_base_point_free(const std::vector<BinaryForm>& forms) {
    // Zero at [1:0] iff every X^d coefficient vanishes.
    if (std::all_of(forms.begin(), forms.end(), [](const BinaryForm& f) { return f[0] == 0; })) return false;
    // Affine zeros [t:1]: gcd of the dehomogenizations F(t, 1).
    IntPoly g;
    bool first = true;
    for (const auto& f : forms) {
        std::vector<Int> c(f.coeffs().rbegin(), f.coeffs().rend());  // coefficient of t^{d-i} is c_i
        IntPoly p(std::move(c));
        if (p.is_zero()) continue;
        g = first ? p.primitive() : gcd(g, p);
        first = false;
    }
    return first ? false : g.degree() == 0;
}

}  // namespace

HomMorphism::HomMorphism(unsigned source_dim, std::vector<HomogeneousPoly> forms)
    : source_dim_(source_dim), forms_(std::move(forms)) {
    if (forms_.empty()) throw Error(ErrorKind::InvalidInput, "morphism needs at least one form");
    degree_ = forms_.front().degree;
    for (const auto& f : forms_) {
        if (f.degree != degree_) throw Error(ErrorKind::InvalidInput, "morphism forms must share one degree");
        if (f.nvars != source_dim_ + 1) throw Error(ErrorKind::InvalidInput, "form variable count mismatch");
        for (const auto& t : f.terms) {
            if (t.exponents.size() != f.nvars) throw Error(ErrorKind::InvalidInput, "bad exponent vector");
            if (std::accumulate(t.exponents.begin(), t.exponents.end(), 0u) != f.degree)
                throw Error(ErrorKind::InvalidInput, "form is not homogeneous");
        }
    }
    if (std::all_of(forms_.begin(), forms_.end(), [](const HomogeneousPoly& f) { return f.is_zero(); }))
        throw Error(ErrorKind::InvalidInput, "all forms are identically zero");
    if (source_dim_ == 1) base_point_free_ = binary_forms_base_point_free(binary_forms());
}

HomMorphism HomMorphism::from_forms(const BinaryForm& u, const BinaryForm& v) {
    return HomMorphism(1, {HomogeneousPoly::from_binary_form(u), HomogeneousPoly::from_binary_form(v)});
}

HomMorphism HomMorphism::power_map(unsigned k, unsigned d) {
    std::vector<HomogeneousPoly> forms;
    for (unsigned i = 0; i <= k; ++i) {
        HomogeneousPoly p;
        p.nvars = k + 1;
        p.degree = d;
        std::vector<unsigned> e(k + 1, 0);
        e[i] = d;
        p.terms.push_back({e, Int(1)});
        forms.push_back(std::move(p));
    }
    HomMorphism f(k, std::move(forms));
    f.base_point_free_ = true;
    return f;
}

std::vector<BinaryForm> HomMorphism::binary_forms() const {
    if (source_dim_ != 1) throw Error(ErrorKind::InvalidInput, "binary-form view needs a source of dimension 1");
    std::vector<BinaryForm> out;
    for (const auto& f : forms_) out.push_back(to_binary_form(f));
    return out;
}

ProjPointQ apply_morphism(const HomMorphism& f, const ProjPointQ& x) {
    if (x.dim() != f.source_dim()) throw Error(ErrorKind::InvalidInput, "point dimension does not match the morphism");
    std::vector<Int> image;
    image.reserve(f.forms().size());
    for (const auto& form : f.forms()) image.push_back(form.eval(x.coords()));
    if (std::all_of(image.begin(), image.end(), [](const Int& c) { return c == 0; }))
        throw Error(ErrorKind::Indeterminacy, "morphism is not defined at " + x.to_string());
    return ProjPointQ(std::move(image));
}

FunctorialityConstants functoriality_constants(const HomMorphism& f) {
    FunctorialityConstants out;
    Int worst = 0;
    for (const auto& form : f.forms()) worst = std::max(worst, form.l1_norm());
    out.c_upper = log_abs(worst);
    if (f.source_dim() != 1 || !f.base_point_free()) return out;

    const auto forms = f.binary_forms();
    for (std::size_t i = 0; i < forms.size(); ++i)
        for (std::size_t j = i + 1; j < forms.size(); ++j) {
            if (resultant(forms[i], forms[j]) == 0) continue;
            const auto c = nullstellensatz_cofactors(forms[i], forms[j]);
            const Int nx = c.a_x.l1_norm() + c.b_x.l1_norm();
            const Int ny = c.a_y.l1_norm() + c.b_y.l1_norm();
            out.c_lower = log_abs(std::max(nx, ny));
            return out;
        }
    return out;
}

}  // namespace arithdyn
