#include "vhm/poly.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace vhm {

Poly Poly::constant(int n, Complex value)
{
    Poly p(n);
    p.set(MultiIndex::zero(n), value);
    return p;
}

Poly Poly::monomial(int n, const MultiIndex& m, Complex coeff)
{
    if (m.variables() != n) {
        throw std::invalid_argument("Poly::monomial: arity mismatch");
    }
    Poly p(n);
    p.set(m, coeff);
    return p;
}

Poly Poly::variable(int n, int j)
{
    return monomial(n, MultiIndex::unit(n, j));
}

Complex Poly::coeff(const MultiIndex& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Complex{} : it->second;
}

void Poly::set(const MultiIndex& m, Complex c)
{
    if (m.variables() != n_) {
        throw std::invalid_argument("Poly::set: arity mismatch");
    }
    if (c == Complex{}) {
        terms_.erase(m);
    } else {
        terms_[m] = c;
    }
}

int Poly::max_degree() const
{
    return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
}

Poly Poly::operator+(const Poly& other) const
{
    if (other.n_ != n_) throw std::invalid_argument("Poly: arity mismatch");
    Poly r = *this;
    for (const auto& [m, c] : other.terms_) {
        r.set(m, r.coeff(m) + c);
    }
    return r;
}

Poly Poly::operator-(const Poly& other) const
{
    return *this + other * Complex(-1.0);
}

Poly Poly::operator*(const Poly& other) const
{
    if (other.n_ != n_) throw std::invalid_argument("Poly: arity mismatch");
    Poly r(n_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : other.terms_) {
            const MultiIndex m = ma + mb;
            r.set(m, r.coeff(m) + ca * cb);
        }
    }
    return r;
}

Poly Poly::operator*(Complex lambda) const
{
    Poly r(n_);
    if (lambda == Complex{}) return r;
    for (const auto& [m, c] : terms_) {
        r.set(m, c * lambda);
    }
    return r;
}

namespace {

std::string format_real(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_monomial(const MultiIndex& m)
{
    std::string out;
    for (int j = 0; j < m.variables(); ++j) {
        if (m[j] == 0) continue;
        if (!out.empty()) out += '*';
        out += m.variables() == 1 ? std::string("z") : "z" + std::to_string(j + 1);
        if (m[j] > 1) out += '^' + std::to_string(m[j]);
    }
    return out;
}

}  // namespace

std::string Poly::to_string() const
{
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
        if (!out.empty()) out += " + ";
        std::string coeff = c.imag() == 0.0 ? format_real(c.real())
                                            : "(" + format_real(c.real()) + "," + format_real(c.imag()) + ")";
        std::string mono = format_monomial(m);
        if (mono.empty()) {
            out += coeff;
        } else if (c == Complex(1.0)) {
            out += mono;
        } else {
            out += coeff + "*" + mono;
        }
    }
    return out;
}

Ord poly_ord(const Poly& p)
{
    if (p.is_zero()) return Ord::infinity();
    return Ord(p.terms().begin()->first.degree());
}

UnitalSplit unital_split(const Poly& p)
{
    const MultiIndex zero = MultiIndex::zero(p.variables());
    UnitalSplit s{p.coeff(zero), p};
    s.rest.set(zero, 0.0);
    return s;
}

namespace {

class PolyParser {
public:
    PolyParser(const std::string& text, int n) : s_(text), n_(n) {}

    Poly parse()
    {
        Poly result(n_);
        skip_ws();
        if (pos_ == s_.size()) fail("empty polynomial literal");
        bool first = true;
        while (pos_ < s_.size()) {
            double sign = 1.0;
            skip_ws();
            if (peek() == '+' || peek() == '-') {
                sign = get() == '-' ? -1.0 : 1.0;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            skip_ws();
            result = result + term() * Complex(sign);
            skip_ws();
        }
        return result;
    }

private:
    Poly term()
    {
        Complex coeff = 1.0;
        std::vector<int> exps(static_cast<std::size_t>(n_), 0);
        bool have_factor = false;
        while (true) {
            skip_ws();
            char c = peek();
            if (c == 'z') {
                ++pos_;
                int var = 0;
                if (std::isdigit(static_cast<unsigned char>(peek()))) {
                    var = integer() - 1;
                } else if (n_ != 1) {
                    fail("bare 'z' is only allowed for one variable");
                }
                if (var < 0 || var >= n_) fail("variable index out of range");
                int e = 1;
                skip_ws();
                if (peek() == '^') {
                    ++pos_;
                    skip_ws();
                    e = integer();
                }
                exps[static_cast<std::size_t>(var)] += e;
            } else if (c == '(') {
                ++pos_;
                double re = number();
                skip_ws();
                expect(',');
                double im = number();
                skip_ws();
                expect(')');
                coeff *= Complex(re, im);
            } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                coeff *= number();
            } else {
                fail("expected coefficient or variable");
            }
            have_factor = true;
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                continue;
            }
            break;
        }
        if (!have_factor) fail("empty term");
        return Poly::monomial(n_, MultiIndex(exps), coeff);
    }

    double number()
    {
        skip_ws();
        const char* begin = s_.c_str() + pos_;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) fail("expected number");
        pos_ += static_cast<std::size_t>(end - begin);
        return v;
    }

    int integer()
    {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected integer");
        return std::stoi(s_.substr(start, pos_ - start));
    }

    void expect(char c)
    {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return s_[pos_++]; }
    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw std::invalid_argument("polynomial literal \"" + s_ + "\" at offset " + std::to_string(pos_) +
                                    ": " + msg);
    }

    const std::string& s_;
    int n_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const std::string& text, int n)
{
    return PolyParser(text, n).parse();
}

}  // namespace vhm
