#include "mcp/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "mcp/errors.hpp"

namespace mcp {

Rat rat(long num, long den) {
    if (den == 0) throw InputError("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Rat pow2(long exp) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(std::labs(exp)));
    Rat q = exp >= 0 ? Rat(p) : Rat(1, p);
    q.canonicalize();
    return q;
}

namespace {

bool is_integer_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rat parse_rat(const std::string& text) {
    const std::size_t slash = text.find('/');
    std::string num = text.substr(0, slash == std::string::npos ? text.size() : slash);
    if (!is_integer_token(num)) throw InputError("bad rational literal: '" + text + "'");
    if (num[0] == '+') num.erase(0, 1);  // mpz_set_str rejects a leading '+'
    mpz_class n(num);

    if (slash == std::string::npos) return Rat(n);

    std::string den = text.substr(slash + 1);
    mpz_class d;
    if (den.rfind("2^", 0) == 0 && is_integer_token(den.substr(2)) && den[2] != '-' && den[2] != '+') {
        mpz_ui_pow_ui(d.get_mpz_t(), 2, std::strtoul(den.c_str() + 2, nullptr, 10));
    } else if (is_integer_token(den) && den[0] != '-' && den[0] != '+') {
        d = mpz_class(den);
    } else {
        throw InputError("bad rational literal: '" + text + "'");
    }
    if (d == 0) throw InputError("bad rational literal (zero denominator): '" + text + "'");

    Rat q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rat& q) { return q.get_str(); }

std::string to_decimal(const Rat& q, int digits) {
    mpz_class num = q.get_num();
    const mpz_class& den = q.get_den();
    std::string sign;
    if (num < 0) {
        sign = "-";
        num = -num;
    }
    mpz_class ip = num / den;
    mpz_class rem = num % den;
    std::string out = sign + ip.get_str();
    if (digits <= 0) return out;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    std::string frac = mpz_class(rem * scale / den).get_str();
    out += "." + std::string(static_cast<std::size_t>(digits) - frac.size(), '0') + frac;
    return out;
}

bool is_dyadic(const Rat& q, unsigned max_exp) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, max_exp);
    return mpz_divisible_p(scale.get_mpz_t(), q.get_den().get_mpz_t()) != 0;
}

std::string to_string(const std::vector<Rat>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += v[i].get_str();
    }
    return out;
}

}  // namespace mcp
