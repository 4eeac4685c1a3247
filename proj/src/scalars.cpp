#include "chronkh/scalars.hpp"

#include <cctype>
#include <sstream>

namespace chronkh {

std::string UnitMonomial::render() const {
    std::ostringstream out;
    if (sign < 0) out << '-';
    bool any = false;
    auto sep = [&] {
        if (any) out << '*';
        any = true;
    };
    if (xExp) { sep(); out << 'X'; }
    if (yExp) { sep(); out << 'Y'; }
    if (zExp != 0) {
        sep();
        out << 'Z';
        if (zExp != 1) out << '^' << zExp;
    }
    if (!any) out << '1';
    return out.str();
}

std::optional<UnitMonomial> UnitMonomial::parse(const std::string& text) {
    std::size_t i = 0;
    auto skipWs = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    UnitMonomial m;
    skipWs();
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        if (text[i] == '-') m.sign = -1;
        ++i;
        skipWs();
    }
    if (i >= text.size()) return std::nullopt;
    if (text[i] == '1') {
        ++i;
        skipWs();
        return i == text.size() ? std::optional(m) : std::nullopt;
    }
    bool first = true;
    while (i < text.size()) {
        if (!first) {
            if (text[i] != '*') return std::nullopt;
            ++i;
            skipWs();
        }
        first = false;
        if (i >= text.size()) return std::nullopt;
        char v = text[i++];
        long exp = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            std::size_t start = i;
            if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (i == start) return std::nullopt;
            try {
                exp = std::stol(text.substr(start, i - start));
            } catch (...) {
                return std::nullopt;
            }
        }
        switch (v) {
            case 'X': if (exp & 1) m.xExp ^= 1; break;
            case 'Y': if (exp & 1) m.yExp ^= 1; break;
            case 'Z': m.zExp += exp; break;
            default: return std::nullopt;
        }
        skipWs();
    }
    return m;
}

std::array<Specialization, 8> Specialization::all8() {
    std::array<Specialization, 8> out;
    int k = 0;
    for (int x : {1, -1})
        for (int y : {1, -1})
            for (int z : {1, -1}) out[k++] = {x, y, z};
    return out;
}

std::string Specialization::name() const {
    if (*this == even()) return "even";
    if (*this == odd()) return "odd";
    std::ostringstream out;
    out << x << ',' << y << ',' << z;
    return out.str();
}

std::optional<Specialization> Specialization::parse(const std::string& text) {
    if (text == "even") return even();
    if (text == "odd") return odd();
    Specialization s;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (in >> s.x >> c1 >> s.y >> c2 >> s.z && c1 == ',' && c2 == ',' &&
        (s.x == 1 || s.x == -1) && (s.y == 1 || s.y == -1) && (s.z == 1 || s.z == -1)) {
        std::string rest;
        if (!(in >> rest)) return s;
    }
    return std::nullopt;
}

void RingElement::add(const UnitMonomial& m, Int coeff) {
    if (m.sign < 0) coeff = -coeff;
    Key k{m.xExp, m.yExp, m.zExp};
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        if (coeff != 0) terms_.emplace(k, std::move(coeff));
        return;
    }
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
}

RingElement& RingElement::operator+=(const RingElement& o) {
    for (const auto& [k, c] : o.terms_) {
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
    for (const auto& [k, c] : o.terms_) {
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, -c);
        } else {
            it->second -= c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

RingElement RingElement::operator+(const RingElement& o) const {
    RingElement r = *this;
    r += o;
    return r;
}

RingElement RingElement::operator-(const RingElement& o) const {
    RingElement r = *this;
    r -= o;
    return r;
}

RingElement RingElement::operator*(const RingElement& o) const {
    RingElement r;
    for (const auto& [k1, c1] : terms_)
        for (const auto& [k2, c2] : o.terms_) {
            UnitMonomial m{+1, (std::get<0>(k1) + std::get<0>(k2)) & 1,
                           (std::get<1>(k1) + std::get<1>(k2)) & 1,
                           std::get<2>(k1) + std::get<2>(k2)};
            r.add(m, c1 * c2);
        }
    return r;
}

RingElement RingElement::operator*(const UnitMonomial& m) const {
    RingElement r;
    for (const auto& [k, c] : terms_) {
        UnitMonomial t{m.sign, (std::get<0>(k) + m.xExp) & 1, (std::get<1>(k) + m.yExp) & 1,
                       std::get<2>(k) + m.zExp};
        r.add(t, c);
    }
    return r;
}

RingElement RingElement::operator-() const {
    RingElement r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
}

std::optional<UnitMonomial> RingElement::asUnitMonomial() const {
    if (terms_.size() != 1) return std::nullopt;
    const auto& [k, c] = *terms_.begin();
    if (c != 1 && c != -1) return std::nullopt;
    return UnitMonomial{c > 0 ? +1 : -1, std::get<0>(k), std::get<1>(k),
                        std::get<2>(k)};
}

Int RingElement::specialize(const Specialization& s) const {
    Int v = 0;
    for (const auto& [k, c] : terms_) {
        int u = 1;
        if (std::get<0>(k)) u *= s.x;
        if (std::get<1>(k)) u *= s.y;
        if (std::get<2>(k) & 1) u *= s.z;
        v += u > 0 ? c : -c;
    }
    return v;
}

bool RingElement::divisibleBy(const Int& n) const {
    for (const auto& [k, c] : terms_)
        if (c % n != 0) return false;
    return true;
}

std::string RingElement::render() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        UnitMonomial m{+1, std::get<0>(k), std::get<1>(k), std::get<2>(k)};
        Int coeff = c;
        if (!first) {
            out << (coeff < 0 ? " - " : " + ");
            if (coeff < 0) coeff = -coeff;
        }
        first = false;
        if (coeff == 1 && !m.isOne()) {
            out << m.render();
        } else if (coeff == -1 && !m.isOne()) {
            out << '-' << m.render();
        } else if (m.isOne()) {
            out << coeff;
        } else {
            out << coeff << '*' << m.render();
        }
    }
    return out.str();
}

}  // namespace chronkh
