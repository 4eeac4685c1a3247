#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace chronkh {

using Int = boost::multiprecision::cpp_int;

/// Chronological bidegree (a, b): a counts births minus merges, b deaths
/// minus splits. Additive under composition and disjoint union.
struct BiDegree {
    int a = 0;
    int b = 0;

    constexpr BiDegree() = default;
    constexpr BiDegree(int a_, int b_) : a(a_), b(b_) {}

    constexpr BiDegree operator+(const BiDegree& o) const { return {a + o.a, b + o.b}; }
    constexpr BiDegree operator-(const BiDegree& o) const { return {a - o.a, b - o.b}; }
    constexpr BiDegree operator-() const { return {-a, -b}; }
    constexpr bool operator==(const BiDegree& o) const = default;

    /// Single integer grading obtained by adding the two components.
    constexpr int collapsed() const { return a + b; }
};

/// An invertible scalar +-X^x Y^y Z^z of the ground ring, in canonical
/// form: x, y in {0,1} (X^2 = Y^2 = 1) and z an arbitrary integer.
struct UnitMonomial {
    int sign = +1;    // +1 or -1
    int xExp = 0;     // 0 or 1
    int yExp = 0;     // 0 or 1
    long zExp = 0;

    static constexpr UnitMonomial one() { return {}; }
    static constexpr UnitMonomial minusOne() { return {-1, 0, 0, 0}; }
    static constexpr UnitMonomial X() { return {+1, 1, 0, 0}; }
    static constexpr UnitMonomial Y() { return {+1, 0, 1, 0}; }
    static constexpr UnitMonomial Z(long k = 1) { return {+1, 0, 0, k}; }

    constexpr UnitMonomial operator*(const UnitMonomial& o) const {
        return {sign * o.sign, (xExp + o.xExp) & 1, (yExp + o.yExp) & 1, zExp + o.zExp};
    }
    constexpr UnitMonomial inverse() const { return {sign, xExp, yExp, -zExp}; }
    constexpr UnitMonomial operator-() const { return {-sign, xExp, yExp, zExp}; }

    constexpr bool operator==(const UnitMonomial& o) const = default;
    constexpr auto operator<=>(const UnitMonomial& o) const = default;

    constexpr bool isOne() const { return *this == one(); }

    /// Renders e.g. "-X*Z^-2"; the identity renders as "1".
    std::string render() const;
    /// Inverse of render(). Returns nullopt on malformed input.
    static std::optional<UnitMonomial> parse(const std::string& text);
};

/// The twist lambda((a,b),(a',b')) = X^{aa'} Y^{bb'} Z^{ab'-a'b}.
constexpr UnitMonomial lambda(BiDegree d1, BiDegree d2) {
    return {+1, (d1.a * d2.a) & 1, (d1.b * d2.b) & 1,
            static_cast<long>(d1.a) * d2.b - static_cast<long>(d2.a) * d1.b};
}

/// One of the eight ring maps sending X, Y, Z to +-1.
struct Specialization {
    int x = 1;
    int y = 1;
    int z = 1;

    static constexpr Specialization even() { return {1, 1, 1}; }
    static constexpr Specialization odd() { return {1, -1, 1}; }
    static std::array<Specialization, 8> all8();

    constexpr bool operator==(const Specialization& o) const = default;

    constexpr int apply(const UnitMonomial& m) const {
        int v = m.sign;
        if (m.xExp) v *= x;
        if (m.yExp) v *= y;
        if (m.zExp & 1) v *= z;  // z = +-1, so z^k = z^(k mod 2)
        return v;
    }

    std::string name() const;  // "even", "odd", or "x,y,z" triple
    static std::optional<Specialization> parse(const std::string& text);
};

/// An element of the ground ring: a finite integer combination of canonical
/// unit monomials. Sign of a monomial is folded into the coefficient.
class RingElement {
public:
    // key = (xExp, yExp, zExp)
    using Key = std::tuple<int, int, long>;

    RingElement() = default;
    RingElement(const UnitMonomial& m, Int coeff = 1) { add(m, std::move(coeff)); }
    static RingElement zero() { return {}; }
    static RingElement unit() { return RingElement(UnitMonomial::one()); }

    void add(const UnitMonomial& m, Int coeff = 1);
    RingElement& operator+=(const RingElement& o);
    RingElement& operator-=(const RingElement& o);
    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator*(const RingElement& o) const;
    RingElement operator*(const UnitMonomial& m) const;
    RingElement operator-() const;
    bool operator==(const RingElement& o) const = default;

    bool isZero() const { return terms_.empty(); }
    std::size_t termCount() const { return terms_.size(); }

    /// If this element is c * m for a single canonical monomial m with c = +-1,
    /// returns the unit monomial (sign folded in).
    std::optional<UnitMonomial> asUnitMonomial() const;

    Int specialize(const Specialization& s) const;

    /// True if every coefficient is divisible by n.
    bool divisibleBy(const Int& n) const;

    const std::map<Key, Int>& terms() const { return terms_; }

    std::string render() const;

private:
    std::map<Key, Int> terms_;
};

}  // namespace chronkh
