#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace serialhom {

/// Natural number extended with infinity. Infinity sorts above every finite
/// value and absorbs addition; subtraction saturates at zero.
class ExtNat {
public:
    ExtNat() = default;
    ExtNat(long long v) : value_(v) {
        if (v < 0) throw std::invalid_argument("ExtNat: negative value");
    }
    static ExtNat infinity() {
        ExtNat e;
        e.infinite_ = true;
        return e;
    }

    bool is_infinite() const { return infinite_; }
    long long value() const {
        if (infinite_) throw std::logic_error("ExtNat: value() of infinity");
        return value_;
    }

    friend bool operator==(const ExtNat& a, const ExtNat& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend std::strong_ordering operator<=>(const ExtNat& a, const ExtNat& b) {
        if (a.infinite_ || b.infinite_) return (a.infinite_ ? 1 : 0) <=> (b.infinite_ ? 1 : 0);
        return a.value_ <=> b.value_;
    }

    ExtNat operator+(long long d) const {
        if (infinite_) return *this;
        long long w = value_ + d;
        return ExtNat(w < 0 ? 0 : w);
    }

    std::string str() const { return infinite_ ? "inf" : std::to_string(value_); }

private:
    long long value_ = 0;
    bool infinite_ = false;
};

inline ExtNat max(const ExtNat& a, const ExtNat& b) { return a < b ? b : a; }
inline ExtNat min(const ExtNat& a, const ExtNat& b) { return a < b ? a : b; }

}  // namespace serialhom
