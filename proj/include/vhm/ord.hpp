#pragma once

#include <climits>
#include <compare>
#include <string>

namespace vhm {

/// Value of an ord function: a nonnegative integer or infinity.
class Ord {
public:
    constexpr Ord() = default;
    constexpr explicit Ord(int value) : v_(value) {}

    static constexpr Ord infinity() { return Ord(); }

    constexpr bool is_infinite() const { return v_ == kInf; }
    constexpr int value() const { return v_; }

    constexpr auto operator<=>(const Ord&) const = default;

    friend constexpr Ord operator+(Ord a, Ord b)
    {
        if (a.is_infinite() || b.is_infinite()) return infinity();
        return Ord(a.v_ + b.v_);
    }

    std::string to_string() const { return is_infinite() ? "inf" : std::to_string(v_); }

private:
    static constexpr int kInf = INT_MAX;
    int v_ = kInf;
};

}  // namespace vhm
