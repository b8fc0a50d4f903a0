#pragma once

#include <cmath>
#include <span>

namespace projlog::detail {

// Neumaier-compensated accumulator. Results depend only on the order of
// add() calls, so callers that accumulate in index order are reproducible
// regardless of how the terms were produced.
class compensated_sum
{
public:
    void add(double x) noexcept
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    compensated_sum& operator+=(double x) noexcept
    {
        add(x);
        return *this;
    }

    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double ordered_sum(std::span<const double> xs) noexcept
{
    compensated_sum s;
    for (double x : xs)
        s.add(x);
    return s.value();
}

} // namespace projlog::detail
