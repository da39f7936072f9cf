#pragma once

#include <cmath>

namespace gausscircle {

/// Neumaier-compensated running sum. Long oscillatory partial sums (10^6
/// terms) stay reproducible to a few ulps of the result.
class CompensatedSum {
public:
    CompensatedSum& operator+=(double term) noexcept {
        const double t = sum_ + term;
        if (std::fabs(sum_) >= std::fabs(term))
            carry_ += (sum_ - t) + term;
        else
            carry_ += (term - t) + sum_;
        sum_ = t;
        return *this;
    }

    [[nodiscard]] double value() const noexcept { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

}  // namespace gausscircle
