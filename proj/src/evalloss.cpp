#include "betting/evalloss.hpp"

#include <cmath>
#include <limits>

namespace betting {

double log_loss(double density_value, LogBase base) {
    if (!(density_value > 0.0)) {
        return std::numeric_limits<double>::infinity();
    }
    return base == LogBase::ten ? -std::log10(density_value)
                                : -std::log(density_value);
}

}  // namespace betting
