#include "invopt/demand.hpp"

#include <algorithm>
#include <stdexcept>

namespace invopt {

std::vector<HistogramBin> demand_histogram(const DemandStream& stream, int days,
                                           int bins) {
    if (days <= 0) throw std::invalid_argument("histogram needs days > 0");
    if (bins <= 0) throw std::invalid_argument("histogram needs bins > 0");

    std::vector<int> samples(static_cast<std::size_t>(days));
    for (int d = 0; d < days; ++d) samples[d] = sample_day(stream, d);

    const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
    const double lo = *lo_it;
    // A degenerate range (constant demand) still needs a positive bin width so
    // every sample lands in bin 0 and counts stay conserved.
    const double hi = (*hi_it > *lo_it) ? static_cast<double>(*hi_it) : lo + 1.0;
    const double width = (hi - lo) / bins;

    std::vector<HistogramBin> out(static_cast<std::size_t>(bins));
    for (int b = 0; b < bins; ++b) {
        out[b].lo = lo + b * width;
        out[b].hi = (b + 1 == bins) ? hi : lo + (b + 1) * width;
    }
    for (int v : samples) {
        int b = static_cast<int>((v - lo) / width);
        b = std::clamp(b, 0, bins - 1);
        ++out[b].count;
    }
    return out;
}

}  // namespace invopt
