#pragma once

#include <cstddef>
#include <vector>

namespace ruinlab {

struct Interval {
    double low = 0.0;
    double high = 1.0;
};

// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::size_t successes, std::size_t trials,
                         double z = 1.959963984540054);

// Streaming mean / variance (Welford).
class RunningStat {
public:
    void add(double x);
    std::size_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const;  // sample variance
    double stderr_mean() const;

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

// Fixed-edge histogram; values outside [lo, hi) land in the overflow count.
class Histogram1D {
public:
    Histogram1D(double lo, double hi, std::size_t bins);
    void add(double x);
    std::size_t bins() const { return counts_.size(); }
    std::size_t total() const { return total_; }
    std::size_t overflow() const { return overflow_; }
    double bin_lo(std::size_t i) const;
    double bin_hi(std::size_t i) const;
    // probability mass per bin, normalized by total (including overflow)
    std::vector<double> masses() const;

private:
    double lo_, hi_, width_;
    std::vector<std::size_t> counts_;
    std::size_t total_ = 0;
    std::size_t overflow_ = 0;
};

class Histogram2D {
public:
    Histogram2D(double xlo, double xhi, std::size_t xbins,
                double ylo, double yhi, std::size_t ybins);
    void add(double x, double y);
    std::size_t total() const { return total_; }
    std::size_t xbins() const { return xbins_; }
    std::size_t ybins() const { return ybins_; }
    double xlo() const { return xlo_; }
    double xhi() const { return xhi_; }
    double ylo() const { return ylo_; }
    double yhi() const { return yhi_; }
    std::vector<double> masses() const;  // row-major, normalized by total

private:
    double xlo_, xhi_, ylo_, yhi_, xw_, yw_;
    std::size_t xbins_, ybins_;
    std::vector<std::size_t> counts_;
    std::size_t total_ = 0;
    std::size_t overflow_ = 0;
};

// Total variation distance between two mass vectors; mass missing from
// either vector (e.g. histogram overflow) counts toward the distance.
double tv_distance(const std::vector<double>& p, const std::vector<double>& q);

// Chi-square goodness-of-fit p-value for observed counts against expected
// probabilities; bins with tiny expectation are pooled.
double chi_square_gof_pvalue(const std::vector<std::size_t>& observed,
                             const std::vector<double>& expected_prob);

// One-sample Kolmogorov-Smirnov p-value; cdf_values must be the model CDF
// evaluated at the sorted sample.
double ks_test_pvalue(const std::vector<double>& sorted_cdf_values);

}  // namespace ruinlab
