#include "ruinlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ruinlab/specfun.hpp"

namespace ruinlab {

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
    if (trials == 0) throw std::domain_error("wilson_interval: no trials");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

void RunningStat::add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
}

double RunningStat::variance() const {
    return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
}

double RunningStat::stderr_mean() const {
    return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
}

Histogram1D::Histogram1D(double lo, double hi, std::size_t bins)
    : lo_(lo), hi_(hi), width_((hi - lo) / static_cast<double>(bins)), counts_(bins, 0) {
    if (!(hi > lo) || bins == 0) throw std::invalid_argument("Histogram1D: bad range");
}

void Histogram1D::add(double x) {
    ++total_;
    if (x < lo_ || x >= hi_) {
        ++overflow_;
        return;
    }
    auto i = static_cast<std::size_t>((x - lo_) / width_);
    if (i >= counts_.size()) i = counts_.size() - 1;
    ++counts_[i];
}

double Histogram1D::bin_lo(std::size_t i) const { return lo_ + width_ * static_cast<double>(i); }
double Histogram1D::bin_hi(std::size_t i) const { return lo_ + width_ * static_cast<double>(i + 1); }

std::vector<double> Histogram1D::masses() const {
    std::vector<double> m(counts_.size(), 0.0);
    if (total_ == 0) return m;
    for (std::size_t i = 0; i < counts_.size(); ++i)
        m[i] = static_cast<double>(counts_[i]) / static_cast<double>(total_);
    return m;
}

Histogram2D::Histogram2D(double xlo, double xhi, std::size_t xbins,
                         double ylo, double yhi, std::size_t ybins)
    : xlo_(xlo), xhi_(xhi), ylo_(ylo), yhi_(yhi),
      xw_((xhi - xlo) / static_cast<double>(xbins)),
      yw_((yhi - ylo) / static_cast<double>(ybins)),
      xbins_(xbins), ybins_(ybins), counts_(xbins * ybins, 0) {
    if (!(xhi > xlo) || !(yhi > ylo) || xbins == 0 || ybins == 0)
        throw std::invalid_argument("Histogram2D: bad range");
}

void Histogram2D::add(double x, double y) {
    ++total_;
    if (x < xlo_ || x >= xhi_ || y < ylo_ || y >= yhi_) {
        ++overflow_;
        return;
    }
    auto i = static_cast<std::size_t>((x - xlo_) / xw_);
    auto j = static_cast<std::size_t>((y - ylo_) / yw_);
    if (i >= xbins_) i = xbins_ - 1;
    if (j >= ybins_) j = ybins_ - 1;
    ++counts_[i * ybins_ + j];
}

std::vector<double> Histogram2D::masses() const {
    std::vector<double> m(counts_.size(), 0.0);
    if (total_ == 0) return m;
    for (std::size_t i = 0; i < counts_.size(); ++i)
        m[i] = static_cast<double>(counts_[i]) / static_cast<double>(total_);
    return m;
}

double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) throw std::invalid_argument("tv_distance: size mismatch");
    double sum = 0.0, pm = 0.0, qm = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        sum += std::abs(p[i] - q[i]);
        pm += p[i];
        qm += q[i];
    }
    // residual mass outside the binned region
    return 0.5 * (sum + std::abs((1.0 - pm) - (1.0 - qm)));
}

double chi_square_gof_pvalue(const std::vector<std::size_t>& observed,
                             const std::vector<double>& expected_prob) {
    if (observed.size() != expected_prob.size())
        throw std::invalid_argument("chi_square_gof_pvalue: size mismatch");
    std::size_t n = 0;
    for (auto c : observed) n += c;
    if (n == 0) throw std::invalid_argument("chi_square_gof_pvalue: empty sample");

    // pool adjacent bins until every expected count is at least 5
    std::vector<double> exp_pooled;
    std::vector<double> obs_pooled;
    double eacc = 0.0, oacc = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        eacc += expected_prob[i] * static_cast<double>(n);
        oacc += static_cast<double>(observed[i]);
        if (eacc >= 5.0) {
            exp_pooled.push_back(eacc);
            obs_pooled.push_back(oacc);
            eacc = oacc = 0.0;
        }
    }
    if (eacc > 0.0 && !exp_pooled.empty()) {
        exp_pooled.back() += eacc;
        obs_pooled.back() += oacc;
    }
    if (exp_pooled.size() < 2) return 1.0;

    double stat = 0.0;
    for (std::size_t i = 0; i < exp_pooled.size(); ++i) {
        const double d = obs_pooled[i] - exp_pooled[i];
        stat += d * d / exp_pooled[i];
    }
    return chi_square_sf(stat, static_cast<int>(exp_pooled.size()) - 1);
}

double ks_test_pvalue(const std::vector<double>& sorted_cdf_values) {
    const std::size_t n = sorted_cdf_values.size();
    if (n == 0) throw std::invalid_argument("ks_test_pvalue: empty sample");
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = sorted_cdf_values[i];
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    const double sn = std::sqrt(static_cast<double>(n));
    return kolmogorov_sf((sn + 0.12 + 0.11 / sn) * d);
}

}  // namespace ruinlab
