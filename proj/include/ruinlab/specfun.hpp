#pragma once

#include <cstddef>
#include <vector>

namespace ruinlab {

double norm_pdf(double x);
double norm_cdf(double x);

// Regularized lower incomplete gamma P(a,x); series for x < a+1,
// continued fraction otherwise.
double gamma_p(double a, double x);

// Survival function of the chi-square distribution with k dof.
double chi_square_sf(double stat, int dof);

// Kolmogorov distribution survival Q(lambda) = 2 sum (-1)^{k-1} e^{-2k^2 lambda^2}.
double kolmogorov_sf(double lambda);

struct QuadratureRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

// Gauss-Legendre nodes/weights by Newton iteration on P_n.
QuadratureRule gauss_legendre(std::size_t n);

}  // namespace ruinlab
