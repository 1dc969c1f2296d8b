#ifndef BERNMEANS_BERNMEANS_HPP
#define BERNMEANS_BERNMEANS_HPP

#include "bernmeans/coefficients.hpp"
#include "bernmeans/derivatives.hpp"
#include "bernmeans/errors.hpp"
#include "bernmeans/finite_difference.hpp"
#include "bernmeans/means.hpp"
#include "bernmeans/quadrature.hpp"
#include "bernmeans/representations.hpp"
#include "bernmeans/stieltjes.hpp"
#include "bernmeans/verify.hpp"

#endif // BERNMEANS_BERNMEANS_HPP
