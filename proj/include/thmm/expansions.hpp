#pragma once

#include <string>
#include <vector>

#include "thmm/resolvent.hpp"

namespace thmm {

enum class Center { Zero, A };

std::string to_string(Center c);

enum class CoefficientSource { ClosedForm, Extracted };

struct SeriesCoefficients {
  Center center = Center::Zero;
  Parity parity = Parity::Even;
  int n = 0;
  std::vector<Matrix> coeffs;
  std::vector<CoefficientSource> source;
};

// Atilde_0..Atilde_{n+2}: V^{(2n+1)}(z) = sum_j z^j Atilde_j.
SeriesCoefficients series_even_at_zero(const EvenResolvent& res);
// Btilde_0..Btilde_{n+1}: V^{(2n)}(z) = sum_j z^j Btilde_j.
SeriesCoefficients series_odd_at_zero(const OddResolvent& res);
// Ctilde_0..Ctilde_{n+2}: U^{(2n+1)}(z) = sum_j (z-a)^j Ctilde_j.
SeriesCoefficients series_even_at_a(const EvenResolvent& res);
// Dtilde_0..Dtilde_{n+1}: U^{(2n)}(z) = sum_j (z-a)^j Dtilde_j.
SeriesCoefficients series_odd_at_a(const OddResolvent& res);

// Coefficients read off an assembled polynomial, padded with zeros.
std::vector<Matrix> extract_coefficients(const MatrixPolynomial& p, int count);
// Coefficients in powers of (z - c) by Taylor recentering, padded.
std::vector<Matrix> extract_recentered(const MatrixPolynomial& p, cplx c, int count);

struct ExpansionComparison {
  SeriesCoefficients series;
  std::vector<Matrix> extracted;
  std::vector<double> diff;  // normalized residual per coefficient

  double max_diff() const;
};

// Parity from the sequence order; closed forms against extraction.
ExpansionComparison compare_expansion(const MomentSequence& seq, Center center);

}  // namespace thmm
