#pragma once

#include <cstddef>

#include "meshgnn/matrix.hpp"
#include "meshgnn/prng.hpp"

namespace meshgnn {

enum class Mode { kTrain, kEval };

DenseMatrix relu(const DenseMatrix& x);
// Passes `upstream` where the forward input was strictly positive.
DenseMatrix relu_backward(const DenseMatrix& x, const DenseMatrix& upstream);

// Inverted dropout. `mask` holds 0 for dropped entries and 1/(1-p) for kept
// ones; in eval mode (or p == 0) it is empty and the op is the identity.
struct DropoutResult {
  DenseMatrix output;
  DenseMatrix mask;
};

DropoutResult dropout(const DenseMatrix& x, double p, Mode mode, Prng& rng);
DenseMatrix dropout_backward(const DenseMatrix& mask, const DenseMatrix& upstream);

// Throws ConfigError unless 0 <= p < 1.
void validate_dropout_probability(double p);

// fan_in x fan_out matrix, entries uniform in [-L, L] with
// L = sqrt(6 / (fan_in + fan_out)).
DenseMatrix glorot_init(std::size_t fan_in, std::size_t fan_out, Prng& rng);
double glorot_limit(std::size_t fan_in, std::size_t fan_out);

}  // namespace meshgnn
