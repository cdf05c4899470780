#pragma once

#include <stdexcept>
#include <string>

namespace pbsgame {

// The two block builders of the model. A is the one presumed advantaged in
// top-of-block extraction wherever an ordering is required.
enum class Builder { A, B };

inline Builder opponent_of(Builder b) { return b == Builder::A ? Builder::B : Builder::A; }

inline const char* to_string(Builder b) { return b == Builder::A ? "A" : "B"; }

// Scenario 1: the block-body transaction sits in the shared mempool, free to
// both builders. Scenario 2: it is sold exclusively in an order flow auction
// that runs before the block auction.
enum class Scenario { mempool = 1, ofa = 2 };

inline Scenario scenario_from_int(int s) {
    if (s == 1) return Scenario::mempool;
    if (s == 2) return Scenario::ofa;
    throw std::invalid_argument("scenario must be 1 or 2, got " + std::to_string(s));
}

// Raised when an iterative routine (quadrature subdivision, IRLS) hits its
// iteration budget before reaching tolerance.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pbsgame
