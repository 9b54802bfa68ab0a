#pragma once

#include <stdexcept>
#include <string>

namespace xychain {

struct InvalidParams : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numerical failures carry the failing stage in the message.
struct QuadratureFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConvergenceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PfaffianDegeneracy : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PositivityViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateAngle : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OptimizerNotConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonUniformGrid : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoInteriorExtremum : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateFit : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonPositiveValue : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientOverlap : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DivisionByZeroSlope : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace xychain
