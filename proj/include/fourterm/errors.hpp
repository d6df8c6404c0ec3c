#ifndef FOURTERM_ERRORS_HPP
#define FOURTERM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fourterm {

// Family descriptor or configuration rejected.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A ratio iterate dropped below the pole floor: z is too close to a zero of
// an intermediate polynomial.
struct NearPoleError : std::runtime_error {
    NearPoleError(const std::string& msg, int level_) : std::runtime_error(msg), level(level_) {}
    int level;
};

// A cascade bracket shows no sign change that subdivision could not repair:
// the interlacing hypothesis fails badly or zeros left the real line.
struct InterlacingViolation : std::runtime_error {
    InterlacingViolation(const std::string& msg, int level_, double lo_, double hi_)
        : std::runtime_error(msg), level(level_), bracket_lo(lo_), bracket_hi(hi_) {}
    int level;
    double bracket_lo;
    double bracket_hi;
};

// An iterative refinement (Newton polish, adaptive quadrature) missed its
// target tolerance.
struct ToleranceFailure : std::runtime_error {
    ToleranceFailure(const std::string& msg, double achieved_)
        : std::runtime_error(msg), achieved(achieved_) {}
    double achieved;
};

// phi requested on (or within 1e-14 of) the cut [0,1].
struct OnCutError : std::runtime_error {
    explicit OnCutError(const std::string& msg) : std::runtime_error(msg) {}
};

// Cubic root tracking could not separate nearly coincident roots.
struct AmbiguityError : std::runtime_error {
    explicit AmbiguityError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fourterm

#endif
