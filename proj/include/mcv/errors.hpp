#pragma once

#include <stdexcept>
#include <string>

namespace mcv {

/* every library failure derives from mcv::error; the leaf types are the
   conditions callers are expected to catch and branch on */
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// a rational with p in the denominator reached a p-adic context
struct NotPIntegral : error {
    explicit NotPIntegral(const std::string& w) : error(w) {}
};

// inversion of a non-unit (p-adic non-unit, group-ring non-unit, bad galois index)
struct NotAUnit : error {
    explicit NotAUnit(const std::string& w) : error(w) {}
};

// cyclotomic orders that cannot be reconciled (target not a multiple of source)
struct OrderMismatch : error {
    explicit OrderMismatch(const std::string& w) : error(w) {}
};

struct DivisionByZero : error {
    explicit DivisionByZero(const std::string& w) : error(w) {}
};

// an operation needs roots of unity the chosen coefficient domain lacks
struct MissingRoots : error {
    explicit MissingRoots(const std::string& w) : error(w) {}
};

// tried to invert |G| (or a character order) in a ring where it is not a unit,
// e.g. dividing by p^n with p-adic integer coefficients
struct NonInvertibleOrder : error {
    explicit NonInvertibleOrder(const std::string& w) : error(w) {}
};

// tower projection failed to reproduce the lower layer; carries the layer index
struct CompatibilityViolation : error {
    int layer;
    CompatibilityViolation(int n, const std::string& witness)
        : error("tower compatibility violated at layer " + std::to_string(n) +
                ": " + witness),
          layer(n) {}
};

// a regularized element failed coefficientwise p-integrality; witness names the
// offending group element and its valuation
struct NotIntegral : error {
    explicit NotIntegral(const std::string& witness)
        : error("regularized element not p-integral: " + witness) {}
};

// no embedding of the needed cyclotomic values into Q_p was fixed/available
struct EmbeddingUnavailable : error {
    explicit EmbeddingUnavailable(const std::string& w) : error(w) {}
};

// layer-(n-1) fold of the layer-n data disagrees with the layer-(n-1) data
struct CoherenceFailure : error {
    int layer;
    explicit CoherenceFailure(int n, const std::string& w)
        : error("mellin coherence failed between layers " + std::to_string(n - 1) +
                " and " + std::to_string(n) + ": " + w),
          layer(n) {}
};

// the requested statement is not decidable at the working (p-adic or T-adic)
// precision; never downgraded to a silent pass
struct PrecisionInsufficient : error {
    explicit PrecisionInsufficient(const std::string& w) : error(w) {}
};

// det line of a module that is not Lambda-torsion
struct NotTorsion : error {
    explicit NotTorsion(const std::string& w) : error(w) {}
};

// L(chi, s) evaluated at its pole
struct PoleAtOne : error {
    explicit PoleAtOne(const std::string& w) : error(w) {}
};

// fixture lookup (class-number table, shipped configs) missed
struct UnknownFixture : error {
    explicit UnknownFixture(const std::string& w) : error(w) {}
};

// a computation was requested beyond its guarded desk-scale bound
struct BoundExceeded : error {
    explicit BoundExceeded(const std::string& w) : error(w) {}
};

// graded lines over different base rings cannot be tensored/compared
struct BaseMismatch : error {
    explicit BaseMismatch(const std::string& w) : error(w) {}
};

// generator_ratio of generators living on different lines
struct LineMismatch : error {
    explicit LineMismatch(const std::string& w) : error(w) {}
};

// a tensor of graded lines whose net content ideal is genuinely fractional,
// so no single integral generator can represent it
struct FractionalContent : error {
    explicit FractionalContent(const std::string& w) : error(w) {}
};

// power series evaluated outside the maximal ideal (|t|_p >= 1)
struct NotInMaximalIdeal : error {
    explicit NotInMaximalIdeal(const std::string& w) : error(w) {}
};

}  // namespace mcv
