#ifndef ZETAREG_ERRORS_HPP
#define ZETAREG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zetareg {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define ZETAREG_DEFINE_ERROR(Name)                                      \
    struct Name : Error {                                               \
        explicit Name(const std::string& msg = #Name) : Error(msg) {}   \
    }

// ffield
ZETAREG_DEFINE_ERROR(NotPrime);
ZETAREG_DEFINE_ERROR(BudgetExceeded);
ZETAREG_DEFINE_ERROR(DivisionByZero);
ZETAREG_DEFINE_ERROR(FieldMismatch);

// geometry
ZETAREG_DEFINE_ERROR(NonHomogeneous);
ZETAREG_DEFINE_ERROR(InexactQuotient);
ZETAREG_DEFINE_ERROR(NegativeCensus);
ZETAREG_DEFINE_ERROR(UnsupportedCoefficient);

// zeta
ZETAREG_DEFINE_ERROR(NonIntegralSeries);
ZETAREG_DEFINE_ERROR(NotStabilized);
ZETAREG_DEFINE_ERROR(InsufficientOrder);
ZETAREG_DEFINE_ERROR(ZeroFunction);
ZETAREG_DEFINE_ERROR(ZeroInput);

// abgroup
ZETAREG_DEFINE_ERROR(NotFQ);
ZETAREG_DEFINE_ERROR(RowsNotExact);
ZETAREG_DEFINE_ERROR(NotAComplex);
ZETAREG_DEFINE_ERROR(HypothesisViolated);
ZETAREG_DEFINE_ERROR(MalformedMap);

// weight
ZETAREG_DEFINE_ERROR(IncoherentIncidence);
ZETAREG_DEFINE_ERROR(NotExact);
ZETAREG_DEFINE_ERROR(SignIncoherent);

// chowcat
ZETAREG_DEFINE_ERROR(IncompleteBase);
ZETAREG_DEFINE_ERROR(IncompleteProfile);
ZETAREG_DEFINE_ERROR(NonIntegralP1);

// cli
ZETAREG_DEFINE_ERROR(ParseError);

#undef ZETAREG_DEFINE_ERROR

} // namespace zetareg

#endif
