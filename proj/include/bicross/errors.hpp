#pragma once

#include <stdexcept>
#include <string>

namespace bicross {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define BICROSS_ERROR(Name)                     \
    struct Name : Error {                       \
        using Error::Error;                     \
    }

BICROSS_ERROR(OrderCapExceeded);
BICROSS_ERROR(SpecError);
BICROSS_ERROR(FactorizationError);
BICROSS_ERROR(ShapeError);
BICROSS_ERROR(NotPermutation);
BICROSS_ERROR(MissingStar);
BICROSS_ERROR(NotFactorReversing);
BICROSS_ERROR(ModuleUnverified);
BICROSS_ERROR(NotDecomposable);
BICROSS_ERROR(ObstructionVacuous);
BICROSS_ERROR(ArithmeticOverflow);

#undef BICROSS_ERROR

}  // namespace bicross
