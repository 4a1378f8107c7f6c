#pragma once

#include <stdexcept>
#include <string>

namespace wsst {

// Base class for every error raised by the toolkit.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define WSST_DEFINE_ERROR(Name)          \
    struct Name : Error {                \
        using Error::Error;              \
    }

WSST_DEFINE_ERROR(NonFiniteInput);
WSST_DEFINE_ERROR(DominanceViolation);
WSST_DEFINE_ERROR(ZeroFundamental);
WSST_DEFINE_ERROR(AliasingRisk);
WSST_DEFINE_ERROR(BadDof);
WSST_DEFINE_ERROR(ZeroVariance);
WSST_DEFINE_ERROR(EmptySignal);
WSST_DEFINE_ERROR(GridMismatch);
WSST_DEFINE_ERROR(EmptyBand);
WSST_DEFINE_ERROR(AllBelowFloor);
WSST_DEFINE_ERROR(TooShort);
WSST_DEFINE_ERROR(IllConditioned);
WSST_DEFINE_ERROR(SingleClass);
WSST_DEFINE_ERROR(RankDeficient);
WSST_DEFINE_ERROR(DimensionMismatch);
WSST_DEFINE_ERROR(TooFewSamples);
WSST_DEFINE_ERROR(ParseError);
WSST_DEFINE_ERROR(NonUniformSampling);
WSST_DEFINE_ERROR(EmptyFile);

#undef WSST_DEFINE_ERROR

}  // namespace wsst
