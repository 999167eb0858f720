#pragma once

#include <stdexcept>
#include <string>

namespace gwseries {

// Base of every error raised by the library. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define GWSERIES_ERROR(Name)                                                   \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {}  \
    }

GWSERIES_ERROR(PoleTooDeep);
GWSERIES_ERROR(ZeroLeadingCoefficient);
GWSERIES_ERROR(OutOfCap);
GWSERIES_ERROR(InvalidTangency);
GWSERIES_ERROR(ZeroTangency);
GWSERIES_ERROR(RankMismatch);
GWSERIES_ERROR(PresetMismatch);
GWSERIES_ERROR(NonNilpotentArgument);
GWSERIES_ERROR(NonUnitConstantTerm);
GWSERIES_ERROR(SchemaError);
GWSERIES_ERROR(RationalParseError);
GWSERIES_ERROR(MissingInvariant);
GWSERIES_ERROR(MissingStationary);
GWSERIES_ERROR(NotInImage);
GWSERIES_ERROR(InvalidContactOrder);

#undef GWSERIES_ERROR

} // namespace gwseries
