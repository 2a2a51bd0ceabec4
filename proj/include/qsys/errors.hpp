#pragma once

#include <stdexcept>
#include <string>

namespace qsys {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define QSYS_ERROR(Name)                                                      \
    class Name : public Error {                                               \
    public:                                                                   \
        explicit Name(const std::string &what) : Error(#Name ": " + what) {}  \
    }

QSYS_ERROR(NotAProjection);
QSYS_ERROR(NotHermitian);
QSYS_ERROR(DimensionMismatch);
QSYS_ERROR(CellMismatch);
QSYS_ERROR(InvalidQSystem);
QSYS_ERROR(DegenerateRandomElement);
QSYS_ERROR(NormalizationFailure);
QSYS_ERROR(IllTypedPath);
QSYS_ERROR(InvalidTolerance);

#undef QSYS_ERROR

// Raised by standard_dual when a source index carries no basis vector.
class EmptyColumn : public Error {
public:
    explicit EmptyColumn(int col)
        : Error("EmptyColumn: source index " + std::to_string(col) + " has no basis vector"), column(col) {}
    int column; // 1-based
};

} // namespace qsys
