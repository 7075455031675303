#pragma once

#include <stdexcept>
#include <string>

namespace sotm {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid input data, parameters, or file contents.
struct DataError : Error {
    using Error::Error;
};

// Filesystem-level failures (open/read/write).
struct IoError : Error {
    using Error::Error;
};

struct ZeroVarianceVariable : DataError {
    explicit ZeroVarianceVariable(const std::string& variable)
        : DataError("variable has zero pooled variance: " + variable), name(variable) {}
    std::string name;
};

struct DimensionMismatch : DataError {
    using DataError::DataError;
};

struct SchemaVersionMismatch : DataError {
    using DataError::DataError;
};

struct CorruptFile : DataError {
    using DataError::DataError;
};

struct DegenerateSlice : DataError {
    using DataError::DataError;
};

struct EmptySlice : DataError {
    explicit EmptySlice(const std::string& time_label)
        : DataError("time slice holds no data: " + time_label), time(time_label) {}
    std::string time;
};

struct MismatchedPanel : DataError {
    using DataError::DataError;
};

struct UnknownEntity : DataError {
    explicit UnknownEntity(const std::string& entity)
        : DataError("entity not present in panel: " + entity), id(entity) {}
    std::string id;
};

struct AllUnitsIdentical : DataError {
    using DataError::DataError;
};

} // namespace sotm
