#pragma once

#include <stdexcept>
#include <string>

namespace alibi {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text (FASTA, alignment scripts, parse dumps...).
class ParseError : public Error {
public:
    using Error::Error;
};

// The reserved separator byte showed up where it must not.
class ReservedByteError : public Error {
public:
    using Error::Error;
};

// A query or build parameter is outside its allowed range.
class ParameterError : public Error {
public:
    using Error::Error;
};

// Rank or position outside a structure.
class BoundsError : public Error {
public:
    using Error::Error;
};

// A coordinate interval crosses a genome separator.
class ProjectionError : public Error {
public:
    using Error::Error;
};

// Inconsistent composite input (e.g. alignment script does not rebuild its genome).
class ValidationError : public Error {
public:
    using Error::Error;
};

// Broken invariants in a structure handed to us (gap or overlap in a parse, ...).
class StructuralError : public Error {
public:
    using Error::Error;
};

// Bad bytes in a serialized index container.
class FormatError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace alibi
