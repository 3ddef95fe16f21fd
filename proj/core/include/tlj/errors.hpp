#ifndef TLJ_ERRORS_HPP
#define TLJ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tlj {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};

struct DenominatorVanishes : Error {
    explicit DenominatorVanishes(const std::string& what) : Error(what) {}
};

struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& what) : Error(what) {}
};

struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& what) : Error(what) {}
};

struct NotAdmissible : Error {
    explicit NotAdmissible(const std::string& what) : Error(what) {}
};

struct LabelOutOfRange : Error {
    explicit LabelOutOfRange(const std::string& what) : Error(what) {}
};

struct NonPlanarEmbedding : Error {
    explicit NonPlanarEmbedding(const std::string& what) : Error(what) {}
};

struct DegenerateGram : Error {
    explicit DegenerateGram(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

struct InvalidDegree : Error {
    explicit InvalidDegree(const std::string& what) : Error(what) {}
};

struct EulerMismatch : Error {
    explicit EulerMismatch(const std::string& what) : Error(what) {}
};

struct InvalidEdge : Error {
    explicit InvalidEdge(const std::string& what) : Error(what) {}
};

}  // namespace tlj

#endif
