#pragma once

#include <stdexcept>
#include <string>

namespace specrig {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Internal arithmetic misuse or an identity that failed to hold.
class MathError : public Error {
   public:
    using Error::Error;
};

class ParseError : public Error {
   public:
    ParseError(const std::string& msg, int line = 0, int column = 0)
        : Error(line > 0 ? msg + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"
                         : msg),
          line_(line),
          column_(column) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

   private:
    int line_ = 0;
    int column_ = 0;
};

/// A truncated series did not carry enough terms to decide a quantity.
class InsufficientTruncation : public Error {
   public:
    using Error::Error;
};

/// Factorization or field extension beyond the configured degree bound.
class UnsupportedExtension : public Error {
   public:
    using Error::Error;
};

/// Pole at a point that is neither rational nor infinity.
class UnsupportedPoint : public Error {
   public:
    using Error::Error;
};

/// Declared pole set disagrees with the matrix.
class PoleSetError : public Error {
   public:
    using Error::Error;
};

class SpectraOverlap : public Error {
   public:
    using Error::Error;
};

/// Leading matrix not separable into distinct eigenvalues.
class NotRegularSemisimple : public Error {
   public:
    using Error::Error;
};

/// An identity that must hold by construction failed; signals a bug upstream.
class InternalInconsistency : public Error {
   public:
    using Error::Error;
};

}  // namespace specrig
