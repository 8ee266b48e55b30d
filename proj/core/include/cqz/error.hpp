#pragma once

#include <stdexcept>

namespace cqz {

// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numeric argument or configuration field is outside its allowed range.
class ParameterOutOfRange : public Error {
 public:
  using Error::Error;
};

class NonFiniteInput : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

// Signal power is zero, so an SQNR cannot be formed.
class ZeroSignalPower : public Error {
 public:
  using Error::Error;
};

// Distortion is exactly zero; the SQNR would be infinite.
class DistortionZero : public Error {
 public:
  using Error::Error;
};

// An index or keystream word does not fit the stated word width.
class WordWidthMismatch : public Error {
 public:
  using Error::Error;
};

// Encoded stream is structurally invalid (bad magic, truncated payload, ...).
class MalformedStream : public Error {
 public:
  using Error::Error;
};

class MalformedKeyFile : public Error {
 public:
  using Error::Error;
};

// WAV container is readable but not a format this library accepts.
class UnsupportedFormat : public Error {
 public:
  using Error::Error;
};

class MalformedHeader : public Error {
 public:
  using Error::Error;
};

class MissingSampleRate : public Error {
 public:
  using Error::Error;
};

class IoFailure : public Error {
 public:
  using Error::Error;
};

class EmptyResult : public Error {
 public:
  using Error::Error;
};

}  // namespace cqz
