#pragma once

#include <stdexcept>
#include <string>

namespace qhyp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public Error {
 public:
  using Error::Error;
};

class FormViolation : public Error {
 public:
  using Error::Error;
};

class DegenerateRadius : public Error {
 public:
  using Error::Error;
};

class NonUnitQuaternion : public Error {
 public:
  using Error::Error;
};

class PoleAtNonpositiveInteger : public Error {
 public:
  using Error::Error;
};

class ParameterPole : public Error {
 public:
  using Error::Error;
};

// Spectral parameter sits on a pole of a Gamma factor (c-functions, Psi).
class SpectralPole : public Error {
 public:
  using Error::Error;
};

class QuadratureNonConvergence : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace qhyp
