// kerrshadow error types

#pragma once

#include <stdexcept>
#include <string>

namespace kerr {

// Base class for every error raised by the library
class Error : public std::runtime_error
{
 public:
  using std::runtime_error::runtime_error;
};

// Spin outside [0, 1] (no horizon) or a spin the requested formula cannot handle
class InvalidSpin : public Error
{
 public:
  using Error::Error;
};

// Evaluation point or parameter outside the domain of a formula
class DomainError : public Error
{
 public:
  using Error::Error;
};

// Observer angular velocity outside the admissible open interval (Omega_-, Omega_+)
class TimelikeViolation : public Error
{
 public:
  using Error::Error;
};

// Static observer requested inside the ergosphere
class ErgosphereViolation : public Error
{
 public:
  using Error::Error;
};

// Adaptive integrator could not meet its tolerance above the minimum step size
class StepFailure : public Error
{
 public:
  using Error::Error;
};

// Too many pixels failed during a render
class RenderFailure : public Error
{
 public:
  using Error::Error;
};

}  // namespace kerr
