#ifndef EQCHAR_ERROR_HPP
#define EQCHAR_ERROR_HPP

#include <stdexcept>
#include <string>

namespace eqchar {

class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (bad parameters, invalid cover data).
class InvalidInput : public Error
{
  public:
    using Error::Error;
};

/// A cover datum whose Euler-characteristic differences fail to be
/// integral, i.e. the data cannot come from a genuine tame cover.
class DataConsistencyError : public Error
{
  public:
    using Error::Error;
};

} // namespace eqchar

#endif // EQCHAR_ERROR_HPP
