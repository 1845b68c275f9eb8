#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace clonecraft
{

/// Base of every error thrown by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Arity, length or base of an argument does not fit the operation.
class ShapeError : public Error
{
public:
  using Error::Error;
};

/// Two objects live over different base sets (e.g. composition undefined).
class DomainMismatch : public Error
{
public:
  using Error::Error;
};

/// An index lies outside the encodable range.
class RangeError : public Error
{
public:
  using Error::Error;
};

/// A value violates a semantic requirement (e.g. a constraint that is not invariant).
class ValidationError : public Error
{
public:
  using Error::Error;
};

/// A command line or suite request that cannot be honoured as given.
class UsageError : public Error
{
public:
  using Error::Error;
};

/// An enumeration would exceed its configured budget.
class BudgetExceeded : public Error
{
public:
  BudgetExceeded( std::string const& what_budget, std::string const& required, std::string const& limit )
      : Error( what_budget + ": requires " + required + ", budget is " + limit ),
        budget_( what_budget ),
        required_( required )
  {
  }

  std::string const& budget() const noexcept { return budget_; }
  std::string const& required() const noexcept { return required_; }

private:
  std::string budget_;
  std::string required_;
};

} // namespace clonecraft
