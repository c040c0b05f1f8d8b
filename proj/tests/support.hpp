#pragma once

#include <doctest.h>

#include "ultrashort/error.hpp"

namespace testing {

/// Runs fn and returns the ErrorKind it throws; fails the test if it returns.
template <class Fn>
ultrashort::ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const ultrashort::Error& e) {
    return e.kind();
  }
  FAIL("expected an ultrashort::Error");
  return ultrashort::ErrorKind::ParseError;
}

}  // namespace testing
