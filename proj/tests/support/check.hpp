// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#pragma once

#include <functional>

#include "medselect/error.hpp"

namespace testutil {

inline bool throws_code(medselect::Errc expected, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const medselect::Error& e) {
    return e.code() == expected;
  }
  return false;
}

}  // namespace testutil
