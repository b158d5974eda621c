#pragma once

#include <gtest/gtest.h>

#include "logschro/error.hpp"

namespace logschro::testing {

void expect_error(ErrorKind kind, auto&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(kind);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

}  // namespace logschro::testing
