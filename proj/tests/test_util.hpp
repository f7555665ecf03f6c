#pragma once

#include <doctest.h>

#include <cmath>

#include "orbitmetric/errors.hpp"

#define CHECK_ERROR_KIND(expr, expected_kind)                     \
  do {                                                            \
    bool threw_ = false;                                          \
    try {                                                         \
      (void)(expr);                                               \
    } catch (const orbitmetric::Error& e_) {                      \
      threw_ = true;                                              \
      CHECK(e_.kind() == (expected_kind));                        \
    }                                                             \
    CHECK_MESSAGE(threw_, "expected an orbitmetric::Error");      \
  } while (0)

inline const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;
