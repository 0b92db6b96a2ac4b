#pragma once

#include <cmath>
#include <functional>

#include "doctest.h"
#include "eulerhom/errors.hpp"

namespace testing {

inline eulerhom::ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const eulerhom::Error& e) {
        return e.kind();
    }
    FAIL("no eulerhom::Error thrown");
    return eulerhom::ErrorKind::DomainError;
}

inline bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

}  // namespace testing

#define CHECK_ERROR(expr, k) CHECK(testing::kind_of([&] { (void)(expr); }) == eulerhom::ErrorKind::k)
