#pragma once

#include <gtest/gtest.h>

#include "hsi/error.hpp"

/// Expects `stmt` to throw hsi::Error with the given code.
#define EXPECT_HSI_ERROR(stmt, errc)                                                         \
    do {                                                                                     \
        try {                                                                                \
            stmt;                                                                            \
            ADD_FAILURE() << "expected " << hsi::errc_name(errc) << " from " #stmt;          \
        } catch (const hsi::Error& e) {                                                      \
            EXPECT_EQ(e.code(), errc) << e.what();                                           \
        }                                                                                    \
    } while (false)
