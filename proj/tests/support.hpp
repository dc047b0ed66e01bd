#pragma once

#include "sftlab/oracles.hpp"

namespace sftlab::testing {
using oracles::naive_coded;
using oracles::naive_words;
using oracles::random_code;
using oracles::random_word;
}  // namespace sftlab::testing
