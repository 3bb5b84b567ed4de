#pragma once

namespace sgdrates {

/// Front end for the sgd_rates binary. Exit codes: 0 success, 1 runtime
/// failure, 2 parse/validation error, 3 a verification check (proof
/// condition or tail test) did not pass.
int run_cli(int argc, const char* const* argv);

}  // namespace sgdrates
