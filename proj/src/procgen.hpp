#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "core.hpp"

namespace mdclt {

// Validates the coefficient set, resolves the innovation law and caches the
// lag covariances Gamma_0..Gamma_m.
ProcessSpec make_ma_process(int p, int m, std::vector<Eigen::MatrixXd> coeffs,
                            Innovation innovation);

// Exact Var[S X_{[i,j]}] (closed interval, 1-based):
//   len Gamma_0 + sum_{l=1..min(m,len-1)} (len-l) (Gamma_l + Gamma_l^T).
// The process is stationary, so only len = j-i+1 matters.
Eigen::MatrixXd sum_covariance(const ProcessSpec& spec, std::int64_t i, std::int64_t j);
Eigen::MatrixXd sum_covariance_len(const ProcessSpec& spec, std::int64_t len);

// Default in-memory cap for materialized batches (data + prefix tables);
// override via set_memory_cap (0 restores the default).
void set_memory_cap(std::uint64_t bytes);
std::uint64_t memory_cap();

// Draws R independent replicates of X_1..X_n. Replicate r is generated from
// the derived stream (master_seed, r): innovations eps_{1-m}..eps_n in index
// order, coordinates in order. Content is therefore independent of thread
// count and execution order. Throws NumericError when the batch would exceed
// the memory cap (use sample_sums for sum-only workloads).
std::shared_ptr<SampleBatch> sample_paths(const ProcessSpec& spec, std::int64_t n,
                                          std::int64_t R, std::uint64_t master_seed);

// Streaming variant: only S X_{[1,n]} per replicate (out is R x p, replicate-
// major). Bit-identical to sample_paths(...)->prefix_sum(1, n, ...) for the
// same arguments.
void sample_sums(const ProcessSpec& spec, std::int64_t n, std::int64_t R,
                 std::uint64_t master_seed, double* out);

// Flat binary container (little-endian float64, replicate-major) with a JSON
// sidecar describing the spec; see README for the layout.
void save_batch(const SampleBatch& batch, const std::string& path);
std::shared_ptr<SampleBatch> load_batch(const std::string& path);

// FNV-1a digest of the canonical spec JSON; stored in the container header.
std::uint64_t spec_digest(const ProcessSpec& spec);
std::string spec_to_json(const ProcessSpec& spec);
ProcessSpec spec_from_json(const std::string& text);

}  // namespace mdclt
