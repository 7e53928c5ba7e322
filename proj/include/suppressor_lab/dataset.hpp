/*
 * Copyright 2026 The suppressor-lab authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <charconv>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "suppressor_lab/model.hpp"
#include "suppressor_lab/rng.hpp"

namespace suppressor_lab {

struct LabeledRecord {
  double x1;
  double x2;
  int y;  // -1 or +1
};

struct LabeledDataset {
  std::vector<LabeledRecord> records;
  std::uint64_t seed = 0;
  GenParams params;
};

namespace detail {

/// Record i is drawn from counters {3i, 3i+1, 3i+2} of the seed's stream, so
/// the same (seed, i) always yields the same record regardless of n or of
/// which worker draws it.
inline LabeledRecord sample_record(const GenParams& p, CounterRng& rng,
                                   std::uint64_t index) {
  rng.seek(3 * index);
  const int z = rng.next_uniform() <= 0.5 ? -1 : +1;
  const auto [g1, g2] = rng.next_normal_pair();
  // Triangular factor of Sigma; degenerates gracefully at |c| = 1.
  const double eta1 = p.s1 * g1;
  const double eta2 = p.s2 * (p.c * g1 + std::sqrt(1.0 - p.c * p.c) * g2);
  return {static_cast<double>(z) + eta1, p.epsilon * z + eta2, z};
}

}  // namespace detail

/// Draws n records from the generative process. Deterministic for a fixed
/// seed. Sampling is defined for |c| = 1 as well (only the densities and the
/// classifier need the inverse covariance).
inline LabeledDataset sample_dataset(const GenParams& p, std::size_t n,
                                     std::uint64_t seed) {
  p.validate();
  if (n == 0) {
    throw std::invalid_argument("requested dataset size must be >= 1");
  }
  LabeledDataset ds;
  ds.seed = seed;
  ds.params = p;
  ds.records.reserve(n);
  CounterRng rng(seed, /*stream=*/0x5a3d);
  for (std::size_t i = 0; i < n; ++i) {
    ds.records.push_back(detail::sample_record(p, rng, i));
  }
  return ds;
}

/// Shortest round-trip decimal form of a double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// Writes the `x1,x2,y` CSV used by the CLI.
inline void write_dataset_csv(const LabeledDataset& ds, std::ostream& os) {
  os << "x1,x2,y\n";
  for (const auto& r : ds.records) {
    os << format_double(r.x1) << ',' << format_double(r.x2) << ',' << r.y
       << '\n';
  }
}

}  // namespace suppressor_lab
