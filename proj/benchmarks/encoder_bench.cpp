// Copyright 2026 The groundseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include "groundseg/encoder.hpp"
#include "groundseg/synthetic_world.hpp"

namespace groundseg {
namespace {

void BM_EncodeFrame(benchmark::State& state) {
  const auto frame = generate_synthetic_frame(SyntheticWorldConfig{}, 1);
  const EncoderConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(encode_frame(frame.cloud, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(frame.cloud.size()));
}
BENCHMARK(BM_EncodeFrame)->Unit(benchmark::kMillisecond);

void BM_BinPoints(benchmark::State& state) {
  const auto frame = generate_synthetic_frame(SyntheticWorldConfig{}, 1);
  const EncoderConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(bin_points(frame.cloud, cfg));
}
BENCHMARK(BM_BinPoints)->Unit(benchmark::kMillisecond);

void BM_Normalize(benchmark::State& state) {
  const auto frame = generate_synthetic_frame(SyntheticWorldConfig{}, 1);
  const EncoderConfig cfg;
  const auto encoded = encode_frame(frame.cloud, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(normalize(encoded.frame, cfg));
}
BENCHMARK(BM_Normalize)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace groundseg
