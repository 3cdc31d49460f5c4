// Copyright 2026 The Refinery Authors. All Rights Reserved.
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

#include "refinery/error.hpp"
#include "refinery/pipeline.hpp"

namespace refinery {

ShardPlan::ShardPlan(std::uint32_t parts) : parts_(parts) {
  if (parts == 0) throw Error(ErrorCode::kConfigError, "parts must be at least 1");
}

std::uint32_t ShardPlan::PartOf(std::string_view /*dump_id*/, std::uint64_t ordinal) const {
  return static_cast<std::uint32_t>(ordinal % parts_);
}

std::vector<std::uint64_t> ShardPlan::PartSizes(std::uint64_t size) const {
  std::vector<std::uint64_t> sizes(parts_, size / parts_);
  for (std::uint64_t p = 0; p < size % parts_; ++p) ++sizes[p];
  return sizes;
}

ShardPlan PlanShards(const std::map<std::string, std::uint64_t>& /*dump_sizes*/, std::uint32_t parts) {
  // Ordinal-modulo assignment interleaves every dump into every part, so the
  // plan does not depend on the sizes beyond validation by the caller.
  return ShardPlan(parts);
}

}  // namespace refinery
