#pragma once

#include <cstdint>
#include <optional>

#include "manifest.hpp"

namespace chebzero::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitSolver = 2,
  kExitMissingArtifact = 3,
  kExitExperiment = 4,
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

int cmd_basis(RunContext& ctx, const Overrides& o);
int cmd_green(RunContext& ctx, const Overrides& o);
int cmd_expect(RunContext& ctx, const Overrides& o);
int cmd_variance(RunContext& ctx, const Overrides& o);
int cmd_sequence(RunContext& ctx, const Overrides& o);
int cmd_moment(RunContext& ctx, const Overrides& o);

}  // namespace chebzero::cli
