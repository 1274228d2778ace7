#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ringbisect/ratio.hpp"
#include "ringbisect/ring.hpp"

namespace ringbisect {

/// Request sequence family.
///
///   uniform      i.i.d. uniform edges
///   sweep        e0, e1, ..., e(n-1), e0, ...
///   blocks[:L]   a uniform edge repeated L times (default 3), then redrawn
///   cut-chaser   a cut edge of the deterministic work-function solver's
///                current state (uniform edge while it has none); the whole
///                sequence is fixed before any randomized solver runs
struct GeneratorSpec {
  enum class Kind { Uniform, Sweep, Blocks, CutChaser };

  Kind kind = Kind::Uniform;
  int block_length = 3;

  /// Throws std::invalid_argument for unknown names or bad block lengths.
  static GeneratorSpec parse(std::string_view text);
  std::string str() const;
};

/// What the cut-chaser needs to replay the work-function solver.
struct ChaserSetup {
  int k = 1;
  Ratio alpha;
  CutEdgeSet initial;
};

/// Throws std::invalid_argument for a cut-chaser without setup.
std::vector<int> generate(const GeneratorSpec& spec, int n, std::size_t length, std::uint64_t seed,
                          const std::optional<ChaserSetup>& chaser = std::nullopt);

/// Starting 1-balanced partition.
///
///   block        nodes 0..n/2-1 red (two cut edges)
///   alternating  colors alternate (all n edges cut)
///   random       a uniformly shuffled half/half coloring
enum class InitialLayout { Block, Alternating, Random };

InitialLayout parse_initial_layout(std::string_view text);
const char* to_string(InitialLayout layout) noexcept;
CutEdgeSet initial_state(InitialLayout layout, int n, std::uint64_t seed);

}  // namespace ringbisect
