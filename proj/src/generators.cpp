#include "ringbisect/generators.hpp"

#include <charconv>
#include <stdexcept>
#include <utility>

#include "ringbisect/mts_online.hpp"
#include "ringbisect/rng.hpp"

namespace ringbisect {

GeneratorSpec GeneratorSpec::parse(std::string_view text) {
  GeneratorSpec spec;
  if (text == "uniform") {
    spec.kind = Kind::Uniform;
  } else if (text == "sweep") {
    spec.kind = Kind::Sweep;
  } else if (text == "cut-chaser") {
    spec.kind = Kind::CutChaser;
  } else if (text.starts_with("blocks")) {
    spec.kind = Kind::Blocks;
    const auto rest = text.substr(6);
    if (!rest.empty()) {
      if (rest.front() != ':') throw std::invalid_argument("unknown generator '" + std::string(text) + "'");
      const auto digits = rest.substr(1);
      const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), spec.block_length);
      if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size() || spec.block_length < 1) {
        throw std::invalid_argument("bad block length in '" + std::string(text) + "'");
      }
    }
  } else {
    throw std::invalid_argument("unknown generator '" + std::string(text) +
                                "' (expected uniform, sweep, blocks[:L] or cut-chaser)");
  }
  return spec;
}

std::string GeneratorSpec::str() const {
  switch (kind) {
    case Kind::Uniform:
      return "uniform";
    case Kind::Sweep:
      return "sweep";
    case Kind::Blocks:
      return "blocks:" + std::to_string(block_length);
    case Kind::CutChaser:
      return "cut-chaser";
  }
  return "?";
}

std::vector<int> generate(const GeneratorSpec& spec, int n, std::size_t length, std::uint64_t seed,
                          const std::optional<ChaserSetup>& chaser) {
  check_ring_size(n);
  Rng rng(seed);
  const auto edge_count = static_cast<std::uint64_t>(n);
  std::vector<int> out;
  out.reserve(length);

  switch (spec.kind) {
    case GeneratorSpec::Kind::Uniform:
      for (std::size_t t = 0; t < length; ++t) out.push_back(static_cast<int>(rng.below(edge_count)));
      break;
    case GeneratorSpec::Kind::Sweep:
      for (std::size_t t = 0; t < length; ++t) out.push_back(static_cast<int>(t % edge_count));
      break;
    case GeneratorSpec::Kind::Blocks: {
      int edge = 0;
      for (std::size_t t = 0; t < length; ++t) {
        if (t % static_cast<std::size_t>(spec.block_length) == 0) edge = static_cast<int>(rng.below(edge_count));
        out.push_back(edge);
      }
      break;
    }
    case GeneratorSpec::Kind::CutChaser: {
      if (!chaser) throw std::invalid_argument("cut-chaser generator needs k, alpha and an initial state");
      if (chaser->initial.ring_size() != n) throw std::invalid_argument("cut-chaser initial state on a different ring");
      const MtsInstance instance = make_restricted_instance(chaser->k, chaser->alpha, chaser->initial);
      WfaSolver wfa;
      wfa.reset(instance, seed, length);
      std::size_t current = instance.initial;
      for (std::size_t t = 0; t < length; ++t) {
        const std::vector<int> cuts = instance.space[current].edges();
        const int edge = cuts.empty() ? static_cast<int>(rng.below(edge_count))
                                      : cuts[static_cast<std::size_t>(rng.below(cuts.size()))];
        out.push_back(edge);
        current = wfa.serve(edge);
      }
      break;
    }
  }
  return out;
}

InitialLayout parse_initial_layout(std::string_view text) {
  if (text == "block") return InitialLayout::Block;
  if (text == "alternating") return InitialLayout::Alternating;
  if (text == "random") return InitialLayout::Random;
  throw std::invalid_argument("unknown initial layout '" + std::string(text) +
                              "' (expected block, alternating or random)");
}

const char* to_string(InitialLayout layout) noexcept {
  switch (layout) {
    case InitialLayout::Block:
      return "block";
    case InitialLayout::Alternating:
      return "alternating";
    case InitialLayout::Random:
      return "random";
  }
  return "?";
}

CutEdgeSet initial_state(InitialLayout layout, int n, std::uint64_t seed) {
  check_ring_size(n);
  Coloring coloring(static_cast<std::size_t>(n), Color::Blue);
  switch (layout) {
    case InitialLayout::Block:
      for (int i = 0; i < n / 2; ++i) coloring[static_cast<std::size_t>(i)] = Color::Red;
      break;
    case InitialLayout::Alternating:
      for (int i = 0; i < n; i += 2) coloring[static_cast<std::size_t>(i)] = Color::Red;
      break;
    case InitialLayout::Random: {
      for (int i = 0; i < n / 2; ++i) coloring[static_cast<std::size_t>(i)] = Color::Red;
      Rng rng(seed);
      for (std::size_t i = coloring.size() - 1; i > 0; --i) {
        std::swap(coloring[i], coloring[static_cast<std::size_t>(rng.below(i + 1))]);
      }
      break;
    }
  }
  return cut_edges_of(coloring);
}

}  // namespace ringbisect
